"""
Module
------

    manifest.py

Description
-----------

    This module contains the dataset manifest: the enumeration of
    (image, label) pairs grouped by word length, its construction
    from a length-directory tree, and its JSON-lines serialization.

Classes
-------

    DatasetManifest(records, root=None)

        This is the base-class object for a dataset manifest.

    ManifestRecord(image_path, label, n_chars, provenance)

        This is the base-class object for a single manifest record.

Functions
---------

    build_manifest(root_dir, vocab, provenance="raw")

        This function pairs every image beneath the length
        directories of a dataset root with its label file.

    merge_manifests(*manifests)

        This function concatenates manifests.

    read_manifest(path)

        This function reads a `manifest.jsonl` file.

    split_manifest(manifest, fraction, seed)

        This function splits a manifest into two disjoint parts.

    subset_manifest(manifest, n_records, seed)

        This function draws a fixed-size subset of a manifest.

    validate_manifest(manifest)

        This function checks every record image against the word
        image invariants.

    write_manifest(manifest, path)

        This function writes a `manifest.jsonl` file.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy

from behgan.dataio.glyph import length_for_dirname, load_image
from behgan.exceptions import DataIOError, LabelLengthMismatch, MissingLabel
from behgan.logger import Logger
from behgan.tables import compose
from behgan.vocab import CharVocabulary, map_word

# ----

# Define all available module properties.
__all__ = [
    "DatasetManifest",
    "MANIFEST_NAME",
    "ManifestRecord",
    "PROVENANCES",
    "build_manifest",
    "merge_manifests",
    "read_manifest",
    "split_manifest",
    "subset_manifest",
    "validate_manifest",
    "write_manifest",
]

# ----

logger = Logger(caller_name=__name__)

MANIFEST_NAME = "manifest.jsonl"
PROVENANCES = ("raw", "augmented", "synthetic")
BASE_LENGTHS = (1, 2, 3)

# ----


@dataclass(frozen=True)
class ManifestRecord:
    """
    Description
    -----------

    This is the base-class object for a single manifest record.

    Parameters
    ----------

    image_path: ``str``

        The path to the PNG image.

    label: ``str``

        The key-letter label.

    n_chars: ``int``

        The word length; equal to the label length.

    provenance: ``str``

        One of `raw`, `augmented` or `synthetic`.

    """

    image_path: str
    label: str
    n_chars: int
    provenance: str = "raw"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            msg = f"The provenance {self.provenance!r} is not one of {PROVENANCES}. Aborting!!!"
            raise DataIOError(msg=msg)
        if len(self.label) != self.n_chars:
            raise LabelLengthMismatch(image_path=self.image_path)


# ----


@dataclass(frozen=True)
class DatasetManifest:
    """
    Description
    -----------

    This is the base-class object for a dataset manifest.

    Parameters
    ----------

    records: ``Tuple[ManifestRecord]``

        The manifest records.

    Keywords
    --------

    root: ``str``, optional

        The dataset root directory, if any.

    """

    records: Tuple[ManifestRecord, ...] = field(default_factory=tuple)
    root: str = None

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))

    def __len__(self) -> int:
        return len(self.records)

    @property
    def counts_by_length(self) -> Dict[int, int]:
        """The number of records per word length; lengths one to three are always present."""

        counts = dict.fromkeys(BASE_LENGTHS, 0)
        for record in self.records:
            counts[record.n_chars] = counts.get(record.n_chars, 0) + 1

        return dict(sorted(counts.items()))

    def by_length(self, n_chars: int) -> List[ManifestRecord]:
        return [record for record in self.records if record.n_chars == n_chars]

    def summary(self) -> str:
        """Composes a table of record counts by length and provenance."""

        rows = []
        for length in sorted(self.counts_by_length):
            records = self.by_length(length)
            row = [length] + [sum(r.provenance == p for r in records) for p in PROVENANCES]
            rows.append(row + [len(records)])
        rows.append(["all"] + [sum(r.provenance == p for r in self.records) for p in PROVENANCES] + [len(self)])

        return compose(header=["Length"] + list(PROVENANCES) + ["Total"], rows=rows)


# ----


def __collect_label__(image_path: Path, n_chars: int, vocab: CharVocabulary) -> str:
    """
    Description
    -----------

    This function reads and validates the label file accompanying an
    image.

    Parameters
    ----------

    image_path: ``Path``

        The path to the image.

    n_chars: ``int``

        The word length encoded by the image directory.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    Returns
    -------

    label: ``str``

        The key-letter label.

    Raises
    ------

    MissingLabel:

        - raised if no label file exists.

    LabelLengthMismatch:

        - raised if the label length differs from `n_chars`.

    """

    label_path = image_path.with_suffix(".txt")
    if not label_path.is_file():
        raise MissingLabel(image_path=image_path)
    with open(label_path, "r", encoding="utf-8") as file:
        text = file.read().strip()
    word = map_word(text=text, vocab=vocab)
    if word.length != n_chars:
        msg = (
            f"The label {text!r} of image {image_path} has {word.length} "
            f"characters but the directory holds {n_chars}-character words. Aborting!!!"
        )
        raise LabelLengthMismatch(image_path=image_path, msg=msg)

    return word.text


def build_manifest(
    root_dir: Union[str, Path], vocab: CharVocabulary, provenance: str = "raw"
) -> DatasetManifest:
    """
    Description
    -----------

    This function pairs every PNG image beneath the length
    directories (`one/`, `two/`, `three/`, `len_N/`) of a dataset root
    with its same-basename label file.

    Parameters
    ----------

    root_dir: ``Union[str, Path]``

        The dataset root directory.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object used to validate the labels.

    Keywords
    --------

    provenance: ``str``, optional

        The provenance assigned to every record.

    Returns
    -------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object; empty if the root holds no
        length directories.

    """

    # Collect the records for each length directory.
    root = Path(root_dir)
    records = []
    subdirs = sorted(p for p in root.iterdir() if p.is_dir()) if root.is_dir() else []
    for subdir in subdirs:
        n_chars = length_for_dirname(subdir.name)
        if n_chars is None:
            continue
        for image_path in sorted(subdir.glob("*.png")):
            label = __collect_label__(image_path=image_path, n_chars=n_chars, vocab=vocab)
            records.append(
                ManifestRecord(
                    image_path=str(image_path), label=label, n_chars=n_chars, provenance=provenance
                )
            )
    manifest = DatasetManifest(records=records, root=str(root))
    msg = f"Built manifest for {root} with {len(manifest)} records:\n{manifest.summary()}"
    logger.info(msg=msg)

    return manifest


# ----


def write_manifest(manifest: DatasetManifest, path: Union[str, Path]) -> None:
    """
    Description
    -----------

    This function writes a JSON-lines manifest file; image paths
    beneath the manifest directory are stored relative to it.

    Parameters
    ----------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object.

    path: ``Union[str, Path]``

        The path to the `manifest.jsonl` file.

    """

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    base = path.parent.resolve()
    with open(path, "w", encoding="utf-8") as file:
        for record in manifest.records:
            entry = asdict(record)
            image_path = Path(record.image_path).resolve()
            if base in image_path.parents:
                entry["image_path"] = image_path.relative_to(base).as_posix()
            file.write(json.dumps(entry, ensure_ascii=False, sort_keys=True) + "\n")
    msg = f"Wrote {len(manifest)} manifest records to {path}."
    logger.info(msg=msg)


def read_manifest(path: Union[str, Path]) -> DatasetManifest:
    """
    Description
    -----------

    This function reads a JSON-lines manifest file; relative image
    paths are resolved against the manifest directory.

    Parameters
    ----------

    path: ``Union[str, Path]``

        The path to the `manifest.jsonl` file, or to a directory
        containing one.

    Returns
    -------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object.

    Raises
    ------

    DataIOError:

        - raised if the file does not exist or a record is malformed.

    """

    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    if not path.is_file():
        raise DataIOError(msg=f"The manifest file {path} does not exist. Aborting!!!")
    records = []
    with open(path, "r", encoding="utf-8") as file:
        for lineno, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                entry = json.loads(line)
                image_path = entry["image_path"]
                if not os.path.isabs(image_path):
                    image_path = str(path.parent / image_path)
                records.append(
                    ManifestRecord(
                        image_path=image_path,
                        label=entry["label"],
                        n_chars=int(entry["n_chars"]),
                        provenance=entry.get("provenance", "raw"),
                    )
                )
            except (KeyError, ValueError, TypeError) as errmsg:
                msg = f"Record {lineno} of {path} is malformed: {errmsg}. Aborting!!!"
                raise DataIOError(msg=msg) from errmsg

    return DatasetManifest(records=records, root=str(path.parent))


# ----


def validate_manifest(manifest: DatasetManifest) -> List[Tuple[str, List[str]]]:
    """
    Description
    -----------

    This function checks every record image against the word image
    invariants (slot-grid geometry and white background).

    Parameters
    ----------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object.

    Returns
    -------

    issues: ``List[Tuple[str, List[str]]]``

        A Python list of (image path, violations) for the records that
        fail; empty if every record is valid.

    """

    issues = []
    for record in manifest.records:
        violations = load_image(path=record.image_path, n_chars=record.n_chars).violations()
        if violations:
            issues.append((record.image_path, violations))
            msg = f"Record {record.image_path} is invalid: {'; '.join(violations)}."
            logger.warn(msg=msg)

    return issues


# ----


def merge_manifests(*manifests: DatasetManifest) -> DatasetManifest:
    """Concatenates manifests in argument order."""

    records = [record for manifest in manifests for record in manifest.records]
    root = manifests[0].root if manifests else None

    return DatasetManifest(records=records, root=root)


def split_manifest(
    manifest: DatasetManifest, fraction: float, seed: int
) -> Tuple[DatasetManifest, DatasetManifest]:
    """
    Description
    -----------

    This function splits a manifest into two disjoint parts; the
    second part receives `fraction` of the records of each word
    length.

    Parameters
    ----------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object.

    fraction: ``float``

        The held-out fraction, within (0, 1).

    seed: ``int``

        The random seed.

    Returns
    -------

    kept: ``DatasetManifest``

        The remaining records.

    held_out: ``DatasetManifest``

        The held-out records.

    """

    if not 0.0 < fraction < 1.0:
        raise DataIOError(msg=f"The split fraction {fraction} is not within (0, 1). Aborting!!!")
    rng = numpy.random.default_rng(seed)
    (kept, held_out) = ([], [])
    for length in manifest.counts_by_length:
        records = manifest.by_length(length)
        order = rng.permutation(len(records))
        n_held = int(round(fraction * len(records)))
        held = set(order[:n_held].tolist())
        for idx, record in enumerate(records):
            (held_out if idx in held else kept).append(record)

    return (
        DatasetManifest(records=kept, root=manifest.root),
        DatasetManifest(records=held_out, root=manifest.root),
    )


def subset_manifest(manifest: DatasetManifest, n_records: int, seed: int) -> DatasetManifest:
    """Draws `n_records` records without replacement, keeping file order."""

    if n_records >= len(manifest):
        return manifest
    rng = numpy.random.default_rng(seed)
    chosen = sorted(rng.choice(len(manifest), size=n_records, replace=False).tolist())

    return DatasetManifest(records=[manifest.records[idx] for idx in chosen], root=manifest.root)
