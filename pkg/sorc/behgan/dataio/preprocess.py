"""
Module
------

    preprocess.py

Description
-----------

    This module applies the complete preprocessing chain to a tree of
    raw, cropped word images: grayscale conversion, background
    normalization, the automated quality gate and slot-grid resizing.

Functions
---------

    preprocess_image(raw, n_chars)

        This function preprocesses a single raw word image.

    preprocess_tree(src_root, dst_root, vocab)

        This function preprocesses every labelled image beneath the
        length directories of a raw dataset root.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from pathlib import Path
from typing import Union

from behgan.dataio.glyph import (
    GlyphImage,
    length_for_dirname,
    load_image,
    normalize_background,
    quality_gate,
    resize_to_slots,
    save_image,
)
from behgan.dataio.manifest import MANIFEST_NAME, DatasetManifest, ManifestRecord, write_manifest
from behgan.exceptions import BlankImage, MissingLabel
from behgan.logger import Logger
from behgan.tables import compose
from behgan.vocab import CharVocabulary, map_word

# ----

# Define all available module properties.
__all__ = ["preprocess_image", "preprocess_tree"]

# ----

logger = Logger(caller_name=__name__)

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff")

# ----


def preprocess_image(raw: GlyphImage, n_chars: int) -> GlyphImage:
    """
    Description
    -----------

    This function preprocesses a single raw word image; it returns
    NoneType if the image fails the quality gate.

    Parameters
    ----------

    raw: ``GlyphImage``

        A Python GlyphImage object; grayscale, any size.

    n_chars: ``int``

        The word length.

    Returns
    -------

    img: ``GlyphImage``

        A Python GlyphImage object on the slot grid, or NoneType.

    """

    img = normalize_background(raw=raw)
    if not quality_gate(img=img, n_chars=n_chars):
        return None

    return resize_to_slots(img=img, n_chars=n_chars)


def preprocess_tree(
    src_root: Union[str, Path], dst_root: Union[str, Path], vocab: CharVocabulary
) -> DatasetManifest:
    """
    Description
    -----------

    This function preprocesses every labelled image beneath the length
    directories of `src_root` and writes the results, renumbered,
    beneath the same directories of `dst_root`; blank images and those
    failing the quality gate are discarded and reported.

    Parameters
    ----------

    src_root: ``Union[str, Path]``

        The raw dataset root.

    dst_root: ``Union[str, Path]``

        The preprocessed dataset root.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object used to validate the labels.

    Returns
    -------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object for the preprocessed dataset;
        it is also written to `dst_root/manifest.jsonl`.

    """

    (src_root, dst_root) = (Path(src_root), Path(dst_root))
    records = []
    table = []
    for subdir in sorted(p for p in src_root.iterdir() if p.is_dir()):
        n_chars = length_for_dirname(subdir.name)
        if n_chars is None:
            continue
        (kept, blank, gated) = (0, 0, 0)
        for image_path in sorted(p for p in subdir.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES):
            label_path = image_path.with_suffix(".txt")
            if not label_path.is_file():
                raise MissingLabel(image_path=image_path)
            with open(label_path, "r", encoding="utf-8") as file:
                word = map_word(text=file.read().strip(), vocab=vocab)
            try:
                img = preprocess_image(raw=load_image(path=image_path, n_chars=n_chars), n_chars=n_chars)
            except BlankImage:
                blank += 1
                continue
            if img is None:
                msg = f"Image {image_path} failed the quality gate and is discarded."
                logger.warn(msg=msg)
                gated += 1
                continue
            kept += 1
            dst = dst_root / subdir.name / f"{kept:05d}.png"
            save_image(img=img, path=dst)
            with open(dst.with_suffix(".txt"), "w", encoding="utf-8") as file:
                file.write(word.text + "\n")
            records.append(ManifestRecord(image_path=str(dst), label=word.text, n_chars=n_chars))
        table.append([subdir.name, kept, blank, gated])
    manifest = DatasetManifest(records=records, root=str(dst_root))
    write_manifest(manifest=manifest, path=dst_root / MANIFEST_NAME)
    msg = "Preprocessing summary:\n" + compose(
        header=["Directory", "Kept", "Blank", "Quality gate"], rows=table
    )
    logger.info(msg=msg)

    return manifest
