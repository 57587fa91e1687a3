"""
Module
------

    augment.py

Description
-----------

    This module contains the geometric data augmentation of word
    images (scaling, rotation and translation) and its application to
    a complete dataset manifest.

Classes
-------

    AugmentParams(scale_range, rotation_range, translation_range,
                  copies_per_image)

        This is the base-class object for the augmentation parameter
        ranges.

Functions
---------

    augment(img, params, seed)

        This function returns randomly transformed copies of a word
        image.

    augment_manifest(manifest, params, seed, out_root)

        This function writes the augmented dataset (originals plus
        copies) and returns its manifest.

    load_augment_params(yaml_file=None)

        This function reads and validates the augmentation parameters.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import math
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import numpy
from PIL import Image

from behgan.config import parm_path, read_yaml, validate_config
from behgan.dataio.glyph import GlyphImage, dirname_for_length, load_image, save_image
from behgan.dataio.manifest import MANIFEST_NAME, DatasetManifest, ManifestRecord, write_manifest
from behgan.exceptions import DataIOError
from behgan.logger import Logger

# ----

# Define all available module properties.
__all__ = ["AugmentParams", "augment", "augment_manifest", "load_augment_params"]

# ----

logger = Logger(caller_name=__name__)

# ----


@dataclass(frozen=True)
class AugmentParams:
    """
    Description
    -----------

    This is the base-class object for the augmentation parameter
    ranges.

    Parameters
    ----------

    scale_range: ``Tuple[float, float]``

        The (minimum, maximum) multiplicative scale.

    rotation_range: ``float``

        The maximum absolute rotation; degrees.

    translation_range: ``float``

        The maximum absolute translation along each axis; pixels.

    copies_per_image: ``int``

        The number of augmented copies per image; at least 1.

    """

    scale_range: Tuple[float, float] = (0.9, 1.1)
    rotation_range: float = 8.0
    translation_range: float = 2.0
    copies_per_image: int = 3

    def __post_init__(self):
        object.__setattr__(self, "scale_range", tuple(float(s) for s in self.scale_range))
        (lo, hi) = self.scale_range
        if self.copies_per_image < 1:
            msg = f"At least one copy per image is required; received {self.copies_per_image}. Aborting!!!"
            raise DataIOError(msg=msg)
        if not 0.0 < lo <= hi:
            raise DataIOError(msg=f"The scale range {self.scale_range} is invalid. Aborting!!!")
        if self.rotation_range < 0.0 or self.translation_range < 0.0:
            raise DataIOError(msg="Rotation and translation ranges must be non-negative. Aborting!!!")

    def expansion(self) -> int:
        """The dataset size multiplier, originals included."""

        return 1 + self.copies_per_image


# ----


@validate_config
def __augment_config__(yaml_file: str = None) -> Tuple[str, Dict]:
    if yaml_file is None:
        yaml_file = str(parm_path("config.yaml"))

    return (parm_path("schema", "augment.schema.yaml"), read_yaml(yaml_file=yaml_file).get("augment"))


def load_augment_params(yaml_file: str = None) -> AugmentParams:
    """
    Description
    -----------

    This function reads the `augment` section of a YAML-formatted
    configuration file and validates it against the augmentation
    schema.

    Keywords
    --------

    yaml_file: ``str``, optional

        The configuration file; `parm/config.yaml` if NoneType.

    Returns
    -------

    params: ``AugmentParams``

        A Python AugmentParams object.

    """

    return AugmentParams(**__augment_config__(yaml_file=yaml_file))


# ----


def __affine__(
    size: Tuple[int, int], scale: float, angle: float, shift: Tuple[float, float]
) -> Tuple[float, ...]:
    """
    Description
    -----------

    This function returns the inverse (output to input) affine
    coefficients for a scaling and rotation about the image center
    followed by a translation.

    Parameters
    ----------

    size: ``Tuple[int, int]``

        The image (width, height).

    scale: ``float``

        The scale factor.

    angle: ``float``

        The rotation angle; degrees.

    shift: ``Tuple[float, float]``

        The (x, y) translation; pixels.

    Returns
    -------

    coeffs: ``Tuple[float, ...]``

        The six PIL affine coefficients.

    """

    theta = math.radians(angle)
    (cos, sin) = (math.cos(theta), math.sin(theta))
    inverse = numpy.array([[cos, sin], [-sin, cos]]) / scale
    center = numpy.array([size[0] / 2.0, size[1] / 2.0])
    offset = center - inverse @ (center + numpy.asarray(shift, dtype=numpy.float64))

    return (inverse[0, 0], inverse[0, 1], offset[0], inverse[1, 0], inverse[1, 1], offset[1])


def augment(
    img: GlyphImage, params: AugmentParams, seed: Union[int, Sequence[int]]
) -> List[GlyphImage]:
    """
    Description
    -----------

    This function returns `params.copies_per_image` copies of a word
    image, each transformed by one sampled (scale, rotation,
    translation) triple; the copies keep the input dimensions and the
    exposed background is filled with white.

    Parameters
    ----------

    img: ``GlyphImage``

        A Python GlyphImage object; normalized.

    params: ``AugmentParams``

        A Python AugmentParams object.

    seed: ``Union[int, Sequence[int]]``

        The random seed; identical seeds yield identical copies.

    Returns
    -------

    copies: ``List[GlyphImage]``

        A Python list of GlyphImage objects.

    """

    rng = numpy.random.default_rng(seed)
    pil = Image.fromarray(img.pixels)
    copies = []
    for _ in range(params.copies_per_image):
        scale = float(rng.uniform(*params.scale_range))
        angle = float(rng.uniform(-params.rotation_range, params.rotation_range))
        shift = rng.uniform(-params.translation_range, params.translation_range, size=2)
        if scale == 1.0 and angle == 0.0 and not numpy.any(shift):
            copies.append(GlyphImage(pixels=img.pixels.copy(), n_chars=img.n_chars))
            continue
        out = pil.transform(
            pil.size,
            Image.Transform.AFFINE,
            data=__affine__(size=pil.size, scale=scale, angle=angle, shift=tuple(shift)),
            resample=Image.Resampling.BILINEAR,
            fillcolor=255,
        )
        copies.append(GlyphImage(pixels=numpy.array(out, dtype=numpy.uint8), n_chars=img.n_chars))

    return copies


# ----


def augment_manifest(
    manifest: DatasetManifest,
    params: AugmentParams,
    seed: int,
    out_root: Union[str, Path],
) -> DatasetManifest:
    """
    Description
    -----------

    This function writes the augmented dataset beneath `out_root`:
    every original record is copied unchanged and followed by its
    augmented copies, which carry the same label and the provenance
    `augmented`. The output holds (1 + copies_per_image) times the
    input record count.

    Parameters
    ----------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object.

    params: ``AugmentParams``

        A Python AugmentParams object.

    seed: ``int``

        The random seed; record i uses the stream (seed, i).

    out_root: ``Union[str, Path]``

        The output dataset root.

    Returns
    -------

    augmented: ``DatasetManifest``

        A Python DatasetManifest object for the output dataset; it is
        also written to `out_root/manifest.jsonl`.

    """

    out_root = Path(out_root)
    counters = {}
    records = []

    def __next_path__(n_chars: int) -> Path:
        counters[n_chars] = counters.get(n_chars, 0) + 1
        return out_root / dirname_for_length(n_chars) / f"{counters[n_chars]:05d}.png"

    def __write_label__(image_path: Path, label: str) -> None:
        with open(image_path.with_suffix(".txt"), "w", encoding="utf-8") as file:
            file.write(label + "\n")

    msg = f"Augmenting {len(manifest)} records with {params.copies_per_image} copies each."
    logger.info(msg=msg)
    for idx, record in enumerate(manifest.records):
        img = load_image(path=record.image_path, n_chars=record.n_chars)
        dst = __next_path__(record.n_chars)
        dst.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(record.image_path, dst)
        __write_label__(image_path=dst, label=record.label)
        records.append(
            ManifestRecord(
                image_path=str(dst), label=record.label, n_chars=record.n_chars, provenance=record.provenance
            )
        )
        for copy in augment(img=img, params=params, seed=(seed, idx)):
            dst = __next_path__(record.n_chars)
            save_image(img=copy, path=dst)
            __write_label__(image_path=dst, label=record.label)
            records.append(
                ManifestRecord(
                    image_path=str(dst), label=record.label, n_chars=record.n_chars, provenance="augmented"
                )
            )
    augmented = DatasetManifest(records=records, root=str(out_root))
    write_manifest(manifest=augmented, path=out_root / MANIFEST_NAME)
    msg = f"Augmented dataset written to {out_root}:\n{augmented.summary()}"
    logger.info(msg=msg)

    return augmented
