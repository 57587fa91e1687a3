"""
Module
------

    glyph.py

Description
-----------

    This module contains the word image type and the per-image
    preprocessing chain: grayscale loading, background normalization,
    slot-grid resizing and the automated quality gate.

Classes
-------

    GlyphImage(pixels, n_chars)

        This is the base-class object for an 8-bit grayscale word
        image on a white background.

Functions
---------

    dirname_for_length(n_chars)

        This function returns the dataset directory name for a word
        length.

    ink_ratio(img)

        This function returns the fraction of ink pixels.

    length_for_dirname(dirname)

        This function returns the word length encoded by a dataset
        directory name.

    load_image(path, n_chars)

        This function reads an image file as a GlyphImage object.

    normalize_background(raw)

        This function maps the image background to white and the
        strokes to black by a percentile contrast stretch.

    quality_gate(img, n_chars)

        This function evaluates whether an image passes the automated
        quality gate.

    resize_to_slots(img, n_chars)

        This function pads and resamples an image onto the slot grid.

    save_image(img, path)

        This function writes a GlyphImage object as an 8-bit
        grayscale PNG file.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

import numpy
from PIL import Image
from scipy import ndimage

from behgan.exceptions import BlankImage, DataIOError, InvalidCharCount

# ----

# Define all available module properties.
__all__ = [
    "GlyphImage",
    "INK_THRESHOLD",
    "SLOT_HEIGHT",
    "SLOT_WIDTH",
    "dirname_for_length",
    "ink_ratio",
    "length_for_dirname",
    "load_image",
    "normalize_background",
    "quality_gate",
    "resize_to_slots",
    "save_image",
]

# ----

SLOT_WIDTH = 16
SLOT_HEIGHT = 32

# Pixels darker than this value are ink.
INK_THRESHOLD = 128

# Contrast stretch anchors (percent) and the white-point clamp.
BLACK_PERCENTILE = 5.0
WHITE_PERCENTILE = 95.0
WHITE_CLAMP = 230
SPARSE_INK_FRACTION = 0.25

MIN_INK_RATIO = 0.005
MAX_INK_RATIO = 0.40
MAX_COMPONENTS_PER_CHAR = 3

LENGTH_DIRNAMES = {1: "one", 2: "two", 3: "three"}

# ----


@dataclass(frozen=True)
class GlyphImage:
    """
    Description
    -----------

    This is the base-class object for an 8-bit grayscale word image;
    0 is ink black and 255 is background white.

    Parameters
    ----------

    pixels: ``numpy.ndarray``

        A 2-dimensional array of 8-bit intensities of shape (height,
        width).

    n_chars: ``int``

        The number of characters depicted; must be at least 1.

    """

    pixels: numpy.ndarray
    n_chars: int

    def __post_init__(self):
        pixels = numpy.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.size == 0:
            msg = f"A word image must be a non-empty 2-D array; received shape {pixels.shape}. Aborting!!!"
            raise DataIOError(msg=msg)
        if pixels.dtype != numpy.uint8:
            pixels = numpy.clip(numpy.rint(pixels), 0, 255).astype(numpy.uint8)
        if self.n_chars < 1:
            raise InvalidCharCount(msg=f"The character count {self.n_chars} is less than 1. Aborting!!!")
        object.__setattr__(self, "pixels", pixels)

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    def is_slot_grid(self) -> bool:
        """Whether the image has the slot-grid geometry for n_chars."""

        return self.height == SLOT_HEIGHT and self.width == SLOT_WIDTH * self.n_chars

    def violations(self) -> List[str]:
        """
        Description
        -----------

        This method returns the GlyphImage invariants violated by the
        image after preprocessing.

        Returns
        -------

        issues: ``List[str]``

            A Python list of violation descriptions; empty if the
            image is valid.

        """

        issues = []
        if not self.is_slot_grid():
            issues.append(
                f"geometry {self.width}x{self.height} is not "
                f"{SLOT_WIDTH * self.n_chars}x{SLOT_HEIGHT}"
            )
        if numpy.median(self.pixels) < 200:
            issues.append(f"background median {numpy.median(self.pixels):.1f} is below 200")

        return issues


# ----


def dirname_for_length(n_chars: int) -> str:
    """Returns `one`, `two`, `three` or `len_N`."""

    if n_chars < 1:
        raise InvalidCharCount(msg=f"The character count {n_chars} is less than 1. Aborting!!!")

    return LENGTH_DIRNAMES.get(n_chars, f"len_{n_chars}")


def length_for_dirname(dirname: str) -> int:
    """Returns the word length of a dataset directory or None."""

    for length, name in LENGTH_DIRNAMES.items():
        if dirname == name:
            return length
    match = re.fullmatch(r"len_([1-9][0-9]*)", dirname)

    return int(match.group(1)) if match else None


# ----


def load_image(path: Union[str, Path], n_chars: int) -> GlyphImage:
    """
    Description
    -----------

    This function reads an image file as a GlyphImage object;
    transparent regions are composited onto white and color images
    are converted to grayscale.

    Parameters
    ----------

    path: ``Union[str, Path]``

        The path to the image file.

    n_chars: ``int``

        The number of characters depicted.

    Returns
    -------

    img: ``GlyphImage``

        A Python GlyphImage object.

    Raises
    ------

    DataIOError:

        - raised if the file cannot be read.

    """

    try:
        with Image.open(path) as pil:
            pil.load()
            if pil.mode in ("RGBA", "LA") or "transparency" in pil.info:
                rgba = pil.convert("RGBA")
                canvas = Image.new("RGBA", rgba.size, (255, 255, 255, 255))
                pil = Image.alpha_composite(canvas, rgba)
            pixels = numpy.array(pil.convert("L"), dtype=numpy.uint8)
    except OSError as errmsg:
        msg = f"Reading image {path} failed with error {errmsg}. Aborting!!!"
        raise DataIOError(msg=msg) from errmsg

    return GlyphImage(pixels=pixels, n_chars=n_chars)


def save_image(img: GlyphImage, path: Union[str, Path]) -> None:
    """Writes an 8-bit grayscale PNG file without alpha."""

    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(img.pixels).save(path, format="PNG")


# ----


def ink_ratio(img: GlyphImage) -> float:
    """Returns the fraction of pixels darker than INK_THRESHOLD."""

    return float(numpy.mean(img.pixels < INK_THRESHOLD))


def normalize_background(raw: GlyphImage) -> GlyphImage:
    """
    Description
    -----------

    This function maps the image background to white and the strokes
    to black by a percentile contrast stretch: the 95th percentile is
    the white point and the 5th percentile the black anchor; when
    fewer than 5% of the pixels are ink the image minimum is the black
    anchor instead. Stretched values at or above the white-point
    clamp are set to 255. The result is idempotent.

    Parameters
    ----------

    raw: ``GlyphImage``

        A Python GlyphImage object.

    Returns
    -------

    img: ``GlyphImage``

        A Python GlyphImage object with a white background.

    Raises
    ------

    BlankImage:

        - raised if fewer than 0.5% of the pixels are ink after
          normalization.

    """

    # Define the stretch anchors.
    values = raw.pixels.astype(numpy.float64)
    white = float(numpy.percentile(values, WHITE_PERCENTILE, method="higher"))
    floor = float(values.min())
    if white - floor <= 0.0:
        raise BlankImage(msg="The image has no contrast; no ink is present. Aborting!!!")
    black = float(numpy.percentile(values, BLACK_PERCENTILE, method="lower"))
    if (white - black) < SPARSE_INK_FRACTION * (white - floor):
        black = floor

    # Stretch, round and clamp the white point.
    stretched = numpy.clip((values - black) / (white - black) * 255.0, 0.0, 255.0)
    pixels = numpy.rint(stretched).astype(numpy.uint8)
    pixels[pixels >= WHITE_CLAMP] = 255
    img = GlyphImage(pixels=pixels, n_chars=raw.n_chars)
    if ink_ratio(img) < MIN_INK_RATIO:
        msg = (
            f"Only {100.0 * ink_ratio(img):.3f}% of the pixels are ink after "
            "normalization. Aborting!!!"
        )
        raise BlankImage(msg=msg)

    return img


# ----


def resize_to_slots(img: GlyphImage, n_chars: int) -> GlyphImage:
    """
    Description
    -----------

    This function pads the image with background to the slot-grid
    aspect ratio and then resamples it to (16 x n_chars) x 32 pixels;
    area averaging is used for reduction and bilinear interpolation
    for enlargement.

    Parameters
    ----------

    img: ``GlyphImage``

        A Python GlyphImage object.

    n_chars: ``int``

        The number of character slots.

    Returns
    -------

    img: ``GlyphImage``

        A Python GlyphImage object on the slot grid.

    Raises
    ------

    InvalidCharCount:

        - raised if `n_chars` is less than 1.

    """

    if n_chars < 1:
        raise InvalidCharCount(msg=f"The character count {n_chars} is less than 1. Aborting!!!")
    (target_w, target_h) = (SLOT_WIDTH * n_chars, SLOT_HEIGHT)
    (height, width) = img.pixels.shape
    if (width, height) == (target_w, target_h):
        return GlyphImage(pixels=img.pixels.copy(), n_chars=n_chars)

    # Pad to the target aspect ratio, centered.
    if width * target_h < height * target_w:
        (pad_w, pad_h) = (int(round(height * target_w / target_h)), height)
    else:
        (pad_w, pad_h) = (width, int(round(width * target_h / target_w)))
    canvas = numpy.full((pad_h, pad_w), 255, dtype=numpy.uint8)
    (top, left) = ((pad_h - height) // 2, (pad_w - width) // 2)
    canvas[top : top + height, left : left + width] = img.pixels

    resample = Image.Resampling.BOX if pad_w >= target_w else Image.Resampling.BILINEAR
    pil = Image.fromarray(canvas).resize((target_w, target_h), resample=resample)

    return GlyphImage(pixels=numpy.array(pil, dtype=numpy.uint8), n_chars=n_chars)


# ----


def quality_gate(img: GlyphImage, n_chars: int) -> bool:
    """
    Description
    -----------

    This function evaluates whether an image passes the automated
    quality gate: the ink ratio must lie within [0.5%, 40%] and the
    number of 8-connected ink components must not exceed three times
    the character count.

    Parameters
    ----------

    img: ``GlyphImage``

        A Python GlyphImage object; normalized.

    n_chars: ``int``

        The expected number of characters.

    Returns
    -------

    passed: ``bool``

        A Python boolean valued variable specifying whether the image
        passes the quality gate.

    """

    ratio = ink_ratio(img)
    if not (MIN_INK_RATIO <= ratio <= MAX_INK_RATIO):
        return False
    (_, n_components) = ndimage.label(img.pixels < INK_THRESHOLD, structure=numpy.ones((3, 3)))

    return n_components <= MAX_COMPONENTS_PER_CHAR * n_chars
