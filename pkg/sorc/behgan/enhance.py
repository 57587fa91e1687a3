"""
Module
------

    enhance.py

Description
-----------

    This module contains the registry of post-generation enhancers. An
    enhancer maps a word image to an image upscaled by an integer
    factor; the registered baselines are the identity and a bicubic
    x4 upscale followed by an unsharp mask. Learned enhancers register
    behind the same interface.

Classes
-------

    Enhancer(enhancer_id, fn, scale)

        This is the base-class object for a registered enhancer.

Functions
---------

    enhance(img, enhancer_id)

        This function applies a registered enhancer.

    list_enhancers()

        This function returns the registered enhancer identifiers.

    register_enhancer(enhancer)

        This function registers an enhancer.

    to_slot_grid(img)

        This function area-resamples an enhanced image back onto the
        slot grid.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy
from PIL import Image, ImageFilter

from behgan.dataio.glyph import SLOT_HEIGHT, SLOT_WIDTH, GlyphImage
from behgan.exceptions import EnhanceError, UnknownEnhancer
from behgan.logger import Logger

# ----

# Define all available module properties.
__all__ = ["Enhancer", "enhance", "list_enhancers", "register_enhancer", "to_slot_grid"]

# ----

logger = Logger(caller_name=__name__)

UNSHARP_RADIUS = 1.5
UNSHARP_PERCENT = 60
BICUBIC_SCALE = 4

# ----


@dataclass(frozen=True)
class Enhancer:
    enhancer_id: str
    fn: Callable[[Image.Image], Image.Image]
    scale: int = 1


def _identity(img: Image.Image) -> Image.Image:
    return img.copy()


def _bicubic_unsharp(img: Image.Image) -> Image.Image:
    (width, height) = img.size
    upscaled = img.resize((width * BICUBIC_SCALE, height * BICUBIC_SCALE), Image.Resampling.BICUBIC)

    return upscaled.filter(ImageFilter.UnsharpMask(radius=UNSHARP_RADIUS, percent=UNSHARP_PERCENT, threshold=0))


_REGISTRY: Dict[str, Enhancer] = {}


def register_enhancer(enhancer: Enhancer) -> None:
    """Registers (or replaces) an enhancer under its identifier."""

    if enhancer.scale < 1:
        raise EnhanceError(msg=f"Enhancer {enhancer.enhancer_id!r} has an invalid scale {enhancer.scale}. Aborting!!!")
    _REGISTRY[enhancer.enhancer_id] = enhancer


def list_enhancers() -> List[str]:
    return sorted(_REGISTRY)


register_enhancer(Enhancer(enhancer_id="identity", fn=_identity, scale=1))
register_enhancer(Enhancer(enhancer_id="bicubic-unsharp", fn=_bicubic_unsharp, scale=BICUBIC_SCALE))

# ----


def enhance(img: GlyphImage, enhancer_id: str) -> GlyphImage:
    """
    Description
    -----------

    This function applies a registered enhancer and verifies the
    dimension law (output = scale x input) and the 8-bit single
    channel output.

    Parameters
    ----------

    img: ``GlyphImage``

        A Python GlyphImage object.

    enhancer_id: ``str``

        The registered enhancer identifier.

    Returns
    -------

    out: ``GlyphImage``

        A Python GlyphImage object, upscaled by the enhancer scale.

    Raises
    ------

    UnknownEnhancer:

        - raised if the identifier is not registered.

    EnhanceError:

        - raised if the enhancer violates the dimension law.

    """

    if enhancer_id not in _REGISTRY:
        msg = f"Unknown enhancer {enhancer_id!r}; registered: {list_enhancers()}. Aborting!!!"
        raise UnknownEnhancer(msg=msg)
    enhancer = _REGISTRY[enhancer_id]
    out = enhancer.fn(Image.fromarray(img.pixels)).convert("L")
    expected = (img.width * enhancer.scale, img.height * enhancer.scale)
    if out.size != expected:
        msg = f"Enhancer {enhancer_id!r} produced {out.size}; expected {expected}. Aborting!!!"
        raise EnhanceError(msg=msg)

    return GlyphImage(pixels=numpy.asarray(out, dtype=numpy.uint8), n_chars=img.n_chars)


def to_slot_grid(img: GlyphImage) -> GlyphImage:
    """Area-resamples an image to 32 x 16n; identity on the slot grid."""

    if img.is_slot_grid():
        return GlyphImage(pixels=img.pixels.copy(), n_chars=img.n_chars)
    out = Image.fromarray(img.pixels).resize((SLOT_WIDTH * img.n_chars, SLOT_HEIGHT), Image.Resampling.BOX)

    return GlyphImage(pixels=numpy.asarray(out, dtype=numpy.uint8), n_chars=img.n_chars)
