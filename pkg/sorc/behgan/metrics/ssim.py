"""
Module
------

    ssim.py

Description
-----------

    This module contains the structural similarity index of two word
    images, computed over 8 x 8 uniform sliding windows, and its
    label-paired set-level average.

Functions
---------

    mean_ssim(real, generated, max_pairs=8)

        This function returns the mean SSIM of generated images
        against real images carrying the same label.

    ssim(a, b)

        This function returns the SSIM of two equally sized images.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from typing import Dict, List, Sequence, Tuple

import numpy
from numpy.lib.stride_tricks import sliding_window_view

from behgan.dataio.glyph import GlyphImage
from behgan.exceptions import DimensionMismatch, MetricsError

# ----

# Define all available module properties.
__all__ = ["C1", "C2", "WINDOW", "mean_ssim", "ssim"]

# ----

WINDOW = 8
C1 = (0.01 * 255.0) ** 2
C2 = (0.03 * 255.0) ** 2

# ----


def ssim(a: GlyphImage, b: GlyphImage) -> float:
    """
    Description
    -----------

    This function returns the mean, over all 8 x 8 windows, of the
    windowed luminance/contrast/structure similarity; the window
    statistics are population statistics.

    Parameters
    ----------

    a: ``GlyphImage``

        A Python GlyphImage object.

    b: ``GlyphImage``

        A Python GlyphImage object of the same dimensions.

    Returns
    -------

    value: ``float``

        The SSIM value; in [-1, 1].

    Raises
    ------

    DimensionMismatch:

        - raised if the dimensions differ or are smaller than the
          window.

    """

    (x, y) = (a.pixels.astype(numpy.float64), b.pixels.astype(numpy.float64))
    if x.shape != y.shape:
        raise DimensionMismatch(msg=f"Cannot compare images of shapes {x.shape} and {y.shape}. Aborting!!!")
    if min(x.shape) < WINDOW:
        raise DimensionMismatch(msg=f"Images must be at least {WINDOW} x {WINDOW} pixels. Aborting!!!")
    (wx, wy) = (sliding_window_view(x, (WINDOW, WINDOW)), sliding_window_view(y, (WINDOW, WINDOW)))
    (mu_x, mu_y) = (wx.mean(axis=(-2, -1)), wy.mean(axis=(-2, -1)))
    dx = wx - mu_x[..., None, None]
    dy = wy - mu_y[..., None, None]
    var_x = (dx * dx).mean(axis=(-2, -1))
    var_y = (dy * dy).mean(axis=(-2, -1))
    cov = (dx * dy).mean(axis=(-2, -1))
    num = (2.0 * mu_x * mu_y + C1) * (2.0 * cov + C2)
    den = (mu_x * mu_x + mu_y * mu_y + C1) * (var_x + var_y + C2)

    return float((num / den).mean())


def mean_ssim(
    real: Sequence[Tuple[str, GlyphImage]],
    generated: Sequence[Tuple[str, GlyphImage]],
    max_pairs: int = 8,
) -> float:
    """
    Description
    -----------

    This function pairs each generated image with up to `max_pairs`
    real images carrying the same label (in input order) and returns
    the mean SSIM over all pairs; generated labels without a real
    counterpart are skipped.

    Parameters
    ----------

    real: ``Sequence[Tuple[str, GlyphImage]]``

        The (label, image) pairs of the real set.

    generated: ``Sequence[Tuple[str, GlyphImage]]``

        The (label, image) pairs of the generated set.

    Raises
    ------

    MetricsError:

        - raised if no generated label occurs in the real set.

    """

    by_label: Dict[str, List[GlyphImage]] = {}
    for label, img in real:
        by_label.setdefault(label, []).append(img)
    values = [
        ssim(a=img, b=ref)
        for label, img in generated
        for ref in by_label.get(label, [])[:max_pairs]
    ]
    if not values:
        raise MetricsError(msg="No generated label occurs in the real set. Aborting!!!")

    return float(numpy.mean(values))
