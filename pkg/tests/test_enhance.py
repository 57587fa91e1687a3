"""
Tests for the output enhancers.
"""

# ----

import numpy
import pytest

from behgan.enhance import Enhancer, enhance, list_enhancers, register_enhancer, to_slot_grid
from behgan.exceptions import EnhanceError, UnknownEnhancer

# ----


def test_registered_enhancers():
    assert {"identity", "bicubic-unsharp"} <= set(list_enhancers())


def test_identity(draw):
    img = draw([0, 1])
    numpy.testing.assert_array_equal(enhance(img, "identity").pixels, img.pixels)


@pytest.mark.parametrize("n_chars", [1, 3])
def test_bicubic_unsharp_dimension_law(draw, n_chars):
    out = enhance(draw(list(range(n_chars))), "bicubic-unsharp")
    assert out.pixels.shape == (128, 64 * n_chars)
    assert out.pixels.dtype == numpy.uint8
    assert out.n_chars == n_chars


def test_back_to_slot_grid(draw):
    img = draw([2, 3])
    restored = to_slot_grid(enhance(img, "bicubic-unsharp"))
    assert restored.is_slot_grid()
    assert numpy.abs(restored.pixels.astype(int) - img.pixels.astype(int)).mean() < 20.0


def test_unknown_enhancer(draw):
    with pytest.raises(UnknownEnhancer):
        enhance(draw([0]), "esrgan")


def test_dimension_law_is_enforced(draw):
    register_enhancer(Enhancer(enhancer_id="broken", fn=lambda img: img.resize((5, 5)), scale=2))
    with pytest.raises(EnhanceError):
        enhance(draw([0]), "broken")
    with pytest.raises(EnhanceError):
        register_enhancer(Enhancer(enhancer_id="shrink", fn=lambda img: img, scale=0))
