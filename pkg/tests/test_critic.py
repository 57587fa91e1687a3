"""
Tests for the variable-width patch critic.
"""

# ----

import numpy
import pytest
import torch

from behgan.critic import (
    Critic,
    CriticConfig,
    CriticScore,
    check_geometry,
    critic_loss,
    generator_adversarial_loss,
    load_critic_config,
    score,
)
from behgan.dataio.glyph import GlyphImage
from behgan.exceptions import BadGeometry, CriticError, EmptyBatch, ModelNotLoaded

# ----


@pytest.fixture
def critic(small_critic_config):
    torch.manual_seed(0)
    return Critic(small_critic_config)


def test_default_config_from_file():
    assert load_critic_config() == CriticConfig()


def test_invalid_config():
    with pytest.raises(CriticError):
        CriticConfig(channels=(8, 8, 8))
    with pytest.raises(CriticError):
        CriticConfig(pooling="max")


@pytest.mark.parametrize("n_chars", [1, 2, 3, 7])
def test_one_score_per_slot(critic, draw, n_chars):
    result = score(draw([i % 5 for i in range(n_chars)]), critic)
    assert result.patch_scores.shape == (n_chars,)
    assert result.pooled == pytest.approx(result.patch_scores.mean(), rel=1e-5, abs=1e-6)


def test_batched_forward(critic):
    out = critic(torch.zeros(4, 1, 32, 48))
    assert out.shape == (4, 3)
    assert Critic.pool(out).shape == (4,)


@pytest.mark.parametrize("height, width", [(32, 20), (30, 32), (32, 0), (64, 32)])
def test_bad_geometry(height, width):
    with pytest.raises(BadGeometry):
        check_geometry(height, width)


def test_bad_geometry_image(critic):
    img = GlyphImage(pixels=numpy.full((32, 24), 255, dtype=numpy.uint8), n_chars=1)
    with pytest.raises(BadGeometry):
        score(img, critic)


def test_missing_model(draw):
    with pytest.raises(ModelNotLoaded):
        score(draw([0]), None)


@pytest.mark.parametrize(
    "real, fake, expected",
    [
        ([1.0, 1.0], [-1.0, -1.0], 0.0),
        ([0.0], [0.0], 2.0),
        ([2.0, -1.0], [0.5, -3.0], 1.0 + 0.75),
    ],
)
def test_hinge_loss(real, fake, expected):
    value = critic_loss(torch.tensor(real), torch.tensor(fake))
    assert float(value) == pytest.approx(expected)


def test_hinge_loss_from_scores():
    real = [CriticScore(patch_scores=numpy.array([0.5, 1.5]), pooled=1.0)]
    fake = [CriticScore(patch_scores=numpy.array([-2.0]), pooled=-2.0)]
    assert float(critic_loss(real, fake)) == pytest.approx(0.0)


def test_empty_batches():
    with pytest.raises(EmptyBatch):
        critic_loss(torch.tensor([]), torch.tensor([1.0]))
    with pytest.raises(EmptyBatch):
        generator_adversarial_loss(torch.tensor([]))


def test_adversarial_loss():
    assert float(generator_adversarial_loss(torch.tensor([1.0, 3.0]))) == pytest.approx(-2.0)
