"""
Module
------

    critic.py

Description
-----------

    This module contains the variable-width patch critic: a stack of
    stride-2 spectrally normalised convolutions whose height-collapsing
    head emits one real/fake logit per 16-pixel column band; the band
    logits are mean-pooled into the image score. No class labels are
    consumed.

Classes
-------

    Critic(config)

        This is the critic network.

    CriticConfig(channels, negative_slope)

        This is the base-class object for the critic architecture.

    CriticScore(patch_scores, pooled)

        This is the base-class object for the score of one image.

Functions
---------

    critic_loss(real_scores, fake_scores)

        This function returns the hinge critic loss.

    generator_adversarial_loss(fake_pooled)

        This function returns the hinge generator loss.

    load_critic_config(yaml_file=None)

        This function reads and validates the critic configuration
        record.

    score(img, model)

        This function scores a word image.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from dataclasses import asdict, dataclass
from typing import Dict, Sequence, Tuple, Union

import numpy
import torch
import torch.nn.functional as F
from torch import nn

from behgan.config import parm_path, read_yaml, validate_config
from behgan.dataio.bank import to_tensor
from behgan.dataio.glyph import SLOT_HEIGHT, SLOT_WIDTH, GlyphImage
from behgan.exceptions import BadGeometry, CriticError, EmptyBatch, ModelNotLoaded

# ----

# Define all available module properties.
__all__ = [
    "Critic",
    "CriticConfig",
    "CriticScore",
    "check_geometry",
    "critic_loss",
    "generator_adversarial_loss",
    "load_critic_config",
    "score",
]

# ----


@dataclass(frozen=True)
class CriticConfig:
    """
    Description
    -----------

    This is the base-class object for the critic architecture; each
    entry of `channels` is one stride-2 3 x 3 convolution, and four
    of them reduce a 32 x 16n input to 2 x n before the head.

    """

    channels: Tuple[int, ...] = (64, 128, 256, 256)
    negative_slope: float = 0.2
    pooling: str = "mean"

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(int(c) for c in self.channels))
        if 2 ** len(self.channels) != SLOT_WIDTH:
            msg = f"The critic needs four downsample stages; received {len(self.channels)}. Aborting!!!"
            raise CriticError(msg=msg)
        if self.pooling != "mean":
            raise CriticError(msg=f"Unsupported pooling {self.pooling!r}. Aborting!!!")

    def to_dict(self) -> Dict:
        cfg = asdict(self)
        cfg["channels"] = list(self.channels)
        return cfg


@validate_config
def __critic_config__(yaml_file: str = None) -> Tuple[str, Dict]:
    if yaml_file is None:
        yaml_file = str(parm_path("config.yaml"))

    return (parm_path("schema", "critic.schema.yaml"), read_yaml(yaml_file=yaml_file).get("critic"))


def load_critic_config(yaml_file: str = None) -> CriticConfig:
    return CriticConfig(**__critic_config__(yaml_file=yaml_file))


@dataclass(frozen=True)
class CriticScore:
    """
    Description
    -----------

    This is the base-class object for the score of one image: one
    logit per 16-pixel band and their mean.

    """

    patch_scores: numpy.ndarray
    pooled: float


# ----


def check_geometry(height: int, width: int) -> int:
    """
    Description
    -----------

    This function verifies that an image is 32 pixels high and a
    positive multiple of 16 pixels wide, and returns the slot count.

    Raises
    ------

    BadGeometry:

        - raised if the geometry is violated.

    """

    if height != SLOT_HEIGHT or width < SLOT_WIDTH or width % SLOT_WIDTH:
        msg = (
            f"Expected an image {SLOT_HEIGHT} pixels high and a positive multiple of "
            f"{SLOT_WIDTH} pixels wide; received {width} x {height}. Aborting!!!"
        )
        raise BadGeometry(msg=msg)

    return width // SLOT_WIDTH


class Critic(nn.Module):
    """
    Description
    -----------

    This is the critic network; `forward` returns the (B, n) band
    logits of a (B, 1, 32, 16n) batch.

    """

    def __init__(self, config: CriticConfig = None):
        super().__init__()
        self.config = config or CriticConfig()
        layers = []
        c_in = 1
        for c_out in self.config.channels:
            layers.append(nn.utils.spectral_norm(nn.Conv2d(c_in, c_out, 3, stride=2, padding=1)))
            layers.append(nn.LeakyReLU(self.config.negative_slope))
            c_in = c_out
        self.features = nn.Sequential(*layers)
        rows = SLOT_HEIGHT // SLOT_WIDTH
        self.head = nn.utils.spectral_norm(nn.Conv2d(c_in, 1, (rows, 1)))

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        check_geometry(height=x.shape[-2], width=x.shape[-1])
        return self.head(self.features(x)).flatten(1)

    @staticmethod
    def pool(patch_scores: torch.Tensor) -> torch.Tensor:
        return patch_scores.mean(dim=1)


def score(img: GlyphImage, model: Critic) -> CriticScore:
    """
    Description
    -----------

    This function scores one word image in evaluation mode.

    Parameters
    ----------

    img: ``GlyphImage``

        A Python GlyphImage object.

    model: ``Critic``

        A Python Critic object.

    Returns
    -------

    result: ``CriticScore``

        A Python CriticScore object.

    Raises
    ------

    BadGeometry:

        - raised if the image is not on the slot grid.

    """

    check_geometry(height=img.height, width=img.width)
    if model is None:
        raise ModelNotLoaded(msg="No critic weights are loaded. Aborting!!!")
    was_training = model.training
    model.eval()
    try:
        with torch.no_grad():
            patches = model(to_tensor(img).unsqueeze(0))[0]
    finally:
        model.train(was_training)

    return CriticScore(patch_scores=patches.numpy().astype(numpy.float64), pooled=float(patches.mean()))


# ----


def _pooled(scores: Union[torch.Tensor, Sequence[CriticScore]]) -> torch.Tensor:
    if isinstance(scores, torch.Tensor):
        return scores.reshape(-1)
    return torch.tensor([s.pooled for s in scores], dtype=torch.float64)


def critic_loss(
    real_scores: Union[torch.Tensor, Sequence[CriticScore]],
    fake_scores: Union[torch.Tensor, Sequence[CriticScore]],
) -> torch.Tensor:
    """
    Description
    -----------

    This function returns the hinge critic loss
    mean(relu(1 - real)) + mean(relu(1 + fake)) over pooled scores;
    either pooled tensors or CriticScore sequences are accepted.

    Raises
    ------

    EmptyBatch:

        - raised if either batch is empty.

    """

    (real, fake) = (_pooled(real_scores), _pooled(fake_scores))
    if real.numel() == 0 or fake.numel() == 0:
        raise EmptyBatch(msg="The critic loss requires non-empty real and generated batches. Aborting!!!")

    return F.relu(1.0 - real).mean() + F.relu(1.0 + fake).mean()


def generator_adversarial_loss(fake_pooled: torch.Tensor) -> torch.Tensor:
    """The generator's hinge term, -mean(fake)."""

    if fake_pooled.numel() == 0:
        raise EmptyBatch(msg="The adversarial loss requires a non-empty batch. Aborting!!!")
    return -fake_pooled.mean()
