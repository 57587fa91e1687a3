"""
Module
------

    features.py

Description
-----------

    This module contains the registry of feature extractors used by
    the Frechet distance: a pooled-pixel extractor, a seeded random
    convolution network, and the penultimate features of a trained
    recognizer.

Classes
-------

    FeatureExtractor(extractor_id, dim, fn)

        This is the base-class object for a registered extractor.

Functions
---------

    default_extractor(model=None)

        This function returns the recognizer backbone extractor of a
        model, or the random convolution fallback.

    extract_features(imgs, extractor)

        This function returns the feature vectors of a set of images.

    get_extractor(extractor_id)

        This function returns a registered extractor.

    recognizer_extractor(model)

        This function wraps a trained recognizer as an extractor.

    register_extractor(extractor)

        This function registers an extractor.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Union

import numpy
import torch
import torch.nn.functional as F
from torch import nn

from behgan.dataio.bank import to_tensor
from behgan.dataio.glyph import GlyphImage
from behgan.exceptions import UnknownExtractor
from behgan.logger import Logger
from behgan.recognizer import Recognizer

# ----

# Define all available module properties.
__all__ = [
    "FALLBACK_EXTRACTOR",
    "FeatureExtractor",
    "default_extractor",
    "extract_features",
    "get_extractor",
    "list_extractors",
    "recognizer_extractor",
    "register_extractor",
]

# ----

logger = Logger(caller_name=__name__)

POOLED_GRID = (16, 8)
RANDOM_CONV_SEED = 1234

FALLBACK_EXTRACTOR = "random-conv"

# ----


@dataclass(frozen=True)
class FeatureExtractor:
    """
    Description
    -----------

    This is the base-class object for a registered extractor; `fn`
    maps a (B, 1, 32, 16n) batch in [-1, 1] to (B, dim) features.

    """

    extractor_id: str
    dim: int
    fn: Callable[[torch.Tensor], torch.Tensor]


def _pooled(x: torch.Tensor) -> torch.Tensor:
    return F.adaptive_avg_pool2d(x, POOLED_GRID).flatten(1)


def _random_conv() -> Callable[[torch.Tensor], torch.Tensor]:
    generator = torch.Generator().manual_seed(RANDOM_CONV_SEED)
    net = nn.Sequential(
        nn.Conv2d(1, 32, 3, stride=2, padding=1),
        nn.ReLU(),
        nn.Conv2d(32, 64, 3, stride=2, padding=1),
        nn.ReLU(),
        nn.Conv2d(64, 64, 3, stride=2, padding=1),
        nn.ReLU(),
    )
    with torch.no_grad():
        for param in net.parameters():
            param.copy_(torch.randn(param.shape, generator=generator) * 0.1)
    net.eval()

    def fn(x: torch.Tensor) -> torch.Tensor:
        return F.adaptive_avg_pool2d(net(x), 1).flatten(1)

    return fn


_REGISTRY: Dict[str, FeatureExtractor] = {}


def register_extractor(extractor: FeatureExtractor) -> None:
    _REGISTRY[extractor.extractor_id] = extractor


def list_extractors() -> List[str]:
    return sorted(_REGISTRY)


def get_extractor(extractor_id: str) -> FeatureExtractor:
    if extractor_id not in _REGISTRY:
        msg = f"Unknown feature extractor {extractor_id!r}; registered: {list_extractors()}. Aborting!!!"
        raise UnknownExtractor(msg=msg)
    return _REGISTRY[extractor_id]


def recognizer_extractor(model: Recognizer) -> FeatureExtractor:
    """The recognizer's frame-averaged penultimate features."""

    model.eval()
    return FeatureExtractor(extractor_id="recognizer", dim=model.config.feature_dim, fn=model.embed)


register_extractor(FeatureExtractor(extractor_id="pooled", dim=POOLED_GRID[0] * POOLED_GRID[1], fn=_pooled))
register_extractor(FeatureExtractor(extractor_id="random-conv", dim=64, fn=_random_conv()))


def default_extractor(model: Recognizer = None) -> FeatureExtractor:
    """The backbone of `model` if specified, else the seeded random convolution net."""

    if model is not None:
        return recognizer_extractor(model=model)
    logger.warn(msg=f"No recognizer is available; falling back to the {FALLBACK_EXTRACTOR} feature extractor.")

    return get_extractor(extractor_id=FALLBACK_EXTRACTOR)


# ----


def extract_features(
    imgs: Sequence[GlyphImage], extractor: Union[str, FeatureExtractor], batch_size: int = 256
) -> numpy.ndarray:
    """
    Description
    -----------

    This function returns the (len(imgs), dim) feature matrix of a
    set of images, in input order; images are batched by width.

    Parameters
    ----------

    imgs: ``Sequence[GlyphImage]``

        The images.

    extractor: ``Union[str, FeatureExtractor]``

        A registered extractor identifier or a FeatureExtractor
        object.

    Returns
    -------

    feats: ``numpy.ndarray``

        The feature matrix.

    Raises
    ------

    UnknownExtractor:

        - raised if the identifier is not registered.

    """

    if isinstance(extractor, str):
        extractor = get_extractor(extractor_id=extractor)
    feats = numpy.zeros((len(imgs), extractor.dim), dtype=numpy.float64)
    by_width: Dict[int, List[int]] = {}
    for idx, img in enumerate(imgs):
        by_width.setdefault(img.width, []).append(idx)
    with torch.no_grad():
        for indices in by_width.values():
            for start in range(0, len(indices), batch_size):
                chunk = indices[start : start + batch_size]
                batch = torch.stack([to_tensor(imgs[i]) for i in chunk])
                feats[chunk] = extractor.fn(batch).numpy()

    return feats
