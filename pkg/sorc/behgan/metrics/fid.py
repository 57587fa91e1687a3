"""
Module
------

    fid.py

Description
-----------

    This module contains the squared Frechet distance between Gaussian
    fits of two feature sets.

Classes
-------

    FrechetResult(value, regularized)

        This is the base-class object for a Frechet distance and the
        flag recording whether covariance regularization was needed.

Functions
---------

    compute_fid(real_feats, gen_feats, eps=1.0e-6)

        This function returns the FrechetResult of two feature sets.

    fid(real_feats, gen_feats)

        This function returns the Frechet distance of two feature
        sets.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from dataclasses import dataclass

import numpy
import scipy.linalg

from behgan.exceptions import DimensionMismatch, TooFewSamples
from behgan.logger import Logger

# ----

# Define all available module properties.
__all__ = ["FrechetResult", "compute_fid", "fid"]

# ----

logger = Logger(caller_name=__name__)

# ----


@dataclass(frozen=True)
class FrechetResult:
    value: float
    regularized: bool


def _gaussian(feats: numpy.ndarray):
    mu = feats.mean(axis=0)
    sigma = numpy.atleast_2d(numpy.cov(feats, rowvar=False))
    return (mu, sigma)


def compute_fid(real_feats: numpy.ndarray, gen_feats: numpy.ndarray, eps: float = 1.0e-6) -> FrechetResult:
    """
    Description
    -----------

    This function returns ||mu_1 - mu_2||^2 +
    trace(S_1 + S_2 - 2 (S_1 S_2)^(1/2)); if the matrix square root
    is not finite or carries a significant imaginary part, `eps` * I
    is added to both covariances and the result is flagged as
    regularized. Negative values from round-off are clamped at 0.

    Parameters
    ----------

    real_feats: ``numpy.ndarray``

        The (n_1, d) real feature vectors.

    gen_feats: ``numpy.ndarray``

        The (n_2, d) generated feature vectors.

    Keywords
    --------

    eps: ``float``, optional

        The covariance regularization.

    Returns
    -------

    result: ``FrechetResult``

        A Python FrechetResult object.

    Raises
    ------

    TooFewSamples:

        - raised if either set has fewer than two vectors.

    DimensionMismatch:

        - raised if the feature dimensions differ.

    """

    (real_feats, gen_feats) = (numpy.asarray(real_feats, dtype=numpy.float64), numpy.asarray(gen_feats, dtype=numpy.float64))
    if real_feats.ndim == 1:
        real_feats = real_feats[:, None]
    if gen_feats.ndim == 1:
        gen_feats = gen_feats[:, None]
    if len(real_feats) < 2 or len(gen_feats) < 2:
        raise TooFewSamples(msg="The Frechet distance requires at least two vectors per set. Aborting!!!")
    if real_feats.shape[1] != gen_feats.shape[1]:
        msg = f"Feature dimensions {real_feats.shape[1]} and {gen_feats.shape[1]} differ. Aborting!!!"
        raise DimensionMismatch(msg=msg)
    ((mu_1, sigma_1), (mu_2, sigma_2)) = (_gaussian(real_feats), _gaussian(gen_feats))

    regularized = False
    covmean = scipy.linalg.sqrtm(sigma_1 @ sigma_2)
    if not numpy.isfinite(covmean).all() or (
        numpy.iscomplexobj(covmean) and not numpy.allclose(numpy.diagonal(covmean).imag, 0.0, atol=1.0e-3)
    ):
        logger.warn(msg=f"Singular covariance product; adding {eps} to the diagonals.")
        offset = numpy.eye(sigma_1.shape[0]) * eps
        covmean = scipy.linalg.sqrtm((sigma_1 + offset) @ (sigma_2 + offset))
        regularized = True
    covmean = numpy.real(covmean)
    diff = mu_1 - mu_2
    value = float(diff @ diff + numpy.trace(sigma_1) + numpy.trace(sigma_2) - 2.0 * numpy.trace(covmean))

    return FrechetResult(value=max(value, 0.0), regularized=regularized)


def fid(real_feats: numpy.ndarray, gen_feats: numpy.ndarray) -> float:
    return compute_fid(real_feats=real_feats, gen_feats=gen_feats).value
