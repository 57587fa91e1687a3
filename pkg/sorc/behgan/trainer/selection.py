"""
Module
------

    selection.py

Description
-----------

    This module contains the metric-driven checkpoint selection: each
    checkpoint's generator renders the words of an evaluation set,
    the rendered set is scored against the real set, and the
    checkpoints are ranked by the sum of their per-metric ranks
    (SSIM descending, FID ascending, geometry score ascending) with
    ties broken by the lower FID.

Functions
---------

    rank_reports(reports)

        This function returns the index of the best report.

    render_eval_set(model, manifest, vocab, seed, enhancer_id=None)

        This function renders one generated image per evaluation
        record.

    select_best_epoch(checkpoints, eval_set, vocab, ...)

        This function scores every checkpoint and returns the best
        epoch and its report.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy
from scipy.stats import rankdata

from behgan.checkpoint import read_checkpoint
from behgan.dataio.glyph import GlyphImage
from behgan.dataio.manifest import DatasetManifest
from behgan.enhance import enhance, to_slot_grid
from behgan.exceptions import EmptyCheckpointList, MetricsError
from behgan.gen import Generator, GeneratorConfig, NoiseVector, generate
from behgan.logger import Logger
from behgan.metrics.features import FeatureExtractor, default_extractor
from behgan.metrics.geometry import GeometryParams
from behgan.metrics.report import MetricReport, evaluate_sets
from behgan.recognizer import load_recognizer
from behgan.tables import compose
from behgan.vocab import CharVocabulary, map_word

# ----

# Define all available module properties.
__all__ = ["rank_reports", "render_eval_set", "select_best_epoch"]

# ----

logger = Logger(caller_name=__name__)

# ----


def rank_reports(reports: Sequence[MetricReport]) -> int:
    """
    Description
    -----------

    This function ranks reports per metric (ties share the lowest
    rank) and returns the index of the report with the smallest rank
    sum; equal sums are resolved by the lower FID, then by the
    earlier index.

    Raises
    ------

    EmptyCheckpointList:

        - raised if no report is specified.

    """

    if not reports:
        raise EmptyCheckpointList(msg="No checkpoints to select from. Aborting!!!")
    ranks = (
        rankdata([-r.ssim for r in reports], method="min")
        + rankdata([r.fid for r in reports], method="min")
        + rankdata([r.geometry_score for r in reports], method="min")
    )

    return min(range(len(reports)), key=lambda idx: (ranks[idx], reports[idx].fid, idx))


def render_eval_set(
    model: Generator,
    manifest: DatasetManifest,
    vocab: CharVocabulary,
    seed: int,
    enhancer_id: str = None,
) -> List[Tuple[str, GlyphImage]]:
    """
    Description
    -----------

    This function renders, for evaluation record i, its label with
    the noise stream (seed, i); enhanced images are area-resampled
    back onto the slot grid.

    """

    rendered = []
    for idx, record in enumerate(manifest.records):
        word = map_word(text=record.label, vocab=vocab)
        z = NoiseVector(values=numpy.random.default_rng((seed, idx)).standard_normal(model.config.d_z))
        img = generate(word=word, z=z, model=model)
        if enhancer_id is not None:
            img = to_slot_grid(enhance(img=img, enhancer_id=enhancer_id))
        rendered.append((record.label, img))

    return rendered


def select_best_epoch(
    checkpoints: Sequence[Union[str, Path]],
    eval_set: DatasetManifest,
    vocab: CharVocabulary,
    extractor: Union[str, FeatureExtractor] = None,
    geometry: GeometryParams = None,
    seed: int = 0,
) -> Tuple[int, MetricReport]:
    """
    Description
    -----------

    This function scores the generator of every checkpoint on
    `eval_set` and returns the best epoch and its report.

    Parameters
    ----------

    checkpoints: ``Sequence[Union[str, Path]]``

        The checkpoint archive paths.

    eval_set: ``DatasetManifest``

        A Python DatasetManifest object of real images.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    Keywords
    --------

    extractor: ``Union[str, FeatureExtractor]``, optional

        The Frechet distance feature extractor; shared by all
        checkpoints. If NoneType, the recognizer backbone of the
        last checkpoint.

    geometry: ``GeometryParams``, optional

    seed: ``int``, optional

        The evaluation noise seed; shared by all checkpoints.

    Returns
    -------

    selection: ``Tuple[int, MetricReport]``

        The best epoch and its report.

    Raises
    ------

    EmptyCheckpointList:

        - raised if no checkpoint is specified.

    """

    if not checkpoints:
        raise EmptyCheckpointList(msg="No checkpoints to select from. Aborting!!!")
    if len(eval_set) == 0:
        raise MetricsError(msg="The evaluation set is empty. Aborting!!!")
    if extractor is None:
        extractor = default_extractor(model=load_recognizer(ckpt_path=checkpoints[-1], vocab=vocab))
    (epochs, reports) = ([], [])
    for path in checkpoints:
        ckpt = read_checkpoint(path=path, vocab=vocab)
        model = Generator(config=GeneratorConfig(**ckpt.configs["generator"]))
        model.load_state_dict(ckpt.generator)
        generated = render_eval_set(model=model, manifest=eval_set, vocab=vocab, seed=seed)
        reports.append(
            evaluate_sets(
                real=eval_set,
                generated=generated,
                extractor=extractor,
                geometry=geometry,
                config_fingerprint=ckpt.train_fingerprint,
            )
        )
        epochs.append(ckpt.epoch)
    best = rank_reports(reports)
    rows = [[e, r.ssim, r.fid, r.geometry_score] for e, r in zip(epochs, reports)]
    logger.info(msg="Checkpoint scores:\n" + compose(header=["Epoch", "SSIM", "FID", "GS"], rows=rows))
    logger.warn(
        msg=(
            "The geometry score is ranked as a distance (lower is better); published tables "
            "sometimes report it with the opposite polarity."
        )
    )
    logger.info(msg=f"Selected epoch {epochs[best]}.")

    return (epochs[best], reports[best])
