"""
Module
------

    ablation.py

Description
-----------

    This module contains the staged ablation harness: each variant
    builds its training set (limited subset, oversampling, geometric
    augmentation, additional samples), trains under every seed of the
    plan, optionally enhances its outputs, and is scored against a
    held-out real set; the per-metric median across seeds forms one
    result row.

Classes
-------

    AblationResult(configuration, ssim, fid, geometry_score)

        This is the base-class object for one result row.

    AblationVariant(label, stage, ...)

        This is the base-class object for one pipeline variant.

Functions
---------

    build_training_set(variant, base, seed, work_dir)

        This function builds the training manifest of a variant.

    oversample(manifest, factor)

        This function duplicates every record `factor` times.

    read_ablation_plan(path)

        This function reads an ablation plan file.

    run_ablation(variants, base, eval_set, vocab, train_config, ...)

        This function trains and scores every variant.

    write_ablation_csv(results, path)

        This function writes the `Configuration,SSIM,FID,GS` table.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import csv
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Sequence, Union

import numpy

from behgan.dataio.augment import AugmentParams, augment_manifest
from behgan.dataio.bank import WordImageBank
from behgan.dataio.manifest import DatasetManifest, merge_manifests, read_manifest, subset_manifest
from behgan.exceptions import TrainerError
from behgan.logger import Logger
from behgan.metrics.features import FeatureExtractor, recognizer_extractor
from behgan.metrics.geometry import GeometryParams
from behgan.metrics.report import evaluate_sets
from behgan.recognizer import train_recognizer
from behgan.tables import compose
from behgan.trainer.loop import TrainConfig, Trainer
from behgan.trainer.selection import render_eval_set
from behgan.vocab import CharVocabulary

# ----

# Define all available module properties.
__all__ = [
    "ABLATION_COLUMNS",
    "STAGE_ORDER",
    "AblationResult",
    "AblationVariant",
    "build_training_set",
    "oversample",
    "read_ablation_plan",
    "run_ablation",
    "write_ablation_csv",
]

# ----

logger = Logger(caller_name=__name__)

STAGE_ORDER = ("baseline", "oversampling", "augmentation", "additional_samples", "enhancement")
ABLATION_COLUMNS = ["Configuration", "SSIM", "FID", "GS"]

# ----


@dataclass(frozen=True)
class AblationVariant:
    """
    Description
    -----------

    This is the base-class object for one pipeline variant; the
    dataset steps are applied in the order subset, oversample,
    additional samples, augment.

    Parameters
    ----------

    label: ``str``

        The configuration label of the result row.

    stage: ``str``

        One of STAGE_ORDER; fixes the row order.

    subset: ``int``, optional

        The record count of the limited dataset; all records if
        NoneType.

    oversample: ``int``

        The record duplication factor.

    augment: ``bool``

        Whether to apply geometric augmentation.

    additional: ``List[str]``

        The manifests of additional samples merged into the set.

    enhancer: ``str``, optional

        The enhancer applied to generated images before scoring.

    """

    label: str
    stage: str
    subset: int = None
    oversample: int = 1
    augment: bool = False
    additional: List[str] = field(default_factory=list)
    enhancer: str = None

    def __post_init__(self):
        if self.stage not in STAGE_ORDER:
            msg = f"Unknown ablation stage {self.stage!r}; expected one of {STAGE_ORDER}. Aborting!!!"
            raise TrainerError(msg=msg)
        object.__setattr__(self, "additional", list(self.additional))


@dataclass(frozen=True)
class AblationResult:
    configuration: str
    ssim: float
    fid: float
    geometry_score: float

    def row(self) -> List:
        return [self.configuration, self.ssim, self.fid, self.geometry_score]


# ----


def oversample(manifest: DatasetManifest, factor: int) -> DatasetManifest:
    """
    Description
    -----------

    This function returns a manifest in which every record appears
    `factor` times, consecutively; image files are referenced, not
    copied.

    Raises
    ------

    TrainerError:

        - raised if `factor` is less than 1.

    """

    if factor < 1:
        raise TrainerError(msg=f"The oversampling factor must be at least 1; received {factor}. Aborting!!!")

    return DatasetManifest(
        records=[record for record in manifest.records for _ in range(factor)], root=manifest.root
    )


def read_ablation_plan(path: Union[str, Path]) -> Dict:
    """
    Description
    -----------

    This function reads an ablation plan: a JSON object with the keys
    `variants` (a list of AblationVariant records) and, optionally,
    `seeds`, `train`, `augment`, `base`, `eval` and `extractor`.
    Relative manifest paths are resolved against the plan directory.

    """

    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as file:
            plan = json.load(file)
    except (OSError, ValueError) as errmsg:
        msg = f"Reading ablation plan {path} failed with error {errmsg}. Aborting!!!"
        raise TrainerError(msg=msg) from errmsg
    if not isinstance(plan, dict) or not plan.get("variants"):
        raise TrainerError(msg=f"The ablation plan {path} names no variants. Aborting!!!")

    def resolve(value: str) -> str:
        return str(value if Path(value).is_absolute() else path.parent / value)

    variants = []
    for entry in plan["variants"]:
        entry = dict(entry)
        entry["additional"] = [resolve(p) for p in entry.get("additional", [])]
        try:
            variants.append(AblationVariant(**entry))
        except TypeError as errmsg:
            raise TrainerError(msg=f"Malformed variant in ablation plan {path}: {errmsg}. Aborting!!!") from errmsg
    plan["variants"] = variants
    for key in ("base", "eval"):
        if plan.get(key):
            plan[key] = resolve(plan[key])

    return plan


def build_training_set(
    variant: AblationVariant,
    base: DatasetManifest,
    seed: int,
    work_dir: Union[str, Path],
    augment_params: AugmentParams = None,
) -> DatasetManifest:
    """Builds the training manifest of a variant under one seed."""

    manifest = base
    if variant.subset is not None:
        manifest = subset_manifest(manifest=manifest, n_records=variant.subset, seed=seed)
    manifest = oversample(manifest=manifest, factor=variant.oversample)
    if variant.additional:
        manifest = merge_manifests(manifest, *[read_manifest(path=p) for p in variant.additional])
    if variant.augment:
        manifest = augment_manifest(
            manifest=manifest,
            params=augment_params or AugmentParams(),
            seed=seed,
            out_root=Path(work_dir) / "augmented",
        )

    return manifest


def run_ablation(
    variants: Sequence[AblationVariant],
    base: DatasetManifest,
    eval_set: DatasetManifest,
    vocab: CharVocabulary,
    train_config: TrainConfig,
    seeds: Sequence[int] = (0,),
    work_dir: Union[str, Path] = "ablation",
    extractor: Union[str, FeatureExtractor] = None,
    geometry: GeometryParams = None,
    augment_params: AugmentParams = None,
    model_configs: Dict = None,
) -> List[AblationResult]:
    """
    Description
    -----------

    This function trains and scores every variant under every seed
    and returns one row per variant in stage order; each row holds
    the per-metric median across seeds.

    Parameters
    ----------

    variants: ``Sequence[AblationVariant]``

    base: ``DatasetManifest``

        The full real training set.

    eval_set: ``DatasetManifest``

        The held-out real evaluation set.

    vocab: ``CharVocabulary``

    train_config: ``TrainConfig``

        The training settings; the seed is replaced per run.

    Keywords
    --------

    seeds: ``Sequence[int]``, optional

    work_dir: ``Union[str, Path]``, optional

        The directory receiving augmented images and checkpoints.

    extractor: ``Union[str, FeatureExtractor]``, optional

        The Frechet distance feature extractor shared by every row;
        if NoneType, the backbone of a recognizer trained alone on
        `base` with the first seed.

    geometry: ``GeometryParams``, optional

    augment_params: ``AugmentParams``, optional

    model_configs: ``Dict``, optional

        The `generator_config`, `critic_config` and
        `recognizer_config` keywords of every Trainer; the defaults
        if NoneType.

    Returns
    -------

    results: ``List[AblationResult]``

        The result rows.

    """

    if not seeds:
        raise TrainerError(msg="The ablation requires at least one seed. Aborting!!!")
    if extractor is None:
        (model, _) = train_recognizer(
            bank=WordImageBank(manifest=base, vocab=vocab),
            vocab=vocab,
            config=(model_configs or {}).get("recognizer_config"),
            seed=seeds[0],
        )
        extractor = recognizer_extractor(model=model)
    ordered = sorted(variants, key=lambda v: STAGE_ORDER.index(v.stage))
    results = []
    for position, variant in enumerate(ordered):
        scores = []
        for seed in seeds:
            run_dir = Path(work_dir) / f"{position:02d}_{variant.stage}" / f"seed_{seed}"
            manifest = build_training_set(
                variant=variant, base=base, seed=seed, work_dir=run_dir, augment_params=augment_params
            )
            config = replace(train_config, seed=seed)
            trainer = Trainer(vocab=vocab, train_config=config, **(model_configs or {}))
            trainer.fit(bank=WordImageBank(manifest=manifest, vocab=vocab), out_dir=run_dir)
            generated = render_eval_set(
                model=trainer.generator, manifest=eval_set, vocab=vocab, seed=seed, enhancer_id=variant.enhancer
            )
            report = evaluate_sets(
                real=eval_set,
                generated=generated,
                extractor=extractor,
                geometry=geometry,
                config_fingerprint=config.fingerprint,
            )
            scores.append((report.ssim, report.fid, report.geometry_score))
        (ssim, fid, gs) = numpy.median(numpy.asarray(scores), axis=0).tolist()
        results.append(AblationResult(configuration=variant.label, ssim=ssim, fid=fid, geometry_score=gs))
    logger.info(msg="Ablation results:\n" + compose(header=ABLATION_COLUMNS, rows=[r.row() for r in results]))

    return results


def write_ablation_csv(results: Sequence[AblationResult], path: Union[str, Path]) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(ABLATION_COLUMNS)
        writer.writerows(result.row() for result in results)
