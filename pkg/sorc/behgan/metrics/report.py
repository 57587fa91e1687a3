"""
Module
------

    report.py

Description
-----------

    This module contains the MetricReport record, its JSON and CSV
    serializations, and the evaluation of a generated image set
    against a real image set.

Classes
-------

    MetricReport(ssim, fid, geometry_score, ...)

        This is the base-class object for the evaluation of one
        generated set.

Functions
---------

    evaluate_sets(real, generated, extractor=None, recognizer=None, ...)

        This function scores two manifests and returns their
        MetricReport.

    load_images(manifest)

        This function reads the (label, image) pairs of a manifest.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import csv
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Tuple, Union


from behgan.dataio.glyph import GlyphImage, load_image
from behgan.dataio.manifest import DatasetManifest
from behgan.exceptions import MetricsError
from behgan.logger import Logger
from behgan.metrics.features import FeatureExtractor, default_extractor, extract_features
from behgan.metrics.fid import compute_fid
from behgan.metrics.geometry import GeometryParams, geometry_score
from behgan.metrics.ssim import mean_ssim
from behgan.recognizer import Recognizer
from behgan.tables import compose

# ----

# Define all available module properties.
__all__ = ["MetricReport", "evaluate_sets", "load_images"]

# ----

logger = Logger(caller_name=__name__)

# ----


@dataclass(frozen=True)
class MetricReport:
    """
    Description
    -----------

    This is the base-class object for the evaluation of one generated
    set against one real set.

    Parameters
    ----------

    ssim: ``float``

        The label-paired mean SSIM; clamped to [0, 1].

    fid: ``float``

        The Frechet distance under `extractor_id`.

    geometry_score: ``float``

        The geometry score; lower is closer.

    n_real: ``int``

    n_generated: ``int``

    extractor_id: ``str``

    config_fingerprint: ``str``

        The fingerprint of the configuration which produced the
        generated set.

    fid_regularized: ``bool``

        True if the covariance regularization was applied.

    recognizer_accuracy: ``float``, optional

        The greedy-decoding word accuracy on the generated set.

    """

    ssim: float
    fid: float
    geometry_score: float
    n_real: int
    n_generated: int
    extractor_id: str
    config_fingerprint: str = ""
    fid_regularized: bool = False
    recognizer_accuracy: float = None

    def __post_init__(self):
        object.__setattr__(self, "ssim", min(max(float(self.ssim), 0.0), 1.0))
        if self.fid < 0.0 or self.geometry_score < 0.0:
            raise MetricsError(msg="Frechet distance and geometry score must be non-negative. Aborting!!!")

    def to_json(self, path: Union[str, Path]) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as file:
            json.dump(asdict(self), file, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "MetricReport":
        with open(path, "r", encoding="utf-8") as file:
            return cls(**json.load(file))

    def table_rows(self) -> List[Tuple[str, float]]:
        return [("SSIM", self.ssim), ("FID", self.fid), ("Geometric Score", self.geometry_score)]

    def to_csv(self, path: Union[str, Path]) -> None:
        """Writes the `Metric,Score` evaluation table."""

        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as file:
            writer = csv.writer(file)
            writer.writerow(["Metric", "Score"])
            writer.writerows(self.table_rows())

    def summary(self) -> str:
        rows = [list(row) for row in self.table_rows()]
        if self.recognizer_accuracy is not None:
            rows.append(["Recognizer accuracy", self.recognizer_accuracy])
        return compose(header=["Metric", "Score"], rows=rows)


# ----


def load_images(manifest: DatasetManifest) -> List[Tuple[str, GlyphImage]]:
    return [(r.label, load_image(path=r.image_path, n_chars=r.n_chars)) for r in manifest.records]


def evaluate_sets(
    real: Union[DatasetManifest, List[Tuple[str, GlyphImage]]],
    generated: Union[DatasetManifest, List[Tuple[str, GlyphImage]]],
    extractor: Union[str, FeatureExtractor] = None,
    geometry: GeometryParams = None,
    config_fingerprint: str = "",
    recognizer_accuracy: float = None,
    recognizer: Recognizer = None,
) -> MetricReport:
    """
    Description
    -----------

    This function computes the label-paired SSIM, the Frechet
    distance of the `extractor` features, and the geometry score of
    the pooled-pixel vectors of two image sets.

    Parameters
    ----------

    real: ``Union[DatasetManifest, List[Tuple[str, GlyphImage]]]``

        The real set; a manifest or (label, image) pairs.

    generated: ``Union[DatasetManifest, List[Tuple[str, GlyphImage]]]``

        The generated set.

    Keywords
    --------

    extractor: ``Union[str, FeatureExtractor]``, optional

        The Frechet distance feature extractor; if NoneType, the
        backbone of `recognizer`, or the random convolution fallback
        when no recognizer is specified.

    geometry: ``GeometryParams``, optional

        A Python GeometryParams object.

    config_fingerprint: ``str``, optional

    recognizer_accuracy: ``float``, optional

    recognizer: ``Recognizer``, optional

        A trained Recognizer object providing the default extractor.

    Returns
    -------

    report: ``MetricReport``

        A Python MetricReport object.

    """

    if isinstance(real, DatasetManifest):
        real = load_images(manifest=real)
    if isinstance(generated, DatasetManifest):
        generated = load_images(manifest=generated)
    if extractor is None:
        extractor = default_extractor(model=recognizer)
    real_imgs = [img for _, img in real]
    gen_imgs = [img for _, img in generated]
    frechet = compute_fid(
        real_feats=extract_features(imgs=real_imgs, extractor=extractor),
        gen_feats=extract_features(imgs=gen_imgs, extractor=extractor),
    )
    gs = geometry_score(
        real=extract_features(imgs=real_imgs, extractor="pooled"),
        generated=extract_features(imgs=gen_imgs, extractor="pooled"),
        params=geometry,
    )
    report = MetricReport(
        ssim=mean_ssim(real=real, generated=generated),
        fid=frechet.value,
        geometry_score=gs,
        n_real=len(real_imgs),
        n_generated=len(gen_imgs),
        extractor_id=extractor if isinstance(extractor, str) else extractor.extractor_id,
        config_fingerprint=config_fingerprint,
        fid_regularized=frechet.regularized,
        recognizer_accuracy=recognizer_accuracy,
    )
    logger.info(msg="Evaluation results:\n" + report.summary())

    return report
