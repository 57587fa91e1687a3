"""
SSIM, Frechet distance and geometry score evaluation of generated word
images.
"""

from behgan.metrics.features import (
    FeatureExtractor,
    extract_features,
    get_extractor,
    list_extractors,
    recognizer_extractor,
    register_extractor,
)
from behgan.metrics.fid import FrechetResult, compute_fid, fid
from behgan.metrics.geometry import GeometryParams, geometry_score, load_geometry_params
from behgan.metrics.report import MetricReport, evaluate_sets, load_images
from behgan.metrics.ssim import mean_ssim, ssim
