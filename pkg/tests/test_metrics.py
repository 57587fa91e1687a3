"""
Tests for the image-set metrics: SSIM, the Frechet distance and the
geometry score.
"""

# ----

import numpy
import pytest
import torch

from behgan.dataio.glyph import GlyphImage
from behgan.exceptions import DimensionMismatch, MetricsError, TooFewSamples, UnknownExtractor
from behgan.metrics.features import (
    default_extractor,
    extract_features,
    get_extractor,
    list_extractors,
    recognizer_extractor,
)
from behgan.metrics.fid import compute_fid, fid
from behgan.metrics.geometry import (
    DEFAULT_GAMMA,
    GeometryParams,
    geometry_score,
    load_geometry_params,
    mean_rlt,
    relative_living_times,
)
from behgan.metrics.report import MetricReport, evaluate_sets
from behgan.metrics.ssim import C1, C2, WINDOW, mean_ssim, ssim
from behgan.recognizer import Recognizer

# ----


def _noise_image(seed, n_chars=1):
    pixels = numpy.random.default_rng(seed).integers(0, 256, size=(32, 16 * n_chars))
    return GlyphImage(pixels=pixels.astype(numpy.uint8), n_chars=n_chars)


def _reference_ssim(a, b):
    (x, y) = (a.pixels.astype(float), b.pixels.astype(float))
    values = []
    for i in range(x.shape[0] - WINDOW + 1):
        for j in range(x.shape[1] - WINDOW + 1):
            (wx, wy) = (x[i : i + WINDOW, j : j + WINDOW], y[i : i + WINDOW, j : j + WINDOW])
            cov = numpy.mean((wx - wx.mean()) * (wy - wy.mean()))
            num = (2 * wx.mean() * wy.mean() + C1) * (2 * cov + C2)
            den = (wx.mean() ** 2 + wy.mean() ** 2 + C1) * (wx.var() + wy.var() + C2)
            values.append(num / den)
    return float(numpy.mean(values))


def _circle(n, seed, noise=0.01):
    rng = numpy.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * numpy.pi, n)
    return numpy.stack([numpy.cos(theta), numpy.sin(theta)], axis=1) + rng.normal(scale=noise, size=(n, 2))


def _disk(n, seed):
    rng = numpy.random.default_rng(seed)
    (radius, theta) = (numpy.sqrt(rng.uniform(0.0, 1.0, n)), rng.uniform(0.0, 2.0 * numpy.pi, n))
    return numpy.stack([radius * numpy.cos(theta), radius * numpy.sin(theta)], axis=1)


# ----


def test_ssim_self_similarity(draw):
    img = draw([0, 1, 2])
    assert ssim(img, img) == 1.0


@pytest.mark.parametrize("seed", range(20))
def test_ssim_matches_reference(seed):
    (a, b) = (_noise_image(seed, 2), _noise_image(seed + 100, 2))
    assert ssim(a, b) == pytest.approx(_reference_ssim(a, b), abs=1e-6)
    assert ssim(a, b) == pytest.approx(ssim(b, a))


def test_ssim_dimension_mismatch(draw):
    with pytest.raises(DimensionMismatch):
        ssim(draw([0]), draw([0, 1]))


def test_mean_ssim_pairs_by_label(draw):
    real = [("kl", draw([0, 1], seed=1)), ("m", draw([2], seed=2)), ("kl", draw([0, 1], seed=3))]
    generated = [("kl", draw([0, 1], seed=1)), ("np", draw([3, 4]))]
    expected = numpy.mean([1.0, ssim(real[2][1], generated[0][1])])
    assert mean_ssim(real, generated) == pytest.approx(expected)
    assert mean_ssim(real, generated, max_pairs=1) == pytest.approx(1.0)
    with pytest.raises(MetricsError):
        mean_ssim(real, [("p", draw([4]))])


def test_fid_identical_sets():
    feats = numpy.random.default_rng(0).normal(size=(200, 4))
    assert fid(feats, feats) == pytest.approx(0.0, abs=1e-6)


def test_fid_mean_shift():
    feats = numpy.random.default_rng(1).normal(size=(300, 3))
    shift = numpy.array([1.0, -2.0, 0.5])
    assert fid(feats, feats + shift) == pytest.approx(float(shift @ shift), rel=1e-6)


def test_fid_one_dimensional():
    (real, gen) = (numpy.array([0.0, 2.0, 4.0]), numpy.array([1.0, 2.0, 3.0]))
    # Squared mean difference plus squared standard deviation difference.
    assert fid(real, gen) == pytest.approx((numpy.std(real, ddof=1) - numpy.std(gen, ddof=1)) ** 2)


def test_fid_gaussian_mean_shift():
    rng = numpy.random.default_rng(4)
    shift = numpy.ones(8)
    (real, gen) = (rng.normal(size=(10_000, 8)), rng.normal(size=(10_000, 8)) + shift)
    assert fid(real, gen) == pytest.approx(float(shift @ shift), rel=0.05)


def test_fid_gaussian_scale_shift():
    rng = numpy.random.default_rng(5)
    (real, gen) = (rng.normal(scale=1.0, size=40_000), rng.normal(scale=2.0, size=40_000))
    # (1 - 2)^2 for N(0, 1) against N(0, 4).
    assert fid(real, gen) == pytest.approx(1.0, rel=0.05)


def test_fid_translation_invariant():
    rng = numpy.random.default_rng(6)
    (real, gen) = (rng.normal(size=(500, 4)), rng.normal(loc=0.3, size=(500, 4)))
    offset = numpy.array([5.0, -3.0, 0.0, 10.0])
    assert fid(real + offset, gen + offset) == pytest.approx(fid(real, gen), rel=1e-6)


def test_fid_grows_with_shift():
    rng = numpy.random.default_rng(7)
    (real, base) = (rng.normal(size=(2_000, 4)), rng.normal(size=(2_000, 4)))
    values = [fid(real, base + step) for step in (0.0, 0.5, 1.0, 2.0)]
    assert values == sorted(values)
    assert values[0] < values[-1]


def test_fid_checks():
    with pytest.raises(TooFewSamples):
        compute_fid(numpy.zeros((1, 3)), numpy.zeros((5, 3)))
    with pytest.raises(DimensionMismatch):
        compute_fid(numpy.zeros((4, 3)), numpy.zeros((4, 2)))


def test_fid_singular_covariance():
    real = numpy.random.default_rng(2).normal(size=(5, 16))
    result = compute_fid(real, real + 0.1)
    assert numpy.isfinite(result.value)
    assert result.value >= 0.0


def test_relative_living_times():
    numpy.testing.assert_allclose(relative_living_times([(0.0, 0.5)], 1.0, 3), [0.5, 0.5, 0.0])
    numpy.testing.assert_allclose(relative_living_times([(0.0, 1.0), (0.25, 0.75)], 1.0, 3), [0.0, 0.5, 0.5])
    numpy.testing.assert_allclose(relative_living_times([], 1.0, 2), [1.0, 0.0])


def test_geometry_identical_sets():
    points = _circle(120, seed=0)
    params = GeometryParams(n_landmarks=16, n_iterations=3, gamma=0.1, min_samples=50)
    assert geometry_score(points, points, params) == 0.0


def test_geometry_separates_circle_and_disk():
    params = GeometryParams(n_landmarks=20, n_iterations=8, gamma=0.1, min_samples=50)
    (circle_a, circle_b, disk) = (_circle(200, seed=1), _circle(200, seed=2), _disk(200, seed=3))
    assert geometry_score(circle_a, circle_b, params) < geometry_score(circle_a, disk, params)
    assert mean_rlt(circle_a, params)[1] > mean_rlt(disk, params)[1]


def test_geometry_needs_samples():
    with pytest.raises(TooFewSamples):
        geometry_score(_circle(20, seed=0), _circle(200, seed=1))


def test_geometry_params():
    assert GeometryParams().gamma == DEFAULT_GAMMA == 0.1
    assert load_geometry_params() == GeometryParams()
    with pytest.raises(MetricsError):
        GeometryParams(n_landmarks=2)
    with pytest.raises(MetricsError):
        GeometryParams(gamma=None)


def test_geometry_circle_and_disk_at_default_bound():
    params = GeometryParams(n_iterations=20)
    assert geometry_score(_circle(500, seed=1), _disk(500, seed=2), params) > 0.1


@pytest.mark.slow
@pytest.mark.parametrize("trial", range(5))
def test_geometry_same_distribution(trial):
    rng = numpy.random.default_rng(trial)
    (first, second) = (rng.normal(size=(500, 2)), rng.normal(size=(500, 2)))
    assert geometry_score(first, second, GeometryParams()) < 0.02


def test_extractor_registry(draw):
    assert {"pooled", "random-conv"} <= set(list_extractors())
    imgs = [draw([0]), draw([1, 2]), draw([0])]
    for extractor_id in ("pooled", "random-conv"):
        feats = extract_features(imgs, extractor_id)
        assert feats.shape == (3, get_extractor(extractor_id).dim)
        numpy.testing.assert_allclose(feats[0], feats[2], rtol=1e-6, atol=1e-6)
    with pytest.raises(UnknownExtractor):
        extract_features(imgs, "inception")


def test_recognizer_extractor(draw, small_recognizer_config):
    extractor = recognizer_extractor(Recognizer(small_recognizer_config, n_classes=5))
    feats = extract_features([draw([0, 1]), draw([3])], extractor)
    assert feats.shape == (2, small_recognizer_config.feature_dim)
    assert torch.is_tensor(extractor.fn(torch.zeros(1, 1, 32, 16)))


def test_report_files(tmp_path):
    report = MetricReport(ssim=1.3, fid=2.5, geometry_score=0.01, n_real=4, n_generated=4, extractor_id="pooled")
    assert report.ssim == 1.0
    report.to_json(tmp_path / "report.json")
    assert MetricReport.from_json(tmp_path / "report.json") == report
    report.to_csv(tmp_path / "table.csv")
    lines = (tmp_path / "table.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "Metric,Score"
    assert [line.split(",")[0] for line in lines[1:]] == ["SSIM", "FID", "Geometric Score"]
    with pytest.raises(MetricsError):
        MetricReport(ssim=0.5, fid=-1.0, geometry_score=0.0, n_real=1, n_generated=1, extractor_id="pooled")


def test_evaluate_identical_sets(draw):
    real = [(text, draw(ids)) for text, ids in [("k", [0]), ("l", [1]), ("kl", [0, 1])] * 4]
    params = GeometryParams(n_landmarks=4, n_iterations=2, gamma=0.5, min_samples=5)
    report = evaluate_sets(real, real, geometry=params)
    assert report.ssim == pytest.approx(1.0)
    assert report.geometry_score == 0.0
    assert report.n_real == report.n_generated == 12
    assert report.extractor_id == "random-conv"
    assert evaluate_sets(real, real, extractor="pooled", geometry=params).extractor_id == "pooled"


def test_evaluate_defaults_to_recognizer_backbone(draw, small_recognizer_config):
    pairs = [("k", [0]), ("l", [1]), ("kl", [0, 1])] * 4
    real = [(text, draw(ids, seed=seed)) for seed, (text, ids) in enumerate(pairs)]
    params = GeometryParams(n_landmarks=4, n_iterations=2, gamma=0.5, min_samples=5)
    model = Recognizer(small_recognizer_config, n_classes=5)
    report = evaluate_sets(real, real, geometry=params, recognizer=model)
    assert report.extractor_id == "recognizer"
    assert report.ssim == pytest.approx(1.0)


def test_default_extractor(small_recognizer_config):
    assert default_extractor().extractor_id == "random-conv"
    model = Recognizer(small_recognizer_config, n_classes=5)
    assert default_extractor(model).extractor_id == "recognizer"
