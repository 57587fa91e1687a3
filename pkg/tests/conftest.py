"""
Shared fixtures: a Latin vocabulary whose glyphs are their own keys,
synthetic slot-grid word images, a small dataset tree and small model
configurations.
"""

# ----

import os
import sys
from pathlib import Path

import numpy
import pytest

# ----

REPO_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO_ROOT / "sorc"))
os.environ.setdefault("BEHGAN_ROOT", str(REPO_ROOT))

from behgan.critic import CriticConfig  # noqa: E402
from behgan.dataio.glyph import GlyphImage, dirname_for_length, save_image  # noqa: E402
from behgan.gen import GeneratorConfig  # noqa: E402
from behgan.recognizer import RecognizerConfig  # noqa: E402
from behgan.vocab import CharVocabulary, map_word  # noqa: E402

# ----

DEJAVU = Path("/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf")

DATASET_LABELS = {
    1: ["k", "l", "m", "n", "p", "k", "l", "m"],
    2: ["kl", "mn", "pk", "lm", "kl", "np"],
    3: ["klm", "npk", "mkl", "klm"],
}

# ----


def pytest_collection_modifyitems(config, items):
    if os.environ.get("BEHGAN_RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set BEHGAN_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# ----


def draw_word(class_ids, seed=0) -> GlyphImage:
    """A clean slot-grid image with one connected stroke per character."""

    rng = numpy.random.default_rng(seed)
    n_chars = len(class_ids)
    pixels = numpy.full((32, 16 * n_chars), 255, dtype=numpy.uint8)
    for slot, cls in enumerate(class_ids):
        left = 16 * slot
        ink = int(rng.integers(0, 40))
        col = left + 3 + 2 * int(cls) + int(rng.integers(0, 2))
        pixels[6:26, col : col + 2] = ink
        row = 8 + int(rng.integers(0, 3)) + 3 * (int(cls) % 3)
        pixels[row : row + 2, left + 2 : left + 14] = ink
    return GlyphImage(pixels=pixels, n_chars=n_chars)


def write_dataset(root: Path, vocab: CharVocabulary, labels=None) -> Path:
    labels = DATASET_LABELS if labels is None else labels
    for n_chars, words in labels.items():
        for idx, text in enumerate(words, start=1):
            word = map_word(text=text, vocab=vocab)
            path = root / dirname_for_length(n_chars) / f"{idx:05d}.png"
            save_image(img=draw_word(word.class_ids, seed=100 * n_chars + idx), path=path)
            path.with_suffix(".txt").write_text(text + "\n", encoding="utf-8")
    return root


# ----


@pytest.fixture
def latin_vocab() -> CharVocabulary:
    return CharVocabulary(glyphs=("k", "l", "m", "n", "p"), keys=("k", "l", "m", "n", "p"))


@pytest.fixture
def bengali_vocab_path() -> Path:
    return REPO_ROOT / "parm" / "vocab" / "bengali5.tsv"


@pytest.fixture
def dataset_root(tmp_path, latin_vocab) -> Path:
    return write_dataset(tmp_path / "data", latin_vocab)


@pytest.fixture
def font_path() -> Path:
    if not DEJAVU.is_file():
        pytest.skip("DejaVu Sans is not installed")
    return DEJAVU


@pytest.fixture
def small_generator_config() -> GeneratorConfig:
    return GeneratorConfig(n_classes=5, d_z=8, channels=(16, 8, 8))


@pytest.fixture
def small_critic_config() -> CriticConfig:
    return CriticConfig(channels=(8, 8, 8, 8))


@pytest.fixture
def small_recognizer_config() -> RecognizerConfig:
    return RecognizerConfig(channels=(8, 8, 16))


@pytest.fixture
def draw():
    return draw_word


@pytest.fixture
def dataset_writer():
    return write_dataset
