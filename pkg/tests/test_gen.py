"""
Tests for the character-conditional generator.
"""

# ----

import numpy
import pytest
import torch

from behgan.checkpoint import Checkpoint, write_checkpoint
from behgan.exceptions import ClassOutOfRange, FingerprintMismatch, GeneratorError, ModelNotLoaded
from behgan.gen import (
    Generator,
    GeneratorConfig,
    GlyphSynthesizer,
    NoiseVector,
    generate,
    load_generator_config,
    make_conditioning,
    receptive_field_overlap,
)
from behgan.vocab import CharVocabulary, map_word

# ----


@pytest.fixture
def generator(small_generator_config):
    torch.manual_seed(0)
    return Generator(small_generator_config).eval()


def test_default_config_from_file():
    config = load_generator_config(n_classes=5)
    assert config == GeneratorConfig(n_classes=5)
    assert config.layer_plan() == [("conv", 3), ("up", 2), ("conv", 3), ("up", 2), ("conv", 3)]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"char_base_width": 3},
        {"channels": (16, 8)},
        {"kernel_sizes": (3, 2)},
        {"d_z": 0},
    ],
)
def test_invalid_config(kwargs):
    with pytest.raises(GeneratorError):
        GeneratorConfig(n_classes=5, **kwargs)


@pytest.mark.parametrize(
    "kernels, output_kernel, overlap",
    [((3, 3), 3, 7), ((1, 1), 1, 0), ((1, 1), 3, 1), ((3, 1), 1, 4), ((5, 5), 5, 14)],
)
def test_receptive_field_overlap(kernels, output_kernel, overlap):
    config = GeneratorConfig(n_classes=2, kernel_sizes=kernels, output_kernel=output_kernel)
    assert receptive_field_overlap(config) == overlap


@pytest.mark.parametrize("n_chars", range(1, 9))
def test_width_law(generator, latin_vocab, n_chars):
    word = map_word("klmnpklm"[:n_chars], latin_vocab)
    img = generate(word, NoiseVector.sample(8, seed=n_chars), generator)
    assert img.pixels.shape == (32, 16 * n_chars)
    assert img.pixels.dtype == numpy.uint8


def test_output_is_bounded(generator):
    out = generator(torch.tensor([[0, 1, 2]]), torch.randn(1, 8) * 50.0)
    assert float(out.min()) >= -1.0
    assert float(out.max()) <= 1.0


def test_generation_is_deterministic(generator, latin_vocab):
    word = map_word("kln", latin_vocab)
    z = NoiseVector.sample(8, seed=11)
    a = generate(word, z, generator)
    b = generate(word, NoiseVector.sample(8, seed=11), generator)
    numpy.testing.assert_array_equal(a.pixels, b.pixels)


def test_generate_restores_training_mode(small_generator_config, latin_vocab):
    model = Generator(small_generator_config).train()
    generate(map_word("k", latin_vocab), NoiseVector.sample(8, seed=0), model)
    assert model.training


def test_zero_noise(generator, latin_vocab):
    word = map_word("pk", latin_vocab)
    cond = make_conditioning(word, NoiseVector.zeros(8), generator)
    assert numpy.count_nonzero(cond.per_char) == 0
    img = generate(word, NoiseVector.zeros(8), generator)
    assert img.pixels.shape == (32, 32)


def test_conditioning_layout(generator, latin_vocab):
    word = map_word("klm", latin_vocab)
    cond = make_conditioning(word, NoiseVector.sample(8, seed=1), generator)
    assert cond.n_chars == 3
    assert cond.per_char.shape == (3, 8)
    assert cond.layout.shape == (3, 4, 8, 16)
    assert cond.class_ids == (0, 1, 2)


def _locality(config, changed_slot, n_chars=4):
    torch.manual_seed(0)
    model = Generator(config).eval()
    class_ids = torch.tensor([[0, 1, 2, 3][:n_chars]])
    with torch.no_grad():
        cond = model.condition(class_ids, torch.randn(1, config.d_z))
        base = model.decode(cond, class_ids)
        cond[0, changed_slot] = 0.0
        changed = model.decode(cond, class_ids)
    columns = (base != changed).any(dim=2).flatten().nonzero().flatten().tolist()
    return columns


def test_character_locality_default_plan():
    config = GeneratorConfig(n_classes=5, d_z=8, channels=(16, 8, 8))
    overlap = receptive_field_overlap(config)
    columns = _locality(config, changed_slot=1)
    assert columns
    assert min(columns) >= 16 - overlap
    assert max(columns) < 32 + overlap


def test_character_locality_pointwise_plan():
    config = GeneratorConfig(n_classes=5, d_z=8, channels=(16, 8, 8), kernel_sizes=(1, 1), output_kernel=1)
    columns = _locality(config, changed_slot=2)
    assert columns
    assert min(columns) >= 32
    assert max(columns) < 48


def test_class_out_of_range(generator):
    vocab = CharVocabulary(glyphs=tuple("abcdefg"), keys=tuple("abcdefg"))
    with pytest.raises(ClassOutOfRange):
        generate(map_word("g", vocab), NoiseVector.sample(8, seed=0), generator)


def test_model_not_loaded(latin_vocab):
    word = map_word("k", latin_vocab)
    with pytest.raises(ModelNotLoaded):
        generate(word, NoiseVector.sample(8, seed=0), None)
    with pytest.raises(ModelNotLoaded):
        GlyphSynthesizer(latin_vocab).generate_text("k", seed=0)


def _archive(path, model, vocab):
    ckpt = Checkpoint(
        epoch=3,
        generator=model.state_dict(),
        critic={},
        recognizer={},
        optimizers={},
        configs={"generator": model.config.to_dict()},
        vocab={"glyphs": list(vocab.glyphs), "keys": list(vocab.keys)},
    )
    return write_checkpoint(ckpt, path)


def test_synthesizer_from_checkpoint(tmp_path, generator, latin_vocab):
    _archive(tmp_path / "ckpt_epoch_3.pt", generator, latin_vocab)
    synth = GlyphSynthesizer(latin_vocab).load(tmp_path / "ckpt_epoch_3")
    img = synth.generate_text("klm", seed=7)
    expected = generate(map_word("klm", latin_vocab), NoiseVector.sample(8, seed=7), generator)
    numpy.testing.assert_array_equal(img.pixels, expected.pixels)
    batch = synth.generate_batch([map_word("k", latin_vocab), map_word("lm", latin_vocab)], seeds=[1, 2])
    assert [b.width for b in batch] == [16, 32]


def test_synthesizer_vocabulary_mismatch(tmp_path, generator, latin_vocab):
    _archive(tmp_path / "ckpt_epoch_3.pt", generator, latin_vocab)
    other = CharVocabulary(glyphs=("p", "n", "m", "l", "k"), keys=("p", "n", "m", "l", "k"))
    with pytest.raises(FingerprintMismatch):
        GlyphSynthesizer(other).load(tmp_path / "ckpt_epoch_3.pt")
