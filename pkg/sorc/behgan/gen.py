"""
Module
------

    gen.py

Description
-----------

    This module contains the character-conditional generator. Each
    character of a word is conditioned on its class embedding (a
    learned mask) multiplied by one noise vector shared by the whole
    word; the per-character latent columns are concatenated along the
    width and upsampled by convolution stages whose overlapping
    receptive fields blend adjacent characters. An n-character word
    is emitted as a 32 x 16n image.

Classes
-------

    CharConditioning(per_char, layout, class_ids)

        This is the base-class object for the conditioning rows of one
        word.

    ConditionalBatchNorm2d(n_features, n_classes)

        This is a batch normalization layer whose affine parameters
        are selected, per slot column, by the class of the character
        owning that column.

    Generator(config)

        This is the generator network.

    GeneratorConfig(n_classes, ...)

        This is the base-class object for the generator architecture.

    GlyphSynthesizer(vocab)

        This is a facade generating word images from text with a
        generator restored from a checkpoint.

    NoiseVector(values, seed)

        This is the base-class object for one style (noise) vector.

Functions
---------

    generate(word, z, model)

        This function generates the image of a word.

    load_generator_config(n_classes, yaml_file=None)

        This function reads and validates the generator configuration
        record.

    make_conditioning(word, z, model)

        This function computes the conditioning rows of a word.

    receptive_field_overlap(config)

        This function returns the number of output pixels by which a
        character's latent columns influence its neighbor's slot.

Notes
-----

    Locality of the generator holds in evaluation mode only; in
    training mode the batch statistics couple all positions.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import numpy
import torch
import torch.nn.functional as F
from torch import nn

from behgan.checkpoint import read_checkpoint
from behgan.config import parm_path, read_yaml, validate_config
from behgan.dataio.bank import to_glyph
from behgan.dataio.glyph import SLOT_HEIGHT, SLOT_WIDTH, GlyphImage
from behgan.exceptions import ClassOutOfRange, GeneratorError, ModelNotLoaded
from behgan.logger import Logger
from behgan.vocab import CharVocabulary, WordSpec, map_word

# ----

# Define all available module properties.
__all__ = [
    "CharConditioning",
    "ConditionalBatchNorm2d",
    "Generator",
    "GeneratorConfig",
    "GlyphSynthesizer",
    "NoiseVector",
    "generate",
    "load_generator_config",
    "make_conditioning",
    "receptive_field_overlap",
]

# ----

logger = Logger(caller_name=__name__)

# ----


@dataclass(frozen=True)
class NoiseVector:
    """
    Description
    -----------

    This is the base-class object for one style (noise) vector; the
    same vector conditions every character of a word.

    """

    values: numpy.ndarray
    seed: int = None

    def __post_init__(self):
        values = numpy.asarray(self.values, dtype=numpy.float32)
        if values.ndim != 1 or values.size < 1:
            raise GeneratorError(msg=f"A noise vector must be 1-D; received shape {values.shape}. Aborting!!!")
        object.__setattr__(self, "values", values)

    @property
    def d_z(self) -> int:
        return int(self.values.size)

    @classmethod
    def sample(cls, d_z: int, seed: int) -> "NoiseVector":
        """Draws a standard normal vector from the stream `seed`."""

        values = numpy.random.default_rng(seed).standard_normal(d_z).astype(numpy.float32)
        return cls(values=values, seed=seed)

    @classmethod
    def zeros(cls, d_z: int) -> "NoiseVector":
        return cls(values=numpy.zeros(d_z, dtype=numpy.float32))

    def tensor(self) -> torch.Tensor:
        return torch.from_numpy(self.values.copy())


@dataclass(frozen=True)
class CharConditioning:
    """
    Description
    -----------

    This is the base-class object for the conditioning of one word.

    Parameters
    ----------

    per_char: ``numpy.ndarray``

        The (n_chars, d_z) rows; row i is the class embedding of
        character i multiplied by the noise vector.

    layout: ``numpy.ndarray``

        The (n_chars, char_base_width, base_height, channels) spatial
        base grid projected from the rows.

    class_ids: ``Tuple[int]``

        The class identifiers of the characters.

    """

    per_char: numpy.ndarray
    layout: numpy.ndarray
    class_ids: Tuple[int, ...]

    @property
    def n_chars(self) -> int:
        return int(self.per_char.shape[0])


# ----


@dataclass(frozen=True)
class GeneratorConfig:
    """
    Description
    -----------

    This is the base-class object for the generator architecture.

    Parameters
    ----------

    n_classes: ``int``

        The number of character classes.

    d_z: ``int``

        The noise vector dimension.

    char_base_width: ``int``

        The latent columns per character.

    base_height: ``int``

        The latent rows.

    n_upsample_stages: ``int``

        The number of (convolution, x2 upsample) stages.

    channels: ``Tuple[int]``

        The channel schedule; the projection width followed by the
        output width of each stage.

    kernel_sizes: ``Tuple[int]``

        The (odd) convolution kernel size of each stage.

    output_kernel: ``int``

        The (odd) kernel size of the output convolution.

    Raises
    ------

    GeneratorError:

        - raised if the configuration does not map one character onto
          a 16 x 32 slot or if the schedules are inconsistent.

    """

    n_classes: int
    d_z: int = 128
    char_base_width: int = 4
    base_height: int = 8
    n_upsample_stages: int = 2
    channels: Tuple[int, ...] = (256, 128, 64)
    kernel_sizes: Tuple[int, ...] = (3, 3)
    output_kernel: int = 3

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(int(c) for c in self.channels))
        object.__setattr__(self, "kernel_sizes", tuple(int(k) for k in self.kernel_sizes))
        scale = 2**self.n_upsample_stages
        if self.n_classes < 1 or self.d_z < 1:
            raise GeneratorError(msg="The class count and noise dimension must be positive. Aborting!!!")
        if self.char_base_width * scale != SLOT_WIDTH or self.base_height * scale != SLOT_HEIGHT:
            msg = (
                f"The latent grid ({self.base_height} x {self.char_base_width}) upsampled "
                f"x{scale} does not fill a {SLOT_HEIGHT} x {SLOT_WIDTH} slot. Aborting!!!"
            )
            raise GeneratorError(msg=msg)
        if len(self.channels) != self.n_upsample_stages + 1 or len(self.kernel_sizes) != self.n_upsample_stages:
            msg = "The channel and kernel schedules do not match the number of upsample stages. Aborting!!!"
            raise GeneratorError(msg=msg)
        if any(k < 1 or k % 2 == 0 for k in (*self.kernel_sizes, self.output_kernel)):
            raise GeneratorError(msg="Generator kernel sizes must be odd and positive. Aborting!!!")

    def layer_plan(self) -> List[Tuple[str, int]]:
        """The spatial layer sequence: ("conv", kernel) and ("up", factor)."""

        plan = []
        for kernel in self.kernel_sizes:
            plan.extend([("conv", kernel), ("up", 2)])
        plan.append(("conv", self.output_kernel))

        return plan

    def to_dict(self) -> Dict:
        cfg = asdict(self)
        cfg["channels"] = list(self.channels)
        cfg["kernel_sizes"] = list(self.kernel_sizes)
        return cfg


@validate_config
def __generator_config__(yaml_file: str = None) -> Tuple[str, Dict]:
    if yaml_file is None:
        yaml_file = str(parm_path("config.yaml"))

    return (parm_path("schema", "generator.schema.yaml"), read_yaml(yaml_file=yaml_file).get("generator"))


def load_generator_config(n_classes: int, yaml_file: str = None) -> GeneratorConfig:
    """
    Description
    -----------

    This function reads the `generator` section of a configuration
    file, validates it and builds the GeneratorConfig object.

    """

    return GeneratorConfig(n_classes=n_classes, **__generator_config__(yaml_file=yaml_file))


def receptive_field_overlap(config: GeneratorConfig) -> int:
    """
    Description
    -----------

    This function traces the column interval influenced by one
    character's latent columns through the layer plan and returns the
    number of output pixels by which it extends past the character's
    slot.

    Parameters
    ----------

    config: ``GeneratorConfig``

        A Python GeneratorConfig object.

    Returns
    -------

    overlap: ``int``

        The overlap; output pixels.

    """

    (start, stop) = (0, config.char_base_width)
    for kind, value in config.layer_plan():
        if kind == "conv":
            (start, stop) = (start - value // 2, stop + value // 2)
        else:
            (start, stop) = (start * value, stop * value)

    return stop - SLOT_WIDTH


# ----


class ConditionalBatchNorm2d(nn.Module):
    """
    Description
    -----------

    This is a batch normalization layer whose per-channel scale and
    shift are looked up, for each column, from the class of the
    character owning that column.

    """

    def __init__(self, n_features: int, n_classes: int):
        super().__init__()
        self.norm = nn.BatchNorm2d(n_features, affine=False)
        self.gamma = nn.Embedding(n_classes, n_features)
        self.beta = nn.Embedding(n_classes, n_features)
        nn.init.ones_(self.gamma.weight)
        nn.init.zeros_(self.beta.weight)

    def forward(self, x: torch.Tensor, class_ids: torch.Tensor) -> torch.Tensor:
        cols = class_ids.repeat_interleave(x.shape[-1] // class_ids.shape[1], dim=1)
        gamma = self.gamma(cols).permute(0, 2, 1).unsqueeze(2)
        beta = self.beta(cols).permute(0, 2, 1).unsqueeze(2)

        return self.norm(x) * gamma + beta


class Generator(nn.Module):
    """
    Description
    -----------

    This is the generator network; its output is bounded to [-1, 1]
    with white = +1.

    Parameters
    ----------

    config: ``GeneratorConfig``

        A Python GeneratorConfig object.

    """

    def __init__(self, config: GeneratorConfig):
        super().__init__()
        self.config = config
        self.embedding = nn.Embedding(config.n_classes, config.d_z)
        self.project = nn.Linear(
            config.d_z, config.channels[0] * config.base_height * config.char_base_width
        )
        self.convs = nn.ModuleList()
        self.norms = nn.ModuleList()
        for idx, kernel in enumerate(config.kernel_sizes):
            (c_in, c_out) = (config.channels[idx], config.channels[idx + 1])
            self.convs.append(nn.Conv2d(c_in, c_out, kernel, padding=kernel // 2))
            self.norms.append(ConditionalBatchNorm2d(c_out, config.n_classes))
        self.output = nn.Conv2d(
            config.channels[-1], 1, config.output_kernel, padding=config.output_kernel // 2
        )

    def check_classes(self, class_ids: torch.Tensor) -> None:
        if class_ids.numel() == 0 or int(class_ids.min()) < 0 or int(class_ids.max()) >= self.config.n_classes:
            msg = (
                f"Class identifiers must lie in [0, {self.config.n_classes - 1}]; "
                f"received {class_ids.tolist()}. Aborting!!!"
            )
            raise ClassOutOfRange(msg=msg)

    def condition(self, class_ids: torch.Tensor, z: torch.Tensor) -> torch.Tensor:
        """(B, n) class identifiers and (B, d_z) noise to (B, n, d_z) rows."""

        self.check_classes(class_ids)
        return self.embedding(class_ids) * z.unsqueeze(1)

    def base_grid(self, cond: torch.Tensor) -> torch.Tensor:
        """(B, n, d_z) rows to the (B, C0, base_height, n * char_base_width) grid."""

        cfg = self.config
        (batch, n_chars, _) = cond.shape
        x = self.project(cond).view(batch, n_chars, cfg.channels[0], cfg.base_height, cfg.char_base_width)

        return x.permute(0, 2, 3, 1, 4).reshape(
            batch, cfg.channels[0], cfg.base_height, n_chars * cfg.char_base_width
        )

    def decode(self, cond: torch.Tensor, class_ids: torch.Tensor) -> torch.Tensor:
        x = self.base_grid(cond)
        for conv, norm in zip(self.convs, self.norms):
            x = F.relu(norm(conv(x), class_ids))
            x = F.interpolate(x, scale_factor=2, mode="nearest")

        return torch.tanh(self.output(x))

    def forward(self, class_ids: torch.Tensor, z: torch.Tensor) -> torch.Tensor:
        return self.decode(self.condition(class_ids, z), class_ids)


# ----


def make_conditioning(word: WordSpec, z: NoiseVector, model: Generator) -> CharConditioning:
    """
    Description
    -----------

    This function computes the conditioning rows of a word and their
    spatial base grid.

    Parameters
    ----------

    word: ``WordSpec``

        A Python WordSpec object.

    z: ``NoiseVector``

        A Python NoiseVector object.

    model: ``Generator``

        A Python Generator object.

    Returns
    -------

    cond: ``CharConditioning``

        A Python CharConditioning object.

    Raises
    ------

    ModelNotLoaded:

        - raised if no model is specified.

    ClassOutOfRange:

        - raised if a class identifier exceeds the model vocabulary.

    """

    if model is None:
        raise ModelNotLoaded(msg="No generator weights are loaded. Aborting!!!")
    cfg = model.config
    class_ids = torch.tensor([word.class_ids], dtype=torch.long)
    with torch.no_grad():
        rows = model.condition(class_ids, z.tensor().unsqueeze(0))
        grid = model.base_grid(rows)
    layout = grid[0].view(cfg.channels[0], cfg.base_height, word.length, cfg.char_base_width)

    return CharConditioning(
        per_char=rows[0].numpy(),
        layout=layout.permute(2, 3, 1, 0).numpy(),
        class_ids=tuple(word.class_ids),
    )


def generate(word: WordSpec, z: NoiseVector, model: Generator) -> GlyphImage:
    """
    Description
    -----------

    This function generates the 32 x 16n image of an n-character word;
    the model is evaluated in evaluation mode and restored to its
    previous mode afterwards.

    Raises
    ------

    ModelNotLoaded:

        - raised if no model is specified.

    ClassOutOfRange:

        - raised if a class identifier exceeds the model vocabulary.

    """

    if model is None:
        raise ModelNotLoaded(msg="No generator weights are loaded. Aborting!!!")
    was_training = model.training
    model.eval()
    try:
        with torch.no_grad():
            out = model(torch.tensor([word.class_ids], dtype=torch.long), z.tensor().unsqueeze(0))
    finally:
        model.train(was_training)

    return to_glyph(tensor=out[0], n_chars=word.length)


# ----


class GlyphSynthesizer:
    """
    Description
    -----------

    This is a facade generating word images from text with a
    generator restored from a checkpoint.

    Parameters
    ----------

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    """

    def __init__(self, vocab: CharVocabulary):
        self.logger = Logger(caller_name=f"{__name__}.{self.__class__.__name__}")
        self.vocab = vocab
        self.model = None

    def load(self, ckpt_path: Union[str, Path]) -> "GlyphSynthesizer":
        """Restores the generator weights; the vocabulary fingerprint must match."""

        ckpt = read_checkpoint(path=ckpt_path, vocab=self.vocab)
        self.model = Generator(config=GeneratorConfig(**ckpt.configs["generator"]))
        self.model.load_state_dict(ckpt.generator)
        self.model.eval()
        self.logger.info(msg=f"Loaded generator weights from {ckpt_path} (epoch {ckpt.epoch}).")

        return self

    def generate(self, word: WordSpec, z: NoiseVector) -> GlyphImage:
        return generate(word=word, z=z, model=self.model)

    def generate_text(self, text: str, seed: int) -> GlyphImage:
        """Generates a word from glyph or key text with the noise stream `seed`."""

        if self.model is None:
            raise ModelNotLoaded(msg="No generator weights are loaded. Aborting!!!")
        word = map_word(text=text, vocab=self.vocab)
        z = NoiseVector.sample(d_z=self.model.config.d_z, seed=seed)

        return self.generate(word=word, z=z)

    def generate_batch(self, words: Sequence[WordSpec], seeds: Sequence[int]) -> List[GlyphImage]:
        return [self.generate_text(text=word.text, seed=seed) for word, seed in zip(words, seeds)]
