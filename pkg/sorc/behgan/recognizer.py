"""
Module
------

    recognizer.py

Description
-----------

    This module contains the sequence recognizer which maps a word
    image to per-frame character scores, the CTC loss comparing them
    with the intended text, greedy decoding, and the standalone
    training and word-accuracy reporting of the recognizer on real
    labelled images.

Classes
-------

    LogitsSequence(frames)

        This is the base-class object for the per-frame class scores
        of one image.

    Recognizer(config, n_classes)

        This is the recognizer network.

    RecognizerConfig(channels, frames_per_slot)

        This is the base-class object for the recognizer
        architecture.

Functions
---------

    ctc_batch_loss(log_probs, targets, blank)

        This function returns the mean CTC loss of a same-length
        batch.

    ctc_loss(logits, target)

        This function returns the CTC loss of one image.

    decode_greedy(logits, vocab)

        This function decodes per-frame scores to a key string.

    load_recognizer(ckpt_path, vocab)

        This function restores the recognizer of a checkpoint.

    load_recognizer_config(yaml_file=None)

        This function reads and validates the recognizer configuration
        record.

    recognize(img, model)

        This function returns the per-frame scores of one image.

    train_recognizer(bank, vocab, config=None, ...)

        This function trains a recognizer on real labelled images.

    word_accuracy(model, bank, vocab)

        This function returns the fraction of images whose greedy
        decoding equals their label.

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
from torch.utils.data import DataLoader

from behgan.checkpoint import read_checkpoint
from behgan.config import parm_path, read_yaml, validate_config
from behgan.critic import check_geometry
from behgan.dataio.bank import LengthBucketSampler, WordImageBank, to_tensor
from behgan.dataio.glyph import GlyphImage
from behgan.exceptions import ModelNotLoaded, RecognizerError, TargetTooLong
from behgan.logger import Logger
from behgan.vocab import CharVocabulary, WordSpec

# ----

# Define all available module properties.
__all__ = [
    "LogitsSequence",
    "Recognizer",
    "RecognizerConfig",
    "ctc_batch_loss",
    "ctc_loss",
    "decode_greedy",
    "load_recognizer",
    "load_recognizer_config",
    "min_frames",
    "recognize",
    "train_recognizer",
    "word_accuracy",
]

# ----

logger = Logger(caller_name=__name__)

# The width pooling of each stage; a 16-pixel slot leaves 4 columns.
WIDTH_POOLS = (2, 2, 1)

# ----


@dataclass(frozen=True)
class RecognizerConfig:
    """
    Description
    -----------

    This is the base-class object for the recognizer architecture.

    Parameters
    ----------

    channels: ``Tuple[int]``

        The output width of each of the three convolution stages; the
        last entry is the penultimate feature width.

    frames_per_slot: ``int``

        The number of output frames per 16-pixel slot; at least 2.

    """

    channels: Tuple[int, ...] = (32, 64, 128)
    frames_per_slot: int = 4

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(int(c) for c in self.channels))
        if len(self.channels) != len(WIDTH_POOLS):
            msg = f"The recognizer has {len(WIDTH_POOLS)} stages; received {len(self.channels)} channel widths. Aborting!!!"
            raise RecognizerError(msg=msg)
        if self.frames_per_slot < 2:
            msg = f"At least two frames per slot are required; received {self.frames_per_slot}. Aborting!!!"
            raise RecognizerError(msg=msg)

    @property
    def feature_dim(self) -> int:
        return self.channels[-1]

    def to_dict(self) -> Dict:
        cfg = asdict(self)
        cfg["channels"] = list(self.channels)
        return cfg


@validate_config
def __recognizer_config__(yaml_file: str = None) -> Tuple[str, Dict]:
    if yaml_file is None:
        yaml_file = str(parm_path("config.yaml"))

    return (parm_path("schema", "recognizer.schema.yaml"), read_yaml(yaml_file=yaml_file).get("recognizer"))


def load_recognizer_config(yaml_file: str = None) -> RecognizerConfig:
    return RecognizerConfig(**__recognizer_config__(yaml_file=yaml_file))


@dataclass(frozen=True)
class LogitsSequence:
    """
    Description
    -----------

    This is the base-class object for the (T, N + 1) per-frame class
    scores of one image; the last column is the blank class.

    """

    frames: numpy.ndarray

    def __post_init__(self):
        frames = numpy.asarray(self.frames, dtype=numpy.float64)
        if frames.ndim != 2 or frames.shape[0] < 1 or frames.shape[1] < 2:
            raise RecognizerError(msg=f"Invalid logits shape {frames.shape}. Aborting!!!")
        object.__setattr__(self, "frames", frames)

    @property
    def n_frames(self) -> int:
        return int(self.frames.shape[0])

    def probabilities(self) -> numpy.ndarray:
        shifted = self.frames - self.frames.max(axis=1, keepdims=True)
        expd = numpy.exp(shifted)
        return expd / expd.sum(axis=1, keepdims=True)


# ----


class Recognizer(nn.Module):
    """
    Description
    -----------

    This is the recognizer network: three convolution stages, average
    pooling to one row of frames_per_slot frames per slot, and a
    per-frame linear classifier over the N + 1 classes.

    """

    def __init__(self, config: RecognizerConfig, n_classes: int):
        super().__init__()
        self.config = config
        self.n_classes = n_classes
        layers = []
        c_in = 1
        for c_out, width_pool in zip(config.channels, WIDTH_POOLS):
            layers.extend(
                [
                    nn.Conv2d(c_in, c_out, 3, padding=1),
                    nn.BatchNorm2d(c_out),
                    nn.ReLU(),
                    nn.MaxPool2d((2, width_pool)),
                ]
            )
            c_in = c_out
        self.features = nn.Sequential(*layers)
        self.classifier = nn.Linear(c_in, n_classes + 1)

    def frame_features(self, x: torch.Tensor) -> torch.Tensor:
        """(B, 1, 32, 16n) images to (B, T, C) frame features."""

        n_slots = check_geometry(height=x.shape[-2], width=x.shape[-1])
        fmap = F.adaptive_avg_pool2d(self.features(x), (1, self.config.frames_per_slot * n_slots))

        return fmap.squeeze(2).permute(0, 2, 1)

    def embed(self, x: torch.Tensor) -> torch.Tensor:
        """The penultimate features averaged over frames, (B, C)."""

        return self.frame_features(x).mean(dim=1)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        """(B, T, N + 1) frame logits."""

        return self.classifier(self.frame_features(x))


# ----


def min_frames(class_ids: Sequence[int]) -> int:
    """The fewest frames admitting a CTC alignment of `class_ids`."""

    repeats = sum(1 for a, b in zip(class_ids, class_ids[1:]) if a == b)
    return len(class_ids) + repeats


def ctc_batch_loss(log_probs: torch.Tensor, targets: torch.Tensor, blank: int) -> torch.Tensor:
    """
    Description
    -----------

    This function returns the batch mean of the per-sample CTC
    negative log-likelihoods.

    Parameters
    ----------

    log_probs: ``torch.Tensor``

        The (B, T, N + 1) log-softmax frame scores.

    targets: ``torch.Tensor``

        The (B, L) class identifiers; one target length per batch.

    blank: ``int``

        The blank class identifier.

    Returns
    -------

    loss: ``torch.Tensor``

        The scalar loss.

    Raises
    ------

    TargetTooLong:

        - raised if a target admits no alignment in T frames.

    """

    (batch, n_frames, _) = log_probs.shape
    for row in targets.tolist():
        if min_frames(row) > n_frames:
            msg = f"Target {row} admits no alignment in {n_frames} frames. Aborting!!!"
            raise TargetTooLong(msg=msg)
    losses = F.ctc_loss(
        log_probs.permute(1, 0, 2),
        targets,
        torch.full((batch,), n_frames, dtype=torch.long),
        torch.full((batch,), targets.shape[1], dtype=torch.long),
        blank=blank,
        reduction="none",
    )

    return losses.mean()


def ctc_loss(logits: Union[LogitsSequence, torch.Tensor], target: WordSpec) -> torch.Tensor:
    """
    Description
    -----------

    This function returns the negative log of the total probability
    of all blank-augmented alignments of `target` under the
    per-frame scores; a (T, N + 1) tensor keeps the autograd graph.

    """

    if isinstance(logits, LogitsSequence):
        logits = torch.from_numpy(logits.frames)
    log_probs = F.log_softmax(logits, dim=-1).unsqueeze(0)
    targets = torch.tensor([target.class_ids], dtype=torch.long)

    return ctc_batch_loss(log_probs=log_probs, targets=targets, blank=logits.shape[-1] - 1)


def _run(model: Recognizer, x: torch.Tensor) -> torch.Tensor:
    was_training = model.training
    model.eval()
    try:
        with torch.no_grad():
            return model(x)
    finally:
        model.train(was_training)


def recognize(img: GlyphImage, model: Recognizer) -> LogitsSequence:
    """
    Description
    -----------

    This function returns the frames_per_slot x n_chars frame scores
    of one image.

    Raises
    ------

    BadGeometry:

        - raised if the image is not on the slot grid.

    ModelNotLoaded:

        - raised if no model is specified.

    """

    check_geometry(height=img.height, width=img.width)
    if model is None:
        raise ModelNotLoaded(msg="No recognizer weights are loaded. Aborting!!!")

    return LogitsSequence(frames=_run(model, to_tensor(img).unsqueeze(0))[0].numpy())


def decode_greedy(logits: Union[LogitsSequence, numpy.ndarray], vocab: CharVocabulary) -> str:
    """
    Description
    -----------

    This function takes the argmax class of every frame, collapses
    repeats and strips blanks.

    """

    frames = logits.frames if isinstance(logits, LogitsSequence) else numpy.asarray(logits)
    best = frames.argmax(axis=-1).tolist()
    keys = []
    prev = None
    for cls in best:
        if cls != prev and cls != vocab.blank_id:
            keys.append(vocab.keys[cls])
        prev = cls

    return "".join(keys)


# ----


def load_recognizer(ckpt_path: Union[str, Path], vocab: CharVocabulary) -> Recognizer:
    """Restores the recognizer weights of a checkpoint in evaluation mode."""

    ckpt = read_checkpoint(path=ckpt_path, vocab=vocab)
    model = Recognizer(config=RecognizerConfig(**ckpt.configs["recognizer"]), n_classes=vocab.n_classes)
    model.load_state_dict(ckpt.recognizer)

    return model.eval()


def word_accuracy(model: Recognizer, bank: WordImageBank, vocab: CharVocabulary, batch_size: int = 64) -> float:
    """
    Description
    -----------

    This function returns the fraction of images whose greedy decoding
    equals their label.

    """

    if len(bank) == 0:
        raise RecognizerError(msg="Word accuracy requires a non-empty image bank. Aborting!!!")
    sampler = LengthBucketSampler(bank=bank, batch_size=batch_size, seed=0)
    correct = 0
    for images, labels in DataLoader(bank, batch_sampler=sampler):
        frames = _run(model, images).numpy()
        for row, label in zip(frames, labels.tolist()):
            correct += decode_greedy(logits=row, vocab=vocab) == "".join(vocab.keys[c] for c in label)

    return correct / len(bank)


def train_recognizer(
    bank: WordImageBank,
    vocab: CharVocabulary,
    config: RecognizerConfig = None,
    epochs: int = 10,
    batch_size: int = 32,
    lr: float = 1.0e-3,
    seed: int = 0,
    eval_bank: WordImageBank = None,
) -> Tuple[Recognizer, List[Dict]]:
    """
    Description
    -----------

    This function trains a recognizer alone on real labelled images
    with the Adam optimizer and the CTC loss.

    Parameters
    ----------

    bank: ``WordImageBank``

        A Python WordImageBank object of real labelled images.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    Keywords
    --------

    config: ``RecognizerConfig``, optional

        A Python RecognizerConfig object; the defaults if NoneType.

    epochs, batch_size, lr, seed: optional

        The optimization settings.

    eval_bank: ``WordImageBank``, optional

        A held-out bank whose word accuracy is reported per epoch.

    Returns
    -------

    model: ``Recognizer``

        The trained Recognizer object.

    history: ``List[Dict]``

        One record per epoch with the mean loss and, if an evaluation
        bank is specified, the held-out word accuracy.

    """

    torch.manual_seed(seed)
    model = Recognizer(config=config or RecognizerConfig(), n_classes=vocab.n_classes)
    optimizer = torch.optim.Adam(model.parameters(), lr=lr)
    sampler = LengthBucketSampler(bank=bank, batch_size=batch_size, seed=seed)
    history = []
    for epoch in range(1, epochs + 1):
        sampler.set_epoch(epoch)
        model.train()
        losses = []
        for images, labels in DataLoader(bank, batch_sampler=sampler):
            loss = ctc_batch_loss(
                log_probs=F.log_softmax(model(images), dim=-1), targets=labels, blank=vocab.blank_id
            )
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            losses.append(float(loss))
        record = {"epoch": epoch, "loss": float(numpy.mean(losses))}
        if eval_bank is not None:
            record["accuracy"] = word_accuracy(model=model, bank=eval_bank, vocab=vocab)
        logger.info(msg=f"Recognizer epoch {epoch}: " + ", ".join(f"{k} = {v}" for k, v in record.items()))
        history.append(record)
    model.eval()

    return (model, history)
