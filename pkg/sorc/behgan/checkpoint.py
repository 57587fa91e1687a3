"""
Module
------

    checkpoint.py

Description
-----------

    This module contains the single-file checkpoint archive shared by
    the generator, critic, recognizer and trainer.

Classes
-------

    Checkpoint(epoch, ...)

        This is the base-class object for one training checkpoint.

Functions
---------

    checkpoint_name(epoch)

        This function returns the file name of the checkpoint for an
        epoch.

    read_checkpoint(path, vocab=None)

        This function reads a checkpoint archive and, optionally,
        verifies its vocabulary fingerprint.

    write_checkpoint(ckpt, path)

        This function writes a checkpoint archive.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import hashlib
import json
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Union

import torch

from behgan.exceptions import FingerprintMismatch, TrainerError
from behgan.logger import Logger
from behgan.vocab import CharVocabulary

# ----

# Define all available module properties.
__all__ = ["Checkpoint", "checkpoint_name", "config_fingerprint", "read_checkpoint", "write_checkpoint"]

# ----

logger = Logger(caller_name=__name__)

CHECKPOINT_PATTERN = re.compile(r"^ckpt_epoch_(\d+)(\.pt)?$")

# ----


def checkpoint_name(epoch: int) -> str:
    """Returns `ckpt_epoch_<N>.pt`."""

    return f"ckpt_epoch_{epoch}.pt"


def config_fingerprint(config: Dict) -> str:
    """A sha256 digest of a configuration record."""

    return hashlib.sha256(json.dumps(config, sort_keys=True).encode("utf-8")).hexdigest()


# ----


@dataclass
class Checkpoint:
    """
    Description
    -----------

    This is the base-class object for one training checkpoint; the
    model and optimizer states are torch state dictionaries and the
    configuration records are plain dictionaries.

    """

    epoch: int
    generator: Dict
    critic: Dict
    recognizer: Dict
    optimizers: Dict[str, Dict]
    configs: Dict[str, Dict]
    vocab: Dict[str, List[str]]
    losses: List[List[float]] = field(default_factory=list)
    step: int = 0

    @property
    def vocab_fingerprint(self) -> str:
        return CharVocabulary(glyphs=self.vocab["glyphs"], keys=self.vocab["keys"]).fingerprint

    @property
    def train_fingerprint(self) -> str:
        return config_fingerprint(self.configs.get("train", {}))


def write_checkpoint(ckpt: Checkpoint, path: Union[str, Path]) -> Path:
    """
    Description
    -----------

    This function writes a checkpoint archive with `torch.save`;
    NoneType model states are stored as empty dictionaries.

    Parameters
    ----------

    ckpt: ``Checkpoint``

        A Python Checkpoint object.

    path: ``Union[str, Path]``

        The archive path.

    Returns
    -------

    path: ``Path``

        The archive path.

    """

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = asdict(ckpt)
    payload["fingerprints"] = {"vocab": ckpt.vocab_fingerprint, "train": ckpt.train_fingerprint}
    torch.save(payload, path)
    logger.info(msg=f"Wrote checkpoint {path} (epoch {ckpt.epoch}).")

    return path


def read_checkpoint(path: Union[str, Path], vocab: CharVocabulary = None) -> Checkpoint:
    """
    Description
    -----------

    This function reads a checkpoint archive; a missing `.pt` suffix
    is appended when the named file does not exist.

    Parameters
    ----------

    path: ``Union[str, Path]``

        The archive path.

    Keywords
    --------

    vocab: ``CharVocabulary``, optional

        A Python CharVocabulary object; if specified, its fingerprint
        must match the archived one.

    Returns
    -------

    ckpt: ``Checkpoint``

        A Python Checkpoint object.

    Raises
    ------

    TrainerError:

        - raised if the archive cannot be read.

    FingerprintMismatch:

        - raised if the vocabulary fingerprints differ.

    """

    path = Path(path)
    if not path.is_file() and path.suffix != ".pt":
        path = path.with_name(path.name + ".pt")
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except (OSError, RuntimeError) as errmsg:
        msg = f"Reading checkpoint {path} failed with error {errmsg}. Aborting!!!"
        raise TrainerError(msg=msg) from errmsg
    fingerprints = payload.pop("fingerprints", {})
    ckpt = Checkpoint(**payload)
    if vocab is not None and vocab.fingerprint != fingerprints.get("vocab", ckpt.vocab_fingerprint):
        msg = f"The vocabulary of checkpoint {path} does not match the active vocabulary. Aborting!!!"
        raise FingerprintMismatch(msg=msg)

    return ckpt
