"""
Module
------

    loop.py

Description
-----------

    This module contains the adversarial training loop: each step
    updates the critic on real and generated images, the recognizer
    on real images only, and the generator on the adversarial term
    plus gamma times the recognition (CTC) term.

Classes
-------

    LossRecord(step, critic, recognizer, adversarial, recognition,
               generator)

        This is the base-class object for the losses of one step.

    TrainConfig(gamma, batch_size, epochs, ...)

        This is the base-class object for the optimization settings.

    Trainer(vocab, train_config, ...)

        This is the base-class object for the generator, critic and
        recognizer under training.

Functions
---------

    load_train_config(yaml_file=None, **overrides)

        This function reads and validates the training configuration
        record.

    read_loss_csv(path)

        This function reads a loss curve file.

    write_loss_csv(records, path)

        This function writes a loss curve file.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import csv
import math
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy
import torch
import torch.nn.functional as F
from torch.utils.data import DataLoader

from behgan.checkpoint import Checkpoint, checkpoint_name, config_fingerprint, read_checkpoint, write_checkpoint
from behgan.config import parm_path, read_yaml, validate_config
from behgan.critic import Critic, CriticConfig, critic_loss, generator_adversarial_loss
from behgan.dataio.bank import LengthBucketSampler, WordImageBank
from behgan.exceptions import EmptyBatch, FingerprintMismatch, NumericalDivergence, TrainerError
from behgan.gen import Generator, GeneratorConfig
from behgan.logger import Logger
from behgan.recognizer import Recognizer, RecognizerConfig, ctc_batch_loss
from behgan.vocab import CharVocabulary

# ----

# Define all available module properties.
__all__ = ["LOSS_COLUMNS", "LossRecord", "TrainConfig", "Trainer", "load_train_config", "read_loss_csv", "write_loss_csv"]

# ----

LOSS_COLUMNS = ["step", "L_D", "L_R", "L_G"]
ADAM_BETAS = (0.5, 0.999)

# ----


@dataclass(frozen=True)
class TrainConfig:
    """
    Description
    -----------

    This is the base-class object for the optimization settings.

    Parameters
    ----------

    gamma: ``float``

        The weight of the recognition term in the generator loss.

    batch_size: ``int``

    epochs: ``int``

    lr_g, lr_d, lr_r: ``float``

        The Adam learning rates of the generator, critic and
        recognizer.

    seed: ``int``

        The seed of the weight initialization, the batch order and
        the noise draws.

    checkpoint_every: ``int``

        The checkpoint cadence; epochs. The final epoch is always
        saved.

    steps_per_generator_update: ``int``

        The critic/recognizer steps per generator update.

    """

    gamma: float = 1.0
    batch_size: int = 16
    epochs: int = 30
    lr_g: float = 2.0e-4
    lr_d: float = 2.0e-4
    lr_r: float = 1.0e-4
    seed: int = 0
    checkpoint_every: int = 5
    steps_per_generator_update: int = 1

    def __post_init__(self):
        if self.gamma < 0.0:
            raise TrainerError(msg=f"gamma must be non-negative; received {self.gamma}. Aborting!!!")
        if min(self.lr_g, self.lr_d, self.lr_r) <= 0.0:
            raise TrainerError(msg="Learning rates must be positive. Aborting!!!")
        if min(self.batch_size, self.epochs, self.checkpoint_every, self.steps_per_generator_update) < 1:
            raise TrainerError(msg=f"Invalid training configuration {asdict(self)}. Aborting!!!")

    @property
    def fingerprint(self) -> str:
        return config_fingerprint(asdict(self))


@validate_config
def __train_config__(yaml_file: str = None) -> Tuple[str, Dict]:
    if yaml_file is None:
        yaml_file = str(parm_path("config.yaml"))

    return (parm_path("schema", "train.schema.yaml"), read_yaml(yaml_file=yaml_file).get("train"))


def load_train_config(yaml_file: str = None, **overrides) -> TrainConfig:
    """
    Description
    -----------

    This function reads the `train` section of a configuration file,
    validates it against the training schema and applies the
    non-NoneType keyword overrides.

    """

    cfg = dict(__train_config__(yaml_file=yaml_file))
    cfg.update({key: value for key, value in overrides.items() if value is not None})

    return TrainConfig(**cfg)


@dataclass(frozen=True)
class LossRecord:
    """
    Description
    -----------

    This is the base-class object for the losses of one step;
    `adversarial` and `recognition` are the generator loss components
    and `generator` = `adversarial` + gamma * `recognition`.

    """

    step: int
    critic: float
    recognizer: float
    adversarial: float
    recognition: float
    generator: float

    def row(self) -> List:
        return [self.step, self.adversarial, self.recognition, self.generator]


def write_loss_csv(records: List[LossRecord], path: Union[str, Path]) -> None:
    """Writes the `step,L_D,L_R,L_G` curve."""

    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(LOSS_COLUMNS)
        writer.writerows(record.row() for record in records)


def read_loss_csv(path: Union[str, Path]) -> List[List[float]]:
    with open(path, "r", encoding="utf-8", newline="") as file:
        reader = csv.reader(file)
        if next(reader) != LOSS_COLUMNS:
            raise TrainerError(msg=f"{path} is not a loss curve file. Aborting!!!")
        return [[int(row[0])] + [float(v) for v in row[1:]] for row in reader]


# ----


class Trainer:
    """
    Description
    -----------

    This is the base-class object for the generator, critic and
    recognizer under training.

    Parameters
    ----------

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    train_config: ``TrainConfig``

        A Python TrainConfig object.

    Keywords
    --------

    generator_config: ``GeneratorConfig``, optional

    critic_config: ``CriticConfig``, optional

    recognizer_config: ``RecognizerConfig``, optional

        The architectures; the defaults if NoneType.

    """

    def __init__(
        self,
        vocab: CharVocabulary,
        train_config: TrainConfig,
        generator_config: GeneratorConfig = None,
        critic_config: CriticConfig = None,
        recognizer_config: RecognizerConfig = None,
    ):
        self.logger = Logger(caller_name=f"{__name__}.{self.__class__.__name__}")
        self.vocab = vocab
        self.config = train_config
        torch.manual_seed(train_config.seed)
        self.generator = Generator(config=generator_config or GeneratorConfig(n_classes=vocab.n_classes))
        self.critic = Critic(config=critic_config or CriticConfig())
        self.recognizer = Recognizer(config=recognizer_config or RecognizerConfig(), n_classes=vocab.n_classes)
        if self.generator.config.n_classes != vocab.n_classes:
            raise TrainerError(msg="The generator class count does not match the vocabulary. Aborting!!!")
        self.opt_g = torch.optim.Adam(self.generator.parameters(), lr=train_config.lr_g, betas=ADAM_BETAS)
        self.opt_d = torch.optim.Adam(self.critic.parameters(), lr=train_config.lr_d, betas=ADAM_BETAS)
        self.opt_r = torch.optim.Adam(self.recognizer.parameters(), lr=train_config.lr_r, betas=ADAM_BETAS)
        self.epoch = 0
        self.step = 0
        self.losses: List[LossRecord] = []
        self.recognizer_update_sources: List[str] = []
        self.last_checkpoint = None

    def __check__(self, name: str, value: torch.Tensor) -> None:
        if not math.isfinite(float(value)):
            where = self.last_checkpoint or "none written"
            msg = (
                f"The {name} loss is non-finite at step {self.step}; "
                f"last good checkpoint: {where}. Aborting!!!"
            )
            raise NumericalDivergence(msg=msg)

    def __freeze__(self, frozen: bool) -> None:
        for module in (self.critic, self.recognizer):
            for param in module.parameters():
                param.requires_grad_(not frozen)

    def recognition_loss(self, images: torch.Tensor, class_ids: torch.Tensor) -> torch.Tensor:
        log_probs = F.log_softmax(self.recognizer(images), dim=-1)
        return ctc_batch_loss(log_probs=log_probs, targets=class_ids, blank=self.vocab.blank_id)

    def recognizer_update(self, images: torch.Tensor, class_ids: torch.Tensor, source: str) -> torch.Tensor:
        """
        Description
        -----------

        This method performs one recognizer update; only batches
        tagged `real` are accepted and every accepted tag is recorded.

        Raises
        ------

        TrainerError:

            - raised if the batch is not tagged `real`.

        """

        if source != "real":
            msg = f"The recognizer is trained on real images only; received a {source!r} batch. Aborting!!!"
            raise TrainerError(msg=msg)
        self.recognizer.train()
        loss = self.recognition_loss(images, class_ids)
        self.__check__("recognizer", loss)
        self.opt_r.zero_grad()
        loss.backward()
        self.opt_r.step()
        self.recognizer_update_sources.append(source)

        return loss

    def train_step(
        self, images: torch.Tensor, class_ids: torch.Tensor, z: torch.Tensor, update_generator: bool = True
    ) -> LossRecord:
        """
        Description
        -----------

        This method performs one critic update on (real, generated),
        one recognizer update on the real batch, and, if
        `update_generator` is True, one generator update of
        L_adv + gamma * L_rec with the critic and recognizer frozen
        and the recognizer in evaluation mode.

        Parameters
        ----------

        images: ``torch.Tensor``

            The (B, 1, 32, 16n) real images in [-1, 1].

        class_ids: ``torch.Tensor``

            The (B, n) class identifiers; the intended words of the
            generated batch are the labels of the real batch.

        z: ``torch.Tensor``

            The (B, d_z) noise vectors.

        Returns
        -------

        record: ``LossRecord``

            A Python LossRecord object.

        Raises
        ------

        EmptyBatch:

            - raised if the batch is empty.

        NumericalDivergence:

            - raised if a loss is non-finite.

        """

        if images.shape[0] == 0:
            raise EmptyBatch(msg="Training steps require a non-empty batch. Aborting!!!")
        gamma = self.config.gamma
        self.generator.train()
        self.critic.train()
        fake = self.generator(class_ids, z)

        d_loss = critic_loss(self.critic.pool(self.critic(images)), self.critic.pool(self.critic(fake.detach())))
        self.__check__("critic", d_loss)
        self.opt_d.zero_grad()
        d_loss.backward()
        self.opt_d.step()

        r_loss = self.recognizer_update(images, class_ids, source="real")

        self.__freeze__(True)
        self.recognizer.eval()
        try:
            adv = generator_adversarial_loss(self.critic.pool(self.critic(fake)))
            if gamma > 0.0:
                rec = self.recognition_loss(fake, class_ids)
            else:
                with torch.no_grad():
                    rec = self.recognition_loss(fake.detach(), class_ids)
            g_loss = adv + gamma * rec
            self.__check__("generator", g_loss)
            if update_generator:
                self.opt_g.zero_grad()
                g_loss.backward()
                self.opt_g.step()
        finally:
            self.__freeze__(False)

        return LossRecord(
            step=self.step,
            critic=float(d_loss),
            recognizer=float(r_loss),
            adversarial=float(adv),
            recognition=float(rec),
            generator=float(g_loss),
        )

    def fit(self, bank: WordImageBank, out_dir: Union[str, Path] = None) -> List[LossRecord]:
        """
        Description
        -----------

        This method trains from the epoch after the current one up to
        `config.epochs`; the batch order and noise of epoch e are
        drawn from the stream (seed, e). If `out_dir` is specified,
        checkpoints are written every `checkpoint_every` epochs and at
        the final epoch, together with `losses.csv`.

        Returns
        -------

        losses: ``List[LossRecord]``

            The complete loss curve, resumed steps included.

        """

        if len(bank) == 0:
            raise EmptyBatch(msg="The training bank is empty. Aborting!!!")
        cfg = self.config
        sampler = LengthBucketSampler(bank=bank, batch_size=cfg.batch_size, seed=cfg.seed)
        d_z = self.generator.config.d_z
        for epoch in range(self.epoch + 1, cfg.epochs + 1):
            sampler.set_epoch(epoch)
            rng = numpy.random.default_rng((cfg.seed, epoch))
            for images, class_ids in DataLoader(bank, batch_sampler=sampler):
                self.step += 1
                z = torch.from_numpy(rng.standard_normal((images.shape[0], d_z)).astype(numpy.float32))
                record = self.train_step(
                    images, class_ids, z, update_generator=self.step % cfg.steps_per_generator_update == 0
                )
                self.losses.append(record)
            self.epoch = epoch
            last = self.losses[-1]
            self.logger.info(
                msg=(
                    f"Epoch {epoch}/{cfg.epochs}: critic = {last.critic:.4f}, recognizer = {last.recognizer:.4f}, "
                    f"generator = {last.generator:.4f}."
                )
            )
            if out_dir is not None and (epoch % cfg.checkpoint_every == 0 or epoch == cfg.epochs):
                self.save(Path(out_dir) / checkpoint_name(epoch))
                write_loss_csv(records=self.losses, path=Path(out_dir) / "losses.csv")

        return self.losses

    def checkpoint(self) -> Checkpoint:
        return Checkpoint(
            epoch=self.epoch,
            step=self.step,
            generator=self.generator.state_dict(),
            critic=self.critic.state_dict(),
            recognizer=self.recognizer.state_dict(),
            optimizers={
                "generator": self.opt_g.state_dict(),
                "critic": self.opt_d.state_dict(),
                "recognizer": self.opt_r.state_dict(),
            },
            configs={
                "generator": self.generator.config.to_dict(),
                "critic": self.critic.config.to_dict(),
                "recognizer": self.recognizer.config.to_dict(),
                "train": asdict(self.config),
            },
            vocab={"glyphs": list(self.vocab.glyphs), "keys": list(self.vocab.keys)},
            losses=[list(asdict(record).values()) for record in self.losses],
        )

    def save(self, path: Union[str, Path]) -> Path:
        self.last_checkpoint = write_checkpoint(ckpt=self.checkpoint(), path=path)
        return self.last_checkpoint

    @classmethod
    def resume(
        cls, path: Union[str, Path], vocab: CharVocabulary, train_config: TrainConfig = None
    ) -> "Trainer":
        """
        Description
        -----------

        This method restores a trainer from a checkpoint; the next
        `fit` continues with the following epoch.

        Raises
        ------

        FingerprintMismatch:

            - raised if the vocabulary or the specified training
              configuration differs from the archived one.

        """

        ckpt = read_checkpoint(path=path, vocab=vocab)
        archived = TrainConfig(**ckpt.configs["train"])
        if train_config is not None and train_config.fingerprint != archived.fingerprint:
            msg = f"The training configuration differs from the one archived in {path}. Aborting!!!"
            raise FingerprintMismatch(msg=msg)
        trainer = cls(
            vocab=vocab,
            train_config=archived,
            generator_config=GeneratorConfig(**ckpt.configs["generator"]),
            critic_config=CriticConfig(**ckpt.configs["critic"]),
            recognizer_config=RecognizerConfig(**ckpt.configs["recognizer"]),
        )
        trainer.generator.load_state_dict(ckpt.generator)
        trainer.critic.load_state_dict(ckpt.critic)
        trainer.recognizer.load_state_dict(ckpt.recognizer)
        trainer.opt_g.load_state_dict(ckpt.optimizers["generator"])
        trainer.opt_d.load_state_dict(ckpt.optimizers["critic"])
        trainer.opt_r.load_state_dict(ckpt.optimizers["recognizer"])
        (trainer.epoch, trainer.step) = (ckpt.epoch, ckpt.step)
        trainer.losses = [LossRecord(*row) for row in ckpt.losses]
        trainer.last_checkpoint = Path(path)
        trainer.logger.info(msg=f"Resumed training from {path} at epoch {ckpt.epoch}.")

        return trainer

    def with_epochs(self, epochs: int) -> None:
        """Extends the run; the training fingerprint changes accordingly."""

        self.config = replace(self.config, epochs=epochs)
