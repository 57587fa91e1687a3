"""
Module
------

    bank.py

Description
-----------

    This module holds a preprocessed dataset in memory as tensors
    bucketed by word length, and samples same-length batches from it.

Classes
-------

    LengthBucketSampler(bank, batch_size, seed, epoch=0)

        This is a batch sampler yielding batches whose records share
        one word length; the order is fixed by (seed, epoch).

    WordImageBank(manifest, vocab)

        This is a dataset of (image, class identifiers) pairs.

Functions
---------

    to_tensor(img)

        This function maps a GlyphImage to a (1, 32, W) tensor in
        [-1, 1], white = +1.

    to_glyph(tensor, n_chars)

        This function maps a (1, 32, W) tensor in [-1, 1] back to a
        GlyphImage.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from typing import Dict, Iterator, List, Tuple

import numpy
import torch
from torch.utils.data import Dataset, Sampler

from behgan.dataio.glyph import GlyphImage, load_image
from behgan.dataio.manifest import DatasetManifest
from behgan.exceptions import DataIOError
from behgan.vocab import CharVocabulary, map_word

# ----

# Define all available module properties.
__all__ = ["LengthBucketSampler", "WordImageBank", "to_glyph", "to_tensor"]

# ----


def to_tensor(img: GlyphImage) -> torch.Tensor:
    """Maps 8-bit pixels to [-1, 1]."""

    return torch.from_numpy(img.pixels.astype(numpy.float32) / 127.5 - 1.0).unsqueeze(0)


def to_glyph(tensor: torch.Tensor, n_chars: int) -> GlyphImage:
    """Maps a bounded network output to 8-bit pixels, round((y + 1) * 127.5)."""

    values = tensor.detach().to("cpu", torch.float64).clamp(-1.0, 1.0).squeeze(0).numpy()

    return GlyphImage(pixels=numpy.rint((values + 1.0) * 127.5).astype(numpy.uint8), n_chars=n_chars)


# ----


class WordImageBank(Dataset):
    """
    Description
    -----------

    This is a dataset of (image, class identifiers) pairs read from a
    manifest into memory.

    Parameters
    ----------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object; every image must be on the
        slot grid.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    """

    def __init__(self, manifest: DatasetManifest, vocab: CharVocabulary):
        self.manifest = manifest
        self.images: List[torch.Tensor] = []
        self.labels: List[torch.Tensor] = []
        self.lengths: List[int] = []
        for record in manifest.records:
            img = load_image(path=record.image_path, n_chars=record.n_chars)
            if not img.is_slot_grid():
                msg = f"Image {record.image_path} is not on the slot grid. Aborting!!!"
                raise DataIOError(msg=msg)
            word = map_word(text=record.label, vocab=vocab)
            self.images.append(to_tensor(img))
            self.labels.append(torch.tensor(word.class_ids, dtype=torch.long))
            self.lengths.append(record.n_chars)

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, idx: int) -> Tuple[torch.Tensor, torch.Tensor]:
        return (self.images[idx], self.labels[idx])

    def buckets(self) -> Dict[int, List[int]]:
        """Record indices grouped by word length."""

        buckets: Dict[int, List[int]] = {}
        for idx, length in enumerate(self.lengths):
            buckets.setdefault(length, []).append(idx)

        return dict(sorted(buckets.items()))


# ----


class LengthBucketSampler(Sampler):
    """
    Description
    -----------

    This is a batch sampler yielding batches whose records share one
    word length; each bucket is shuffled and chunked, and the chunks
    are shuffled, using the random stream (seed, epoch).

    Parameters
    ----------

    bank: ``WordImageBank``

        A Python WordImageBank object.

    batch_size: ``int``

        The maximum batch size.

    seed: ``int``

        The random seed.

    Keywords
    --------

    epoch: ``int``, optional

        The epoch number.

    """

    def __init__(self, bank: WordImageBank, batch_size: int, seed: int, epoch: int = 0):
        super().__init__()
        self.buckets = bank.buckets()
        self.batch_size = batch_size
        self.seed = seed
        self.epoch = epoch

    def set_epoch(self, epoch: int) -> None:
        self.epoch = epoch

    def batches(self) -> List[List[int]]:
        rng = numpy.random.default_rng((self.seed, self.epoch))
        chunks = []
        for indices in self.buckets.values():
            order = rng.permutation(indices).tolist()
            chunks.extend(order[i : i + self.batch_size] for i in range(0, len(order), self.batch_size))

        return [chunks[i] for i in rng.permutation(len(chunks))]

    def __iter__(self) -> Iterator[List[int]]:
        return iter(self.batches())

    def __len__(self) -> int:
        return sum(-(-len(v) // self.batch_size) for v in self.buckets.values())
