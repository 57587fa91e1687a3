"""
Module
------

    vocab.py

Description
-----------

    This module contains the character vocabulary: the bijection
    between the handwritten glyphs and the Latin key letters used as
    class labels, word validation, and the word-list assets from
    which the collection sheet is regenerated.

Classes
-------

    CharVocabulary(glyphs, keys)

        This is the base-class object for the glyph/key/class
        identifier bijection; the CTC blank class is one past the last
        real class.

    WordSpec(keys, class_ids)

        This is a validated sequence of vocabulary characters.

Functions
---------

    enumerate_words(vocab, max_len, word_list=None)

        This function enumerates the words, by length, of the
        vocabulary.

    load_vocabulary(path)

        This function reads a vocabulary mapping file.

    load_word_list(path, vocab)

        This function reads a word-list file.

    map_word(text, vocab)

        This function maps a text string (glyphs and/or key letters)
        to a WordSpec object.

    render_glyphs(word, vocab)

        This function returns the glyph string for a WordSpec object.

    render_keys(word)

        This function returns the key-letter string for a WordSpec
        object.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import hashlib
import itertools
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from behgan.exceptions import EmptyWord, UnknownCharacter, VocabError
from behgan.logger import Logger

# ----

# Define all available module properties.
__all__ = [
    "CharVocabulary",
    "WordSpec",
    "enumerate_words",
    "load_vocabulary",
    "load_word_list",
    "map_word",
    "render_glyphs",
    "render_keys",
]

# ----

logger = Logger(caller_name=__name__)

# ----


@dataclass(frozen=True)
class CharVocabulary:
    """
    Description
    -----------

    This is the base-class object for the glyph/key/class identifier
    bijection; entry i maps glyphs[i] and keys[i] to class identifier
    i, and the CTC blank identifier is len(keys).

    Parameters
    ----------

    glyphs: ``Tuple[str]``

        The unicode glyphs, in class identifier order.

    keys: ``Tuple[str]``

        The single Latin key letters, in class identifier order.

    Raises
    ------

    VocabError:

        - raised if the vocabulary is empty, if the glyph and key
          counts differ, if a key is not a single lower-case ASCII
          letter, or if glyphs or keys are repeated.

    """

    glyphs: Tuple[str, ...]
    keys: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "glyphs", tuple(unicodedata.normalize("NFC", g) for g in self.glyphs))
        object.__setattr__(self, "keys", tuple(self.keys))
        if len(self.keys) < 1:
            raise VocabError(msg="A character vocabulary requires at least one entry. Aborting!!!")
        if len(self.glyphs) != len(self.keys):
            msg = (
                f"The vocabulary defines {len(self.glyphs)} glyphs but "
                f"{len(self.keys)} keys. Aborting!!!"
            )
            raise VocabError(msg=msg)
        for key in self.keys:
            if len(key) != 1 or not ("a" <= key <= "z"):
                msg = f"The vocabulary key {key!r} is not a single lower-case letter. Aborting!!!"
                raise VocabError(msg=msg)
        if len(set(self.keys)) != len(self.keys) or len(set(self.glyphs)) != len(self.glyphs):
            raise VocabError(msg="Vocabulary glyphs and keys must be unique. Aborting!!!")
        overlap = set(self.glyphs) & set(self.keys)
        for glyph in overlap:
            # A glyph may only double as a key when it is its own key.
            if self.glyphs.index(glyph) != self.keys.index(glyph):
                msg = f"The glyph {glyph!r} collides with a different key. Aborting!!!"
                raise VocabError(msg=msg)

    @property
    def blank_id(self) -> int:
        """The CTC blank class identifier."""

        return len(self.keys)

    @property
    def entries(self) -> List[Tuple[str, str, int]]:
        """The ordered (glyph, key, class_id) entries."""

        return [(glyph, key, idx) for idx, (glyph, key) in enumerate(zip(self.glyphs, self.keys))]

    @property
    def n_classes(self) -> int:
        """The number of real (non-blank) classes."""

        return len(self.keys)

    @property
    def fingerprint(self) -> str:
        """A sha256 digest of the ordered entries."""

        payload = "\n".join(f"{g}\t{k}" for g, k in zip(self.glyphs, self.keys))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def lookup(self) -> Dict[str, int]:
        """
        Description
        -----------

        This method returns the grapheme to class identifier map;
        both glyphs and key letters are accepted.

        Returns
        -------

        table: ``Dict[str, int]``

            A Python dictionary mapping graphemes to class
            identifiers.

        """

        table = {key: idx for idx, key in enumerate(self.keys)}
        table.update({glyph: idx for idx, glyph in enumerate(self.glyphs)})

        return table


# ----


@dataclass(frozen=True)
class WordSpec:
    """
    Description
    -----------

    This is a validated sequence of vocabulary characters; keys[i]
    corresponds to class_ids[i].

    """

    keys: Tuple[str, ...]
    class_ids: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "keys", tuple(self.keys))
        object.__setattr__(self, "class_ids", tuple(int(c) for c in self.class_ids))
        if len(self.keys) < 1 or len(self.keys) != len(self.class_ids):
            msg = "A word requires at least one character and one class per key. Aborting!!!"
            raise VocabError(msg=msg)

    @property
    def length(self) -> int:
        """The number of characters."""

        return len(self.keys)

    @property
    def text(self) -> str:
        """The key-letter string."""

        return "".join(self.keys)


# ----


def map_word(text: str, vocab: CharVocabulary) -> WordSpec:
    """
    Description
    -----------

    This function maps a text string to a WordSpec object; glyphs and
    key letters are both accepted and may be mixed. At each position
    the longest matching glyph wins, so multi-codepoint glyphs map to
    one character.

    Parameters
    ----------

    text: ``str``

        A Python string containing the word.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    Returns
    -------

    word: ``WordSpec``

        A Python WordSpec object with class identifiers in input
        order.

    Raises
    ------

    EmptyWord:

        - raised if the text is empty.

    UnknownCharacter:

        - raised if no glyph or key matches at a position; the
          position is the codepoint offset in the NFC-normalized
          text.

    """

    # Match the longest glyph or key at each position.
    if text is None or len(text) == 0:
        raise EmptyWord(msg="An empty string cannot be mapped to a word. Aborting!!!")
    table = vocab.lookup()
    widest = max(len(grapheme) for grapheme in table)
    text = unicodedata.normalize("NFC", text)
    (class_ids, position) = ([], 0)
    while position < len(text):
        for width in range(min(widest, len(text) - position), 0, -1):
            grapheme = text[position : position + width]
            if grapheme in table:
                class_ids.append(table[grapheme])
                position += width
                break
        else:
            raise UnknownCharacter(position=position, grapheme=text[position])
    keys = [vocab.keys[idx] for idx in class_ids]

    return WordSpec(keys=keys, class_ids=class_ids)


# ----


def render_keys(word: WordSpec) -> str:
    """Returns the key-letter string of a word."""

    return word.text


def render_glyphs(word: WordSpec, vocab: CharVocabulary) -> str:
    """Returns the glyph string of a word."""

    return "".join(vocab.glyphs[idx] for idx in word.class_ids)


# ----


def _read_lines(path: Union[str, Path]) -> Iterable[Tuple[int, str]]:
    try:
        with open(path, "r", encoding="utf-8") as file:
            lines = file.read().splitlines()
    except OSError as errmsg:
        msg = f"Reading file {path} failed with error {errmsg}. Aborting!!!"
        raise VocabError(msg=msg) from errmsg
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            yield (lineno, line)


def load_vocabulary(path: Union[str, Path]) -> CharVocabulary:
    """
    Description
    -----------

    This function reads a vocabulary mapping file; each line has the
    form `glyph<TAB>key` and lines beginning with `#` are comments.

    Parameters
    ----------

    path: ``Union[str, Path]``

        The path to the UTF-8 vocabulary mapping file.

    Returns
    -------

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    Raises
    ------

    VocabError:

        - raised if a line is malformed.

    """

    # Parse the mapping file.
    (glyphs, keys) = ([], [])
    for lineno, line in _read_lines(path=path):
        fields = line.split("\t")
        if len(fields) != 2:
            msg = f"Line {lineno} of {path} is not of the form `glyph<TAB>key`. Aborting!!!"
            raise VocabError(msg=msg)
        glyphs.append(fields[0].strip())
        keys.append(fields[1].strip())
    vocab = CharVocabulary(glyphs=glyphs, keys=keys)
    msg = f"Loaded {vocab.n_classes} vocabulary entries from {path}."
    logger.info(msg=msg)

    return vocab


def load_word_list(path: Union[str, Path], vocab: CharVocabulary) -> List[WordSpec]:
    """
    Description
    -----------

    This function reads a word-list file containing one key string
    per line and validates each word against the vocabulary.

    Parameters
    ----------

    path: ``Union[str, Path]``

        The path to the UTF-8 word-list file.

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    Returns
    -------

    words: ``List[WordSpec]``

        A Python list of WordSpec objects, in file order; duplicates
        are dropped.

    """

    (words, seen) = ([], set())
    for _, line in _read_lines(path=path):
        word = map_word(text=line, vocab=vocab)
        if word.class_ids not in seen:
            seen.add(word.class_ids)
            words.append(word)

    return words


# ----


def enumerate_words(
    vocab: CharVocabulary, max_len: int, word_list: Sequence[WordSpec] = None
) -> List[WordSpec]:
    """
    Description
    -----------

    This function enumerates the words of each length up to and
    including `max_len`; ordering is by length and then
    lexicographic by class identifiers.

    Parameters
    ----------

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    max_len: ``int``

        The maximum word length; must be at least 1.

    Keywords
    --------

    word_list: ``Sequence[WordSpec]``, optional

        The selected word subset (e.g., read by `load_word_list`);
        if NoneType, the full combination space is enumerated.

    Returns
    -------

    words: ``List[WordSpec]``

        A Python list of WordSpec objects.

    Raises
    ------

    VocabError:

        - raised if `max_len` is less than 1.

    """

    if max_len < 1:
        msg = f"The maximum word length must be at least 1; received {max_len}. Aborting!!!"
        raise VocabError(msg=msg)
    if word_list is not None:
        words = [word for word in word_list if word.length <= max_len]
        return sorted(words, key=lambda word: (word.length, word.class_ids))
    words = []
    for length in range(1, max_len + 1):
        for class_ids in itertools.product(range(vocab.n_classes), repeat=length):
            words.append(WordSpec(keys=[vocab.keys[c] for c in class_ids], class_ids=class_ids))

    return words
