"""
Tests for the character vocabulary and word mapping.
"""

# ----

import pytest

from behgan.exceptions import EmptyWord, UnknownCharacter, VocabError
from behgan.vocab import (
    CharVocabulary,
    enumerate_words,
    load_vocabulary,
    load_word_list,
    map_word,
    render_glyphs,
    render_keys,
)

# ----


def test_blank_follows_real_classes(latin_vocab):
    assert latin_vocab.n_classes == 5
    assert latin_vocab.blank_id == 5
    assert [e[2] for e in latin_vocab.entries] == [0, 1, 2, 3, 4]


def test_bengali_mapping_file(bengali_vocab_path):
    vocab = load_vocabulary(bengali_vocab_path)
    assert vocab.keys == ("k", "l", "m", "n", "p")
    word = map_word("কলম", vocab)
    assert word.class_ids == (0, 1, 2)
    assert render_keys(word) == "klm"
    assert render_glyphs(word, vocab) == "কলম"


def test_glyphs_and_keys_mix(bengali_vocab_path):
    vocab = load_vocabulary(bengali_vocab_path)
    assert map_word("কlম", vocab) == map_word("klm", vocab)


def test_glyph_round_trip(bengali_vocab_path):
    vocab = load_vocabulary(bengali_vocab_path)
    for text in ("k", "pn", "mkl", "nnpk"):
        word = map_word(text, vocab)
        assert map_word(render_glyphs(word, vocab), vocab) == word


def test_multi_codepoint_glyph_round_trip():
    vocab = CharVocabulary(glyphs=("কা", "ল"), keys=("k", "l"))
    word = map_word("কাল", vocab)
    assert word.class_ids == (0, 1)
    assert render_glyphs(word, vocab) == "কাল"
    assert map_word(render_glyphs(map_word("lkk", vocab), vocab), vocab) == map_word("lkk", vocab)


def test_longest_glyph_wins():
    vocab = CharVocabulary(glyphs=("ক", "কা", "ল"), keys=("k", "a", "l"))
    assert map_word("কাক", vocab).class_ids == (1, 0)
    assert map_word("কল", vocab).class_ids == (0, 2)
    with pytest.raises(UnknownCharacter) as err:
        map_word("কাx", vocab)
    assert (err.value.position, err.value.grapheme) == (2, "x")


def test_empty_word(latin_vocab):
    with pytest.raises(EmptyWord):
        map_word("", latin_vocab)


def test_unknown_character_position(latin_vocab):
    with pytest.raises(UnknownCharacter) as err:
        map_word("kxm", latin_vocab)
    assert err.value.position == 1
    assert err.value.grapheme == "x"


@pytest.mark.parametrize(
    "glyphs, keys",
    [
        ((), ()),
        (("a", "b"), ("a",)),
        (("a", "b"), ("a", "a")),
        (("a",), ("A",)),
        (("a",), ("ab",)),
    ],
)
def test_invalid_vocabulary(glyphs, keys):
    with pytest.raises(VocabError):
        CharVocabulary(glyphs=glyphs, keys=keys)


def test_fingerprint_depends_on_order():
    a = CharVocabulary(glyphs=("x", "y"), keys=("a", "b"))
    b = CharVocabulary(glyphs=("y", "x"), keys=("a", "b"))
    assert a.fingerprint != b.fingerprint
    assert a.fingerprint == CharVocabulary(glyphs=("x", "y"), keys=("a", "b")).fingerprint


def test_malformed_mapping_line(tmp_path):
    path = tmp_path / "vocab.tsv"
    path.write_text("# comment\nx a\n", encoding="utf-8")
    with pytest.raises(VocabError):
        load_vocabulary(path)


def test_enumerate_full_space(latin_vocab):
    words = enumerate_words(latin_vocab, max_len=3)
    assert len(words) == 5 + 25 + 125
    assert words[0].text == "k"
    assert words[5].text == "kk"
    assert words[-1].text == "ppp"
    assert [w.length for w in words] == sorted(w.length for w in words)


def test_enumerate_rejects_zero_length(latin_vocab):
    with pytest.raises(VocabError):
        enumerate_words(latin_vocab, max_len=0)


def test_collection_sheet(bengali_vocab_path):
    vocab = load_vocabulary(bengali_vocab_path)
    words = load_word_list(bengali_vocab_path.parent / "words30.txt", vocab)
    assert len(words) == 30
    counts = {}
    for word in enumerate_words(vocab, max_len=3, word_list=words):
        counts[word.length] = counts.get(word.length, 0) + 1
    assert counts == {1: 5, 2: 16, 3: 9}
