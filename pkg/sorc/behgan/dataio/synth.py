"""
Module
------

    synth.py

Description
-----------

    This module renders a synthetic word image corpus from TrueType
    fonts; it stands in for handwritten collections at desk scale.
    Every rendering is jittered (font size, stroke width, slant, ink
    and paper intensity) and passed through the full preprocessing
    chain before it is written.

Functions
---------

    check_font(font_path, glyphs)

        This function verifies that a font can be opened and has an
        outline for every glyph.

    synth_corpus(vocab, words, fonts, n_per_word, seed, out_root)

        This function renders, preprocesses and writes the corpus and
        returns its manifest.

Requirements
------------

- fontTools; https://github.com/fonttools/fonttools

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import numpy
from fontTools.ttLib import TTFont, TTLibError
from PIL import Image, ImageDraw, ImageFont

from behgan.dataio.glyph import (
    GlyphImage,
    dirname_for_length,
    normalize_background,
    resize_to_slots,
    save_image,
)
from behgan.dataio.manifest import MANIFEST_NAME, DatasetManifest, ManifestRecord, write_manifest
from behgan.exceptions import DataIOError, FontLoadError, GlyphNotInFont
from behgan.logger import Logger
from behgan.vocab import CharVocabulary, WordSpec, render_glyphs

# ----

# Define all available module properties.
__all__ = ["check_font", "synth_corpus"]

# ----

logger = Logger(caller_name=__name__)

FONT_SIZE_RANGE = (26, 38)
SLANT_RANGE = 0.25
INK_RANGE = (0, 60)
PAPER_RANGE = (170, 256)
MARGIN = 2

# ----


def check_font(font_path: Union[str, Path], glyphs: Sequence[str]) -> None:
    """
    Description
    -----------

    This function verifies that a font can be opened and that its
    character map covers every glyph.

    Parameters
    ----------

    font_path: ``Union[str, Path]``

        The path to the TrueType/OpenType font.

    glyphs: ``Sequence[str]``

        The vocabulary glyphs.

    Raises
    ------

    FontLoadError:

        - raised if the font cannot be opened.

    GlyphNotInFont:

        - raised if a glyph code point is absent from the font
          character map.

    """

    try:
        with TTFont(str(font_path), lazy=True) as font:
            cmap = font.getBestCmap() or {}
    except (OSError, TTLibError) as errmsg:
        msg = f"Opening font {font_path} failed with error {errmsg}. Aborting!!!"
        raise FontLoadError(msg=msg) from errmsg
    for glyph in glyphs:
        missing = [char for char in glyph if ord(char) not in cmap]
        if missing:
            msg = f"The font {font_path} has no outline for glyph {glyph!r}. Aborting!!!"
            raise GlyphNotInFont(msg=msg)


# ----


def __render__(
    text: str, font: ImageFont.FreeTypeFont, rng: numpy.random.Generator
) -> numpy.ndarray:
    """
    Description
    -----------

    This function renders a jittered, slanted word on a gray page and
    crops it to the ink bounding box.

    Parameters
    ----------

    text: ``str``

        The glyph string.

    font: ``ImageFont.FreeTypeFont``

        The font, already sized.

    rng: ``numpy.random.Generator``

        The random stream.

    Returns
    -------

    pixels: ``numpy.ndarray``

        The cropped 8-bit rendering.

    """

    ink = int(rng.integers(*INK_RANGE))
    paper = int(rng.integers(*PAPER_RANGE))
    stroke = int(rng.integers(0, 2))
    slant = float(rng.uniform(-SLANT_RANGE, SLANT_RANGE))
    (left, top, right, bottom) = font.getbbox(text, stroke_width=stroke)
    (width, height) = (right - left + 8 * MARGIN + int(abs(slant) * bottom), bottom - top + 4 * MARGIN)
    page = Image.new("L", (max(width, 1), max(height, 1)), color=paper)
    ImageDraw.Draw(page).text(
        (2 * MARGIN - left + int(abs(slant) * bottom) // 2, 2 * MARGIN - top),
        text,
        font=font,
        fill=ink,
        stroke_width=stroke,
        stroke_fill=ink,
    )
    page = page.transform(
        page.size,
        Image.Transform.AFFINE,
        data=(1.0, slant, -slant * page.size[1] / 2.0, 0.0, 1.0, 0.0),
        resample=Image.Resampling.BILINEAR,
        fillcolor=paper,
    )
    pixels = numpy.array(page, dtype=numpy.uint8)
    (rows, cols) = numpy.nonzero(pixels < (ink + paper) / 2.0)
    if rows.size == 0:
        return None
    (r0, r1) = (max(rows.min() - MARGIN, 0), min(rows.max() + MARGIN + 1, pixels.shape[0]))
    (c0, c1) = (max(cols.min() - MARGIN, 0), min(cols.max() + MARGIN + 1, pixels.shape[1]))

    return pixels[r0:r1, c0:c1]


# ----


def synth_corpus(
    vocab: CharVocabulary,
    words: List[WordSpec],
    fonts: List[Union[str, Path]],
    n_per_word: int,
    seed: int,
    out_root: Union[str, Path],
) -> DatasetManifest:
    """
    Description
    -----------

    This function renders every word `n_per_word` times (cycling
    through the fonts), runs the preprocessing chain, and writes the
    images and label files beneath the length directories of
    `out_root`.

    Parameters
    ----------

    vocab: ``CharVocabulary``

        A Python CharVocabulary object.

    words: ``List[WordSpec]``

        The words to render; non-empty.

    fonts: ``List[Union[str, Path]]``

        The TrueType/OpenType font paths; at least one.

    n_per_word: ``int``

        The number of renderings per word.

    seed: ``int``

        The random seed; identical seeds yield byte-identical images.

    out_root: ``Union[str, Path]``

        The output dataset root.

    Returns
    -------

    manifest: ``DatasetManifest``

        A Python DatasetManifest object with provenance `synthetic`;
        it is also written to `out_root/manifest.jsonl`.

    Raises
    ------

    DataIOError:

        - raised if no fonts or no words are provided.

    """

    if not fonts:
        raise DataIOError(msg="At least one font is required. Aborting!!!")
    if not words:
        raise DataIOError(msg="At least one word is required. Aborting!!!")
    for font_path in fonts:
        check_font(font_path=font_path, glyphs=vocab.glyphs)

    out_root = Path(out_root)
    rng = numpy.random.default_rng(seed)
    cache: Dict[Tuple[str, int], ImageFont.FreeTypeFont] = {}
    counters: Dict[int, int] = {}
    records = []
    for word in words:
        text = render_glyphs(word=word, vocab=vocab)
        for idx in range(n_per_word):
            font_path = str(fonts[idx % len(fonts)])
            size = int(rng.integers(*FONT_SIZE_RANGE))
            if (font_path, size) not in cache:
                try:
                    cache[(font_path, size)] = ImageFont.truetype(font_path, size=size)
                except OSError as errmsg:
                    msg = f"Loading font {font_path} failed with error {errmsg}. Aborting!!!"
                    raise FontLoadError(msg=msg) from errmsg
            pixels = __render__(text=text, font=cache[(font_path, size)], rng=rng)
            if pixels is None:
                msg = f"The font {font_path} rendered no ink for {text!r}. Aborting!!!"
                raise GlyphNotInFont(msg=msg)
            img = normalize_background(raw=GlyphImage(pixels=pixels, n_chars=word.length))
            img = resize_to_slots(img=img, n_chars=word.length)
            counters[word.length] = counters.get(word.length, 0) + 1
            image_path = out_root / dirname_for_length(word.length) / f"{counters[word.length]:05d}.png"
            save_image(img=img, path=image_path)
            with open(image_path.with_suffix(".txt"), "w", encoding="utf-8") as file:
                file.write(word.text + "\n")
            records.append(
                ManifestRecord(
                    image_path=str(image_path), label=word.text, n_chars=word.length, provenance="synthetic"
                )
            )
    manifest = DatasetManifest(records=records, root=str(out_root))
    write_manifest(manifest=manifest, path=out_root / MANIFEST_NAME)
    msg = f"Synthetic corpus written to {out_root}:\n{manifest.summary()}"
    logger.info(msg=msg)

    return manifest
