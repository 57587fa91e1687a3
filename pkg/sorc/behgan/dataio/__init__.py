"""
Dataset ingestion, preprocessing, augmentation and the synthetic
font-rendered corpus.
"""

from behgan.dataio.augment import AugmentParams, augment, augment_manifest, load_augment_params
from behgan.dataio.bank import LengthBucketSampler, WordImageBank, to_glyph, to_tensor
from behgan.dataio.glyph import (
    GlyphImage,
    dirname_for_length,
    ink_ratio,
    length_for_dirname,
    load_image,
    normalize_background,
    quality_gate,
    resize_to_slots,
    save_image,
)
from behgan.dataio.manifest import (
    DatasetManifest,
    ManifestRecord,
    build_manifest,
    merge_manifests,
    read_manifest,
    split_manifest,
    subset_manifest,
    validate_manifest,
    write_manifest,
)
from behgan.dataio.preprocess import preprocess_image, preprocess_tree
from behgan.dataio.synth import check_font, synth_corpus
