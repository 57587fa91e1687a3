"""
Module
------

    cli.py

Description
-----------

    This module contains the `behgan` command-line interface; every
    pipeline stage is a subcommand. Option values are resolved in the
    order command-line flag, `--config` file section named after the
    subcommand, built-in default.

Functions
---------

    build_parser()

        This function builds the argument parser.

    main(argv=None)

        This function runs one subcommand and returns its exit code:
        0 on success, 1 on a usage error and 2 on a runtime failure.

    render_grid(ckpts, words, n_styles, seed, vocab, enhancer=None)

        This function renders a words x styles contact sheet with one
        band per checkpoint.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path
from types import SimpleNamespace
from typing import Callable, Dict, List, Sequence

from PIL import Image

from behgan.config import parm_path, read_yaml
from behgan.dataio import (
    augment_manifest,
    build_manifest,
    load_augment_params,
    preprocess_tree,
    read_manifest,
    save_image,
    synth_corpus,
)
from behgan.dataio.bank import WordImageBank
from behgan.dataio.glyph import SLOT_HEIGHT, SLOT_WIDTH
from behgan.dataio.manifest import MANIFEST_NAME, DatasetManifest
from behgan.enhance import enhance, list_enhancers
from behgan.exceptions import BehganError, UsageError
from behgan.gen import GlyphSynthesizer, load_generator_config
from behgan.logger import Logger
from behgan.metrics import evaluate_sets, load_geometry_params
from behgan.critic import load_critic_config
from behgan.recognizer import load_recognizer, load_recognizer_config, word_accuracy
from behgan.trainer import (
    Trainer,
    load_train_config,
    read_ablation_plan,
    run_ablation,
    select_best_epoch,
    write_ablation_csv,
)
from behgan.vocab import CharVocabulary, load_vocabulary, load_word_list, map_word

# ----

# Define all available module properties.
__all__ = ["build_parser", "main", "render_grid"]

# ----

logger = Logger(caller_name=__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

DEFAULT_SEED = 0

GRID_PAD = 4

# ----


class _Parser(argparse.ArgumentParser):
    """Raises UsageError rather than exiting on bad arguments."""

    def error(self, message: str) -> None:
        self.print_help(sys.stderr)
        raise UsageError(msg=f"{self.prog}: {message}")


def _data_root(*parts: str) -> str:
    root = os.environ.get("BEHGAN_DATA_ROOT")
    return str(Path(root, *parts)) if root else None


def build_parser() -> argparse.ArgumentParser:
    """
    Description
    -----------

    This function builds the argument parser; option defaults are
    NoneType so that configuration file values can be told apart from
    explicit flags.

    """

    parser = _Parser(prog="behgan", description="Word-level handwriting synthesis toolkit.")
    parser.add_argument("--config", help="YAML file with one section per subcommand.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_msg: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_msg)
        cmd.add_argument("--vocab", help="Vocabulary mapping file.")
        cmd.add_argument("--seed", type=int, help="Random seed.")
        return cmd

    cmd = add("synth", "Render a synthetic font corpus.")
    cmd.add_argument("--words", help="Word-list file.")
    cmd.add_argument("--font", action="append", dest="fonts", help="Font file; repeatable.")
    cmd.add_argument("--n-per-word", type=int)
    cmd.add_argument("--out")

    cmd = add("preprocess", "Preprocess a raw dataset tree.")
    cmd.add_argument("--src")
    cmd.add_argument("--out")

    cmd = add("augment", "Write the augmented dataset.")
    cmd.add_argument("--data", help="Dataset root or manifest.")
    cmd.add_argument("--copies", type=int)
    cmd.add_argument("--out")

    cmd = add("train", "Train the generator, critic and recognizer.")
    cmd.add_argument("--data", help="Dataset root or manifest.")
    cmd.add_argument("--out", help="Checkpoint directory.")
    cmd.add_argument("--epochs", type=int)
    cmd.add_argument("--gamma", type=float)
    cmd.add_argument("--batch-size", type=int)
    cmd.add_argument("--checkpoint-every", type=int)
    cmd.add_argument("--resume", help="Checkpoint to continue from.")
    cmd.add_argument("--select", help="Evaluation dataset for best-epoch selection.")

    cmd = add("generate", "Generate one word image.")
    cmd.add_argument("--text")
    cmd.add_argument("--ckpt")
    cmd.add_argument("--out")
    cmd.add_argument("--enhance", dest="enhancer")

    cmd = add("evaluate", "Score a generated dataset against a real one.")
    cmd.add_argument("--real")
    cmd.add_argument("--gen")
    cmd.add_argument("--out", help="MetricReport JSON file.")
    cmd.add_argument("--csv", help="Metric,Score CSV file.")
    cmd.add_argument("--extractor", help="pooled, random-conv or recognizer; the --ckpt recognizer by default.")
    cmd.add_argument("--ckpt", help="Checkpoint providing the recognizer extractor.")
    cmd.add_argument("--gs-iterations", type=int)

    cmd = add("ablate", "Run an ablation plan.")
    cmd.add_argument("--plan")
    cmd.add_argument("--base", help="Full training dataset.")
    cmd.add_argument("--eval", dest="eval_data", help="Held-out evaluation dataset.")
    cmd.add_argument("--work-dir")
    cmd.add_argument("--out", help="Configuration,SSIM,FID,GS CSV file.")

    cmd = add("grid", "Render a words x styles contact sheet.")
    cmd.add_argument("--ckpt", action="append", dest="ckpts", help="Checkpoint; repeatable.")
    cmd.add_argument("--words", help="Comma-separated words.")
    cmd.add_argument("--styles", type=int)
    cmd.add_argument("--out")
    cmd.add_argument("--enhance", dest="enhancer")

    add("enhancers", "List the registered enhancers.")

    return parser


def _options(args: argparse.Namespace, defaults: Dict) -> SimpleNamespace:
    """Flags win over the `commands.<subcommand>` file section, which wins over `defaults`."""

    section = {}
    if args.config is not None:
        commands = read_yaml(yaml_file=args.config).get("commands") or {}
        section = {k.replace("-", "_"): v for k, v in (commands.get(args.command) or {}).items()}
    merged = dict.fromkeys(vars(args))
    merged.update(defaults)
    merged.update({k: v for k, v in section.items() if v is not None})
    merged.update({k: v for k, v in vars(args).items() if v is not None})

    return SimpleNamespace(**merged)


def _require(opts: SimpleNamespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(opts, n, None) in (None, [])]
    if missing:
        raise UsageError(msg=f"{opts.command}: missing required options {', '.join(missing)}.")


def _seed(opts: SimpleNamespace) -> int:
    return DEFAULT_SEED if opts.seed is None else opts.seed


def _vocab(opts: SimpleNamespace) -> CharVocabulary:
    return load_vocabulary(path=opts.vocab or parm_path("vocab", "bengali5.tsv"))


def _model_configs(opts: SimpleNamespace, vocab: CharVocabulary) -> Dict:
    """The Trainer model configuration keywords read from `--config`."""

    return {
        "generator_config": load_generator_config(n_classes=vocab.n_classes, yaml_file=opts.config),
        "critic_config": load_critic_config(yaml_file=opts.config),
        "recognizer_config": load_recognizer_config(yaml_file=opts.config),
    }


def _manifest(path: str, vocab: CharVocabulary) -> DatasetManifest:
    path = Path(path)
    if path.is_file():
        return read_manifest(path=path)
    if (path / MANIFEST_NAME).is_file():
        return read_manifest(path=path / MANIFEST_NAME)
    return build_manifest(root_dir=path, vocab=vocab)


# ----


def _synth(opts: SimpleNamespace) -> None:
    _require(opts, "fonts", "out")
    vocab = _vocab(opts)
    words = load_word_list(path=opts.words or parm_path("vocab", "words30.txt"), vocab=vocab)
    manifest = synth_corpus(
        vocab=vocab, words=words, fonts=opts.fonts, n_per_word=opts.n_per_word, seed=_seed(opts), out_root=opts.out
    )
    logger.info(msg="Synthetic corpus:\n" + manifest.summary())


def _preprocess(opts: SimpleNamespace) -> None:
    _require(opts, "src", "out")
    preprocess_tree(src_root=opts.src, dst_root=opts.out, vocab=_vocab(opts))


def _augment(opts: SimpleNamespace) -> None:
    _require(opts, "data", "out")
    params = load_augment_params(yaml_file=opts.config)
    if opts.copies is not None:
        params = replace(params, copies_per_image=opts.copies)
    manifest = augment_manifest(
        manifest=_manifest(opts.data, _vocab(opts)), params=params, seed=_seed(opts), out_root=opts.out
    )
    logger.info(msg="Augmented dataset:\n" + manifest.summary())


def _train(opts: SimpleNamespace) -> None:
    _require(opts, "data", "out")
    vocab = _vocab(opts)
    bank = WordImageBank(manifest=_manifest(opts.data, vocab), vocab=vocab)
    config = load_train_config(
        yaml_file=opts.config,
        seed=opts.seed,
        epochs=opts.epochs,
        gamma=opts.gamma,
        batch_size=opts.batch_size,
        checkpoint_every=opts.checkpoint_every,
    )
    if opts.resume is not None:
        trainer = Trainer.resume(path=opts.resume, vocab=vocab)
        trainer.with_epochs(epochs=config.epochs)
    else:
        trainer = Trainer(vocab=vocab, train_config=config, **_model_configs(opts, vocab))
    trainer.fit(bank=bank, out_dir=opts.out)
    if opts.select is not None:
        ckpts = sorted(Path(opts.out).glob("ckpt_epoch_*.pt"), key=lambda p: int(p.stem.rsplit("_", 1)[1]))
        (epoch, report) = select_best_epoch(
            checkpoints=ckpts,
            eval_set=_manifest(opts.select, vocab),
            vocab=vocab,
            geometry=load_geometry_params(yaml_file=opts.config),
            seed=config.seed,
        )
        report.to_json(Path(opts.out) / f"best_epoch_{epoch}.json")


def _generate(opts: SimpleNamespace) -> None:
    _require(opts, "text", "ckpt", "out")
    vocab = _vocab(opts)
    img = GlyphSynthesizer(vocab=vocab).load(ckpt_path=opts.ckpt).generate_text(text=opts.text, seed=_seed(opts))
    if opts.enhancer is not None:
        img = enhance(img=img, enhancer_id=opts.enhancer)
    save_image(img=img, path=opts.out)
    logger.info(msg=f"Wrote {opts.out} ({img.width} x {img.height}).")


def _evaluate(opts: SimpleNamespace) -> None:
    _require(opts, "real", "gen")
    vocab = _vocab(opts)
    (real, generated) = (_manifest(opts.real, vocab), _manifest(opts.gen, vocab))
    geometry = load_geometry_params(yaml_file=opts.config)
    if opts.gs_iterations is not None:
        geometry = replace(geometry, n_iterations=opts.gs_iterations)
    (recognizer, accuracy) = (None, None)
    if opts.ckpt is not None:
        recognizer = load_recognizer(ckpt_path=opts.ckpt, vocab=vocab)
        accuracy = word_accuracy(model=recognizer, bank=WordImageBank(manifest=generated, vocab=vocab), vocab=vocab)
    elif opts.extractor == "recognizer":
        raise UsageError(msg="evaluate: the recognizer extractor requires --ckpt.")
    report = evaluate_sets(
        real=real,
        generated=generated,
        extractor=None if opts.extractor == "recognizer" else opts.extractor,
        geometry=geometry,
        recognizer_accuracy=accuracy,
        recognizer=recognizer,
    )
    report.to_json(opts.out)
    if opts.csv is not None:
        report.to_csv(opts.csv)


def _ablate(opts: SimpleNamespace) -> None:
    _require(opts, "plan")
    vocab = _vocab(opts)
    plan = read_ablation_plan(path=opts.plan)
    base = opts.base or plan.get("base")
    eval_data = opts.eval_data or plan.get("eval")
    if base is None or eval_data is None:
        raise UsageError(msg="ablate: the base and evaluation datasets must be named by flag or plan.")
    train_config = load_train_config(yaml_file=opts.config, **plan.get("train", {}))
    extractor = plan.get("extractor")
    results = run_ablation(
        variants=plan["variants"],
        base=_manifest(base, vocab),
        eval_set=_manifest(eval_data, vocab),
        vocab=vocab,
        train_config=train_config,
        seeds=plan.get("seeds", [_seed(opts)]),
        work_dir=opts.work_dir,
        extractor=None if extractor == "recognizer" else extractor,
        geometry=load_geometry_params(yaml_file=opts.config),
        model_configs=_model_configs(opts, vocab),
    )
    write_ablation_csv(results=results, path=opts.out)


def render_grid(
    ckpts: Sequence[str],
    words: Sequence[str],
    n_styles: int,
    seed: int,
    vocab: CharVocabulary,
    enhancer: str = None,
) -> Image.Image:
    """
    Description
    -----------

    This function renders a contact sheet with one band per
    checkpoint; within a band row i holds word i and column j the
    style (noise) stream seed + j, so styles align across bands.

    """

    specs = [map_word(text=w, vocab=vocab) for w in words]
    scale = 1
    bands: List[List[List[Image.Image]]] = []
    for path in ckpts:
        synth = GlyphSynthesizer(vocab=vocab).load(ckpt_path=path)
        band = []
        for spec in specs:
            row = []
            for j in range(n_styles):
                img = synth.generate_text(text=spec.text, seed=seed + j)
                if enhancer is not None:
                    img = enhance(img=img, enhancer_id=enhancer)
                    scale = img.height // SLOT_HEIGHT
                row.append(Image.fromarray(img.pixels))
            band.append(row)
        bands.append(band)
    cell_w = max(SLOT_WIDTH * s.length for s in specs) * scale + GRID_PAD
    cell_h = SLOT_HEIGHT * scale + GRID_PAD
    band_h = cell_h * len(specs) + 2 * GRID_PAD
    sheet = Image.new("L", (cell_w * n_styles + GRID_PAD, band_h * len(bands)), 255)
    for b, band in enumerate(bands):
        for i, row in enumerate(band):
            for j, cell in enumerate(row):
                sheet.paste(cell, (GRID_PAD + j * cell_w, b * band_h + GRID_PAD + i * cell_h))

    return sheet


def _grid(opts: SimpleNamespace) -> None:
    _require(opts, "ckpts", "words", "out")
    words = [w.strip() for w in opts.words.split(",") if w.strip()]
    sheet = render_grid(
        ckpts=opts.ckpts, words=words, n_styles=opts.styles, seed=_seed(opts), vocab=_vocab(opts), enhancer=opts.enhancer
    )
    Path(opts.out).parent.mkdir(parents=True, exist_ok=True)
    sheet.save(opts.out, format="PNG")
    logger.info(msg=f"Wrote contact sheet {opts.out} ({sheet.width} x {sheet.height}).")


def _enhancers(opts: SimpleNamespace) -> None:
    for enhancer_id in list_enhancers():
        print(enhancer_id)


COMMANDS: Dict[str, Callable[[SimpleNamespace], None]] = {
    "synth": _synth,
    "preprocess": _preprocess,
    "augment": _augment,
    "train": _train,
    "generate": _generate,
    "evaluate": _evaluate,
    "ablate": _ablate,
    "grid": _grid,
    "enhancers": _enhancers,
}


def _defaults(command: str) -> Dict:
    """Built-in option defaults; dataset roots follow BEHGAN_DATA_ROOT and
    an unset seed resolves through `_seed`."""

    defaults = {
        "synth": {"n_per_word": 10, "out": _data_root("synth")},
        "preprocess": {"out": _data_root("preprocessed")},
        "augment": {"data": _data_root(), "out": _data_root("augmented")},
        "train": {"data": _data_root(), "out": "checkpoints"},
        "evaluate": {"real": _data_root(), "out": "report.json"},
        "ablate": {"plan": str(parm_path("ablation", "plan.json")), "work_dir": "ablation", "out": "ablation.csv"},
        "grid": {"styles": 4},
    }

    return defaults.get(command, {})


# ----


def main(argv: Sequence[str] = None) -> int:
    """
    Description
    -----------

    This function parses `argv` (the process arguments if NoneType),
    runs the subcommand and returns the exit code.

    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = _options(args, _defaults(args.command))
        COMMANDS[args.command](opts)
    except UsageError:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except BehganError:
        return EXIT_RUNTIME
    except (OSError, ValueError) as errmsg:
        logger.error(msg=f"The {args.command} command failed with error {errmsg}. Aborting!!!")
        return EXIT_RUNTIME

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
