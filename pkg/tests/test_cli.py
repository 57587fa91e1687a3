"""
Tests for the command-line interface.
"""

# ----

import json

import pytest
from PIL import Image

from behgan.checkpoint import checkpoint_name, read_checkpoint
from behgan.cli import build_parser, main, render_grid
from behgan.dataio.manifest import MANIFEST_NAME
from behgan.trainer.loop import TrainConfig, Trainer

# ----

SMALL_CONFIG = """
generator:
  d_z: 8
  channels: [16, 8, 8]
critic:
  channels: [8, 8, 8, 8]
recognizer:
  channels: [8, 8, 16]
train:
  batch_size: 4
  epochs: 2
  checkpoint_every: 1
  seed: 5
geometry:
  n_landmarks: 5
  n_iterations: 2
  i_max: 10
  gamma: 0.5
  min_samples: 5
commands:
  generate:
    seed: 7
"""


@pytest.fixture
def vocab_file(tmp_path):
    path = tmp_path / "latin.tsv"
    path.write_text("".join(f"{k}\t{k}\n" for k in "klmnp"), encoding="utf-8")
    return str(path)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(SMALL_CONFIG, encoding="utf-8")
    return str(path)


@pytest.fixture
def ckpt(tmp_path, latin_vocab, small_generator_config, small_critic_config, small_recognizer_config):
    trainer = Trainer(
        latin_vocab,
        TrainConfig(epochs=1),
        generator_config=small_generator_config,
        critic_config=small_critic_config,
        recognizer_config=small_recognizer_config,
    )
    return str(trainer.save(tmp_path / "ckpts" / checkpoint_name(0)))


def test_help_and_usage_errors():
    assert main(["--help"]) == 0
    assert main([]) == 1
    assert main(["teleport"]) == 1
    assert main(["generate", "--text", "klm"]) == 1


def test_enhancers(capsys):
    assert main(["enhancers"]) == 0
    listed = capsys.readouterr().out.split()
    assert "identity" in listed and "bicubic-unsharp" in listed


def test_generate(ckpt, vocab_file, tmp_path):
    out = tmp_path / "klm.png"
    argv = ["generate", "--vocab", vocab_file, "--text", "klm", "--ckpt", ckpt, "--seed", "7", "--out", str(out)]
    assert main(argv) == 0
    with Image.open(out) as img:
        assert (img.width, img.height, img.mode) == (48, 32, "L")
    assert main(argv[:-1] + [str(tmp_path / "klm_x4.png"), "--enhance", "bicubic-unsharp"]) == 0
    with Image.open(tmp_path / "klm_x4.png") as img:
        assert img.size == (192, 128)


def test_config_file_seed(ckpt, vocab_file, config_file, tmp_path):
    base = ["generate", "--vocab", vocab_file, "--text", "kl", "--ckpt", ckpt]
    assert main(["--config", config_file] + base + ["--out", str(tmp_path / "a.png")]) == 0
    assert main(base + ["--seed", "7", "--out", str(tmp_path / "b.png")]) == 0
    with Image.open(tmp_path / "a.png") as a, Image.open(tmp_path / "b.png") as b:
        assert a.tobytes() == b.tobytes()


def test_runtime_errors(vocab_file, tmp_path):
    argv = ["generate", "--vocab", vocab_file, "--text", "klm", "--ckpt", str(tmp_path / "missing.pt")]
    assert main(argv + ["--out", str(tmp_path / "x.png")]) == 2


def test_unknown_character(ckpt, vocab_file, tmp_path):
    argv = ["generate", "--vocab", vocab_file, "--text", "kxz", "--ckpt", ckpt, "--out", str(tmp_path / "x.png")]
    assert main(argv) == 2


def test_grid(ckpt, latin_vocab, vocab_file, tmp_path):
    sheet = render_grid([ckpt, ckpt], ["k", "kl"], n_styles=3, seed=0, vocab=latin_vocab)
    assert sheet.size == (112, 160)
    out = tmp_path / "grid.png"
    argv = ["grid", "--vocab", vocab_file, "--ckpt", ckpt, "--words", "k,kl", "--styles", "3", "--out", str(out)]
    assert main(argv) == 0
    with Image.open(out) as img:
        assert img.size == (112, 80)


def test_preprocess_train_evaluate(dataset_root, latin_vocab, vocab_file, config_file, tmp_path):
    clean = tmp_path / "clean"
    assert main(["preprocess", "--vocab", vocab_file, "--src", str(dataset_root), "--out", str(clean)]) == 0
    assert (clean / MANIFEST_NAME).is_file()

    ckpts = tmp_path / "ckpts"
    argv = ["--config", config_file, "train", "--vocab", vocab_file, "--data", str(clean), "--out", str(ckpts)]
    assert main(argv + ["--select", str(clean)]) == 0
    assert (ckpts / checkpoint_name(1)).is_file() and (ckpts / checkpoint_name(2)).is_file()
    assert (ckpts / "losses.csv").is_file()
    assert len(list(ckpts.glob("best_epoch_*.json"))) == 1
    assert read_checkpoint(ckpts / checkpoint_name(2), latin_vocab).configs["train"]["seed"] == 5

    report = tmp_path / "report.json"
    argv = ["--config", config_file, "evaluate", "--vocab", vocab_file, "--real", str(clean), "--gen", str(clean)]
    assert main(argv + ["--out", str(report), "--csv", str(tmp_path / "table.csv")]) == 0
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["ssim"] == pytest.approx(1.0)
    assert payload["geometry_score"] == 0.0
    assert (tmp_path / "table.csv").read_text(encoding="utf-8").startswith("Metric,Score")

    argv += ["--extractor", "recognizer"]
    assert main(argv) == 1
    assert main(argv + ["--ckpt", str(ckpts / checkpoint_name(2))]) == 0
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["extractor_id"] == "recognizer"
    assert 0.0 <= payload["recognizer_accuracy"] <= 1.0


def test_parser_subcommands():
    parser = build_parser()
    args = parser.parse_args(["train", "--epochs", "3", "--batch-size", "2"])
    assert (args.command, args.epochs, args.batch_size, args.gamma) == ("train", 3, 2, None)


def test_defaults_without_vocab_config_or_resume(dataset_root, tmp_path):
    ckpts = tmp_path / "ckpts"
    argv = ["train", "--data", str(dataset_root), "--out", str(ckpts), "--epochs", "1", "--batch-size", "8"]
    assert main(argv) == 0
    ckpt = ckpts / checkpoint_name(1)
    assert read_checkpoint(ckpt).configs["train"]["seed"] == 0
    out = tmp_path / "kl.png"
    assert main(["generate", "--text", "kl", "--ckpt", str(ckpt), "--out", str(out)]) == 0
    with Image.open(out) as img:
        assert img.size == (32, 32)


def test_resume_and_seed_flag(dataset_root, latin_vocab, vocab_file, config_file, tmp_path):
    base = ["--config", config_file, "train", "--vocab", vocab_file, "--data", str(dataset_root)]
    assert main(base + ["--out", str(tmp_path / "a"), "--epochs", "1", "--seed", "9"]) == 0
    first = tmp_path / "a" / checkpoint_name(1)
    assert read_checkpoint(first, latin_vocab).configs["train"]["seed"] == 9
    assert main(base + ["--out", str(tmp_path / "b"), "--resume", str(first), "--seed", "9"]) == 0
    assert read_checkpoint(tmp_path / "b" / checkpoint_name(2), latin_vocab).epoch == 2


def test_ablate(dataset_root, vocab_file, config_file, tmp_path):
    base = ["--config", config_file, "ablate", "--vocab", vocab_file, "--work-dir", str(tmp_path / "work")]
    out = ["--out", str(tmp_path / "ablation.csv")]
    assert main(base + ["--plan", str(tmp_path / "missing.json")] + out) == 2
    (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
    assert main(base + ["--plan", str(tmp_path / "broken.json")] + out) == 2

    plan = {
        "seeds": [0],
        "extractor": "pooled",
        "train": {"epochs": 1, "batch_size": 8},
        "base": str(dataset_root),
        "eval": str(dataset_root),
        "variants": [{"label": "Baseline", "stage": "baseline"}],
    }
    (tmp_path / "plan.json").write_text(json.dumps(plan), encoding="utf-8")
    assert main(base + ["--plan", str(tmp_path / "plan.json")] + out) == 0
    lines = (tmp_path / "ablation.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "Configuration,SSIM,FID,GS"
    assert lines[1].startswith("Baseline,")
