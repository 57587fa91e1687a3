"""
Adversarial training, checkpoint selection and the ablation harness.
"""

from behgan.trainer.ablation import (
    AblationResult,
    AblationVariant,
    build_training_set,
    oversample,
    read_ablation_plan,
    run_ablation,
    write_ablation_csv,
)
from behgan.trainer.loop import LossRecord, TrainConfig, Trainer, load_train_config, read_loss_csv, write_loss_csv
from behgan.trainer.selection import rank_reports, render_eval_set, select_best_epoch
