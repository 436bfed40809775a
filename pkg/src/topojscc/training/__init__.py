"""Objective, optimizer, training loop, evaluation and weight selection."""

from topojscc.training.config import (
    TrainConfig,
    dump_config,
    load_config,
    parse_config_text,
    save_config,
)
from topojscc.training.optim import AdamState, adam_step, anneal
from topojscc.training.objective import (
    BatchLoss,
    ChannelSetting,
    LossWeights,
    Pipeline,
    batch_loss,
    build_pipeline,
    mean_loss,
    reconstruct,
)
from topojscc.training.trainer import TrainResult, epoch_weights, load_dataset, train
from topojscc.training.evaluate import (
    BANDWIDTH_SWEEP_SNR_DB,
    SWEEP_COLUMNS,
    SweepAxis,
    SweepRecord,
    evaluate_model,
    evaluate_sweep,
    psnr,
    read_sweep_csv,
    summarize,
    write_sweep_csv,
)
from topojscc.training.calibrate import (
    AblationRow,
    CalibrationReport,
    GridSearchResult,
    ablation,
    ablation_means,
    calibrate,
    grid_search,
)

__all__ = [
    "BANDWIDTH_SWEEP_SNR_DB",
    "TrainConfig",
    "dump_config",
    "load_config",
    "parse_config_text",
    "save_config",
    "AdamState",
    "adam_step",
    "anneal",
    "BatchLoss",
    "ChannelSetting",
    "LossWeights",
    "Pipeline",
    "batch_loss",
    "build_pipeline",
    "mean_loss",
    "reconstruct",
    "TrainResult",
    "epoch_weights",
    "load_dataset",
    "train",
    "SWEEP_COLUMNS",
    "SweepAxis",
    "SweepRecord",
    "evaluate_model",
    "evaluate_sweep",
    "psnr",
    "read_sweep_csv",
    "summarize",
    "write_sweep_csv",
    "AblationRow",
    "CalibrationReport",
    "GridSearchResult",
    "ablation",
    "ablation_means",
    "calibrate",
    "grid_search",
]
