"""Training loop: Adam, annealed topological weights, early stopping."""

import csv
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from topojscc.channel import sample_training_snr, substream
from topojscc.data import Dataset, SyntheticSpec, gen_synthetic, load_images
from topojscc.errors import DomainError
from topojscc.model import JSCCModel, new_model, save_checkpoint
from topojscc.training.config import TrainConfig, dump_config
from topojscc.training.objective import (
    BatchLoss,
    ChannelSetting,
    LossWeights,
    batch_loss,
    mean_loss,
)
from topojscc.training.optim import AdamState, adam_step, anneal

logger = logging.getLogger(__name__)

CHECKPOINT_NAME = "model.ckpt"
LOG_NAME = "train_log.csv"
CONFIG_NAME = "config.txt"
LOG_COLUMNS = [
    "epoch", "lambda_img", "lambda_lat", "mse", "topo_img", "topo_lat", "train_loss",
    "val_mse", "val_loss",
]

# substream tags
STREAM_SHUFFLE = 1
STREAM_SNR = 2
STREAM_CHANNEL = 3
STREAM_VALIDATION = 4


@dataclass
class EpochRecord:
    epoch: int
    weights: LossWeights
    train: BatchLoss
    validation: BatchLoss

    def row(self) -> list[str]:
        return [
            str(self.epoch),
            repr(self.weights.lambda_img),
            repr(self.weights.lambda_lat),
            repr(self.train.mse),
            repr(self.train.topo_img),
            repr(self.train.topo_lat),
            repr(self.train.total),
            repr(self.validation.mse),
            repr(self.validation.total),
        ]


@dataclass
class TrainResult:
    model: JSCCModel
    checkpoint_path: Path | None
    log_path: Path | None
    best_epoch: int
    best_val_loss: float
    history: list[EpochRecord] = field(default_factory=list)
    stopped_early: bool = False


def load_dataset(config: TrainConfig) -> Dataset:
    """Directory/file of PGMs, or ``synthetic:<kind>``."""
    if config.is_synthetic:
        spec = SyntheticSpec(config.synthetic_kind, config.synthetic_count, config.image_size,
                             config.image_size, config.seed, config.synthetic_shapes)
        return gen_synthetic(spec)
    return load_images(config.dataset, config.seed)


def epoch_weights(config: TrainConfig, epoch: int) -> LossWeights:
    return LossWeights(anneal(config.lambda_img, epoch, config.anneal_t),
                       anneal(config.lambda_lat, epoch, config.anneal_t))


def _batches(n: int, batch_size: int, order: np.ndarray) -> list[np.ndarray]:
    """Consecutive slices of ``order``; a trailing batch of one image is dropped."""
    batches = [order[i:i + batch_size] for i in range(0, n, batch_size)]
    if len(batches) > 1 and len(batches[-1]) < 2:
        batches.pop()
    return batches


def validation_loss(model: JSCCModel, data: Dataset, config: TrainConfig,
                    weights: LossWeights) -> BatchLoss:
    """Total loss on the validation set with a fixed noise stream per batch."""
    losses = []
    for b, idx in enumerate(_batches(len(data), config.batch_size, np.arange(len(data)))):
        snr = sample_training_snr(substream(config.seed, STREAM_VALIDATION, b), config.training_snrs)
        channel = ChannelSetting(config.channel, snr, config.seed, (STREAM_VALIDATION, b), config.csi)
        # a lone validation image has no latent cloud
        used = weights if len(idx) >= 2 else LossWeights(weights.lambda_img, 0.0)
        losses.append(batch_loss(model, data.images[idx], channel, used, config.topo_p,
                                 config.track_topology, compute_grads=False,
                                 max_workers=config.workers))
    return mean_loss(losses, weights)


def format_log(history: list[EpochRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(LOG_COLUMNS)
    for record in history:
        writer.writerow(record.row())
    return buf.getvalue()


def train(config: TrainConfig, dataset: Dataset | None = None,
          out_dir: str | Path | None = None) -> TrainResult:
    """Train a model for ``config``.

    Writes ``model.ckpt`` (best validation loss), ``train_log.csv`` and
    ``config.txt`` to ``out_dir`` when given.

    Raises:
        DomainError: empty dataset or inconsistent image shape.
    """
    data = dataset if dataset is not None else load_dataset(config)
    if len(data) == 0:
        raise DomainError("dataset is empty")
    if config.batch_size < 2:
        raise DomainError(f"batch size must be at least 2, got {config.batch_size}")
    train_set, val_set = data.split(config.validation_fraction, config.seed)
    if len(train_set) < 2:
        raise DomainError("dataset needs at least 2 training images")
    height, width = data.shape
    model = new_model(config.seed, config.rho, (height, width), config.power)
    logger.info(
        "training on %d images (%d validation), %dx%d, rho=%.4f realized=%.4f (k=%d)",
        len(train_set), len(val_set), height, width, config.rho, model.spec.realized_rho, model.spec.k,
    )

    out = Path(out_dir) if out_dir is not None else None
    ckpt_path = log_path = None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / CONFIG_NAME).write_text(dump_config(config))
        ckpt_path, log_path = out / CHECKPOINT_NAME, out / LOG_NAME

    state = AdamState()
    params = model.parameters()
    history: list[EpochRecord] = []
    best_val, best_epoch, stale = np.inf, -1, 0
    best_model = model
    stopped = False

    for epoch in range(config.max_epochs):
        weights = epoch_weights(config, epoch)
        order = substream(config.seed, STREAM_SHUFFLE, epoch).permutation(len(train_set))
        snr_rng = substream(config.seed, STREAM_SNR, epoch)
        losses = []
        for b, idx in enumerate(_batches(len(train_set), config.batch_size, order)):
            snr = sample_training_snr(snr_rng, config.training_snrs)
            channel = ChannelSetting(config.channel, snr, config.seed,
                                     (STREAM_CHANNEL, epoch, b), config.csi)
            result = batch_loss(model, train_set.images[idx], channel, weights, config.topo_p,
                                config.track_topology, max_workers=config.workers)
            for issue in result.issues:
                logger.debug("epoch %d batch %d: %s", epoch, b, issue.message)
            params, state = adam_step(params, result.grads, state, config.learning_rate)
            model = model.with_parameters(params)
            params = model.parameters()
            losses.append(result)

        val = validation_loss(model, val_set, config, weights)
        record = EpochRecord(epoch, weights, mean_loss(losses), val)
        history.append(record)
        logger.info("epoch %d: train=%.6g mse=%.6g val=%.6g", epoch, record.train.total,
                    record.train.mse, val.total)

        if val.total < best_val:
            best_val, best_epoch, stale = val.total, epoch, 0
            best_model = model
            if ckpt_path is not None:
                save_checkpoint(ckpt_path, model, {"epoch": epoch, "val_loss": val.total})
        else:
            stale += 1
            if stale >= config.patience:
                logger.info("early stop at epoch %d (best epoch %d)", epoch, best_epoch)
                stopped = True
                break

        if log_path is not None:
            log_path.write_text(format_log(history))

    if log_path is not None:
        log_path.write_text(format_log(history))
    return TrainResult(best_model, ckpt_path, log_path, best_epoch, float(best_val), history, stopped)
