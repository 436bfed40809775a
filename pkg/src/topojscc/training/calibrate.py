"""Loss-weight selection: magnitude calibration, a small grid search, ablation runs."""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from topojscc.data import Dataset
from topojscc.errors import DomainError
from topojscc.model import JSCCModel
from topojscc.presets import ABLATION_ORDER, apply_preset
from topojscc.training.config import TrainConfig
from topojscc.training.evaluate import SweepRecord, evaluate_sweep
from topojscc.training.objective import ChannelSetting, LossWeights, batch_loss
from topojscc.training.trainer import train

logger = logging.getLogger(__name__)

DEFAULT_FRACTION = 0.01
DEFAULT_FACTORS = (0.5, 1.0, 2.0)
STREAM_CALIBRATE = 21


@dataclass
class CalibrationReport:
    """Unweighted loss magnitudes on one batch and the weights they suggest."""
    mse: float
    topo_img: float
    topo_lat: float
    lambda_img: float
    lambda_lat: float
    fraction: float
    batch_size: int

    def as_lines(self) -> list[str]:
        return [
            f"mse = {self.mse!r}",
            f"topo_img = {self.topo_img!r}",
            f"topo_lat = {self.topo_lat!r}",
            f"lambda_img = {self.lambda_img!r}",
            f"lambda_lat = {self.lambda_lat!r}",
        ]


def _recommend(mse: float, term: float, fraction: float) -> float:
    if term <= 0.0 or not math.isfinite(term):
        return 0.0
    return fraction * mse / term


def calibrate(model: JSCCModel, dataset: Dataset, kind: str = "awgn", snr_db: float = 10.0,
              seed: int = 0, fraction: float = DEFAULT_FRACTION, batch_size: int = 32,
              p: float = 2.0) -> CalibrationReport:
    """Measure the three loss terms on a validation batch.

    Each recommended weight makes its weighted term ``fraction`` of the MSE.
    """
    if len(dataset) < 2:
        raise DomainError("calibration needs at least 2 images")
    if not 0.0 < fraction:
        raise DomainError(f"fraction must be positive, got {fraction}")
    images = dataset.images[:batch_size]
    channel = ChannelSetting(kind, snr_db, seed, (STREAM_CALIBRATE,))
    result = batch_loss(model, images, channel, LossWeights(), p, track_topology=True,
                        compute_grads=False)
    report = CalibrationReport(
        result.mse, result.topo_img, result.topo_lat,
        _recommend(result.mse, result.topo_img, fraction),
        _recommend(result.mse, result.topo_lat, fraction),
        fraction, len(images),
    )
    logger.info("calibration: mse=%.6g topo_img=%.6g topo_lat=%.6g", report.mse,
                report.topo_img, report.topo_lat)
    return report


@dataclass
class GridPoint:
    lambda_img: float
    lambda_lat: float
    psnr_db: float
    wdist_total: float
    score: float


@dataclass
class GridSearchResult:
    best: GridPoint
    table: list[GridPoint] = field(default_factory=list)


def grid_search(config: TrainConfig, dataset: Dataset, factors: Sequence[float] = DEFAULT_FACTORS,
                epochs: int | None = None, snr_db: float = 10.0,
                psnr_weight: float = 0.1) -> GridSearchResult:
    """Train short runs on every (f_i * lambda_img, f_j * lambda_lat) and score them.

    score = wdist_total - psnr_weight * psnr on the validation split; lower wins.
    """
    train_set, val_set = dataset.split(config.validation_fraction, config.seed)
    base = replace(config, max_epochs=epochs or config.max_epochs)
    table = []
    img_factors = factors if config.lambda_img > 0 else (0.0,)
    lat_factors = factors if config.lambda_lat > 0 else (0.0,)
    for fi in img_factors:
        for fj in lat_factors:
            run = replace(base, lambda_img=config.lambda_img * fi, lambda_lat=config.lambda_lat * fj)
            result = train(run, train_set)
            record = evaluate_sweep(result.model, "snr", [snr_db], val_set, run.channel,
                                    seed=run.seed, csi=run.csi, p=run.topo_p, max_workers=1)[0]
            psnr = record.psnr_db if math.isfinite(record.psnr_db) else 100.0
            point = GridPoint(run.lambda_img, run.lambda_lat, record.psnr_db, record.wdist_total,
                              record.wdist_total - psnr_weight * psnr)
            logger.info("grid point img=%.3g lat=%.3g: score=%.6g", point.lambda_img,
                        point.lambda_lat, point.score)
            table.append(point)
    best = min(table, key=lambda g: g.score)
    return GridSearchResult(best, table)


@dataclass
class AblationRow:
    preset: str
    seed: int
    record: SweepRecord


def ablation(config: TrainConfig, dataset: Dataset, seeds: Sequence[int] = (0,),
             snr_db: float = 0.0, presets: Sequence[str] = ABLATION_ORDER) -> list[AblationRow]:
    """Train and evaluate each preset row for every seed at ``snr_db``."""
    rows = []
    for name in presets:
        for seed in seeds:
            run = replace(apply_preset(config, name), seed=int(seed))
            train_set, test_set = dataset.split(run.validation_fraction, run.seed)
            result = train(run, train_set)
            record = evaluate_sweep(result.model, "snr", [snr_db], test_set, run.channel,
                                    seed=run.seed, csi=run.csi, p=run.topo_p, max_workers=1)[0]
            logger.info("ablation %s seed %d: psnr=%.3f wdist=%.4f", name, seed,
                        record.psnr_db, record.wdist_total)
            rows.append(AblationRow(name, int(seed), record))
    return rows


def ablation_means(rows: Sequence[AblationRow]) -> dict[str, dict[str, float]]:
    """Per-preset mean PSNR and Wasserstein total over seeds."""
    out: dict[str, dict[str, float]] = {}
    for name in dict.fromkeys(r.preset for r in rows):
        subset = [r.record for r in rows if r.preset == name]
        out[name] = {
            "psnr_db": float(np.mean([r.psnr_db for r in subset])),
            "wdist_total": float(np.mean([r.wdist_total for r in subset])),
        }
    return out
