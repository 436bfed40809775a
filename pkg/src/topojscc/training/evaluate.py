"""SNR and bandwidth sweeps with PSNR and diagram-distance metrics."""

import csv
import io
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from topojscc.data import Dataset
from topojscc.errors import DomainError, FormatError, ShapeError
from topojscc.metrics import diagram_distances
from topojscc.model import JSCCModel, load_checkpoint
from topojscc.ph import cubical_diagram, snap_to_grid
from topojscc.training.objective import ChannelSetting, reconstruct
from topojscc.utils.executor import run_work_items

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["axis", "value", "psnr_db", "wdist0", "wdist1", "wdist_total", "seed"]
THRESHOLD_LEVELS = 64
BANDWIDTH_SWEEP_SNR_DB = 15.0
STREAM_EVAL = 11


class SweepAxis(str, Enum):
    SNR = "snr"
    BW = "bw"


def sweep_axis(axis: "SweepAxis | str") -> SweepAxis:
    try:
        return SweepAxis(str(getattr(axis, "value", axis)).lower())
    except ValueError:
        raise DomainError(f"unknown sweep axis '{axis}' (expected snr or bw)") from None


def psnr(x, xhat) -> float:
    """10 log10(1 / MSE) for peak value 1.0; identical images give ``math.inf``."""
    x = np.asarray(x, dtype=np.float64)
    xhat = np.asarray(xhat, dtype=np.float64)
    if x.shape != xhat.shape:
        raise ShapeError(f"psnr shape mismatch: {x.shape} vs {xhat.shape}")
    mse = float(np.mean((x - xhat) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


@dataclass(frozen=True)
class SweepRecord:
    """Metrics of one (axis value, run) work item, averaged over the test images."""
    axis: str
    value: float
    psnr_db: float
    wdist0: float
    wdist1: float
    wdist_total: float
    seed: int

    def row(self) -> list[str]:
        return [self.axis, _fmt(self.value), _fmt(self.psnr_db), _fmt(self.wdist0),
                _fmt(self.wdist1), _fmt(self.wdist_total), str(self.seed)]


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def image_metrics(x: np.ndarray, xhat: np.ndarray, p: float = 2.0,
                  levels: int = THRESHOLD_LEVELS) -> tuple[float, float, float]:
    """(psnr, wdist dim 0, wdist dim 1) for one image pair on the snapped grid."""
    d_ref = cubical_diagram(snap_to_grid(x, levels))
    d_rec = cubical_diagram(snap_to_grid(xhat, levels))
    dist = diagram_distances(d_ref, d_rec, p)
    return psnr(x, xhat), dist[0], dist[1]


def _mean_psnr(values: Sequence[float]) -> float:
    """Mean over images; infinite only when every image is reconstructed exactly."""
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        return math.inf
    if len(finite) < len(values):
        # exact images count at the best finite value seen
        finite = finite + [max(finite)] * (len(values) - len(finite))
    return float(np.mean(finite))


def evaluate_model(model: JSCCModel, images: np.ndarray, channel: ChannelSetting,
                   p: float = 2.0, levels: int = THRESHOLD_LEVELS,
                   batch_size: int = 32) -> tuple[float, float, float]:
    """Mean PSNR and mean per-dimension Wasserstein distance over ``images``."""
    psnrs, w0, w1 = [], [], []
    for start in range(0, len(images), batch_size):
        chunk = images[start:start + batch_size]
        path = (*channel.path, start // batch_size)
        xhat = reconstruct(model, chunk, ChannelSetting(channel.kind, channel.snr_db, channel.seed,
                                                          path, channel.csi))
        for x, y in zip(chunk, xhat):
            a, b, c = image_metrics(x, y, p, levels)
            psnrs.append(a)
            w0.append(b)
            w1.append(c)
    return _mean_psnr(psnrs), float(np.mean(w0)), float(np.mean(w1))


def _load(checkpoint) -> JSCCModel:
    if isinstance(checkpoint, JSCCModel):
        return checkpoint
    return load_checkpoint(checkpoint).model


def resolve_checkpoints(checkpoints, axis: SweepAxis, values: Sequence[float]) -> dict[float, JSCCModel]:
    """One model per axis value: the same model for SNR sweeps, one per rho for BW sweeps."""
    if axis is SweepAxis.SNR:
        if isinstance(checkpoints, Mapping):
            if len(checkpoints) != 1:
                raise DomainError("an SNR sweep evaluates exactly one checkpoint")
            checkpoints = next(iter(checkpoints.values()))
        model = _load(checkpoints)
        return {v: model for v in values}
    if not isinstance(checkpoints, Mapping):
        raise DomainError("a bandwidth sweep needs one checkpoint per rho")
    models = {}
    for v in values:
        match = next((c for r, c in checkpoints.items() if math.isclose(float(r), v, abs_tol=1e-9)), None)
        if match is None:
            raise FormatError(f"no checkpoint for rho={v}")
        models[v] = _load(match)
    return models


def evaluate_sweep(checkpoints, axis: SweepAxis | str, values: Sequence[float], dataset: Dataset,
                   kind: str = "awgn", n_runs: int = 1, seed: int = 0,
                   snr_db: float = BANDWIDTH_SWEEP_SNR_DB, csi: bool = False, p: float = 2.0,
                   levels: int = THRESHOLD_LEVELS, max_workers: int | None = None) -> list[SweepRecord]:
    """Evaluate along one axis; records come in (value, run) order.

    Args:
        checkpoints: A checkpoint path or model for an SNR sweep; a mapping
            rho -> checkpoint for a bandwidth sweep.
        axis: "snr" or "bw".
        values: SNRs in dB, or rho values.
        dataset: Test images.
        kind: Channel kind.
        n_runs: Independent noise realizations per value; run r uses seed + r.
        seed: Base seed.
        snr_db: Fixed SNR of a bandwidth sweep.
        csi: Perfect-CSI receiver.
        p: Wasserstein order.
        levels: Threshold grid used for the diagrams.
        max_workers: Worker threads over (value, run) items.

    Raises:
        FormatError: a requested rho has no checkpoint.
    """
    axis = sweep_axis(axis)
    if len(dataset) == 0:
        raise DomainError("dataset is empty")
    if n_runs < 1:
        raise DomainError(f"n_runs must be at least 1, got {n_runs}")
    values = [float(v) for v in values]
    models = resolve_checkpoints(checkpoints, axis, values)
    items = [(i, v, run) for i, v in enumerate(values) for run in range(n_runs)]

    def work(item) -> SweepRecord:
        i, value, run = item
        run_seed = seed + run
        snr = value if axis is SweepAxis.SNR else snr_db
        channel = ChannelSetting(kind, snr, run_seed, (STREAM_EVAL, i), csi)
        mean_psnr, w0, w1 = evaluate_model(models[value], dataset.images, channel, p, levels)
        logger.info("%s=%s run %d: psnr=%.3f wdist=%.4f", axis.value, value, run, mean_psnr, w0 + w1)
        return SweepRecord(axis.value, value, mean_psnr, w0, w1, w0 + w1, run_seed)

    return run_work_items(work, items, max_workers)


def summarize(records: Sequence[SweepRecord]) -> dict[float, dict[str, float]]:
    """Mean and standard deviation across runs for every axis value."""
    grouped: dict[float, list[SweepRecord]] = {}
    for r in records:
        grouped.setdefault(r.value, []).append(r)
    summary = {}
    for value, rows in grouped.items():
        psnrs = np.array([r.psnr_db for r in rows])
        totals = np.array([r.wdist_total for r in rows])
        summary[value] = {
            "psnr_db": float(np.mean(psnrs)),
            "psnr_std": float(np.std(psnrs)) if np.all(np.isfinite(psnrs)) else 0.0,
            "wdist_total": float(np.mean(totals)),
            "wdist_std": float(np.std(totals)),
            "runs": len(rows),
        }
    return summary


def sweep_csv(records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()


def write_sweep_csv(path: str | Path, records: Sequence[SweepRecord]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(sweep_csv(records))
    return path


def read_sweep_csv(path: str | Path) -> list[SweepRecord]:
    path = Path(path)
    rows = list(csv.reader(io.StringIO(path.read_text())))
    if not rows or rows[0] != SWEEP_COLUMNS:
        raise FormatError(f"{path}: expected sweep CSV header {','.join(SWEEP_COLUMNS)}")
    try:
        return [SweepRecord(r[0], float(r[1]), float(r[2]), float(r[3]), float(r[4]), float(r[5]), int(r[6]))
                for r in rows[1:]]
    except (IndexError, ValueError) as e:
        raise FormatError(f"{path}: malformed sweep row: {e}") from e
