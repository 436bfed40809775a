"""Tests for PSNR, sweeps and sweep CSV files."""

import math

import numpy as np
import pytest

from topojscc.errors import DomainError, FormatError
from topojscc.model import new_model, save_checkpoint
from topojscc.training import (
    SWEEP_COLUMNS,
    SweepRecord,
    evaluate_sweep,
    psnr,
    read_sweep_csv,
    summarize,
    write_sweep_csv,
)
from topojscc.training.evaluate import image_metrics


@pytest.fixture(scope="module")
def model():
    return new_model(seed=1, rho=0.25, image_shape=(16, 16))


class TestPsnr:
    def test_uniform_error_tenth(self):
        assert psnr(np.zeros((4, 4)), np.full((4, 4), 0.1)) == pytest.approx(20.0)

    def test_identical_images(self):
        assert psnr(np.ones(3), np.ones(3)) == math.inf

    def test_uniform_error_one(self):
        assert psnr(np.zeros(5), np.ones(5)) == 0.0


class TestImageMetrics:
    def test_identical_images(self, annulus):
        value, w0, w1 = image_metrics(annulus, annulus)
        assert value == math.inf
        assert (w0, w1) == (0.0, 0.0)

    def test_lost_hole(self, annulus):
        filled = annulus.copy()
        filled[3:5, 3:5] = 1.0
        _, _, w1 = image_metrics(annulus, filled)
        assert w1 == pytest.approx(0.5)


class TestEvaluateSweep:
    def test_rows_per_value_and_run(self, model, ring_images):
        values = [0, 5, 10, 15, 20]
        records = evaluate_sweep(model, "snr", values, ring_images, n_runs=2, seed=4, max_workers=2)
        assert len(records) == 10
        assert [(r.value, r.seed) for r in records] == [(float(v), 4 + run) for v in values for run in (0, 1)]
        assert all(r.wdist_total == pytest.approx(r.wdist0 + r.wdist1) for r in records)

    def test_same_seed_same_records(self, model, ring_images):
        a = evaluate_sweep(model, "snr", [5.0], ring_images, kind="rayleigh", seed=3)
        b = evaluate_sweep(model, "snr", [5.0], ring_images, kind="rayleigh", seed=3)
        assert a == b

    def test_bandwidth_sweep(self, tmp_path, ring_images):
        paths = {}
        for rho in (0.25, 0.5):
            paths[rho] = save_checkpoint(tmp_path / f"rho-{rho}.ckpt", new_model(0, rho, (16, 16)))
        records = evaluate_sweep(paths, "bw", [0.25, 0.5], ring_images, snr_db=10.0)
        assert [r.axis for r in records] == ["bw", "bw"]
        assert [r.value for r in records] == [0.25, 0.5]

    def test_bandwidth_sweep_default_snr(self, model, ring_images):
        default = evaluate_sweep({0.25: model}, "bw", [0.25], ring_images, seed=2)
        at_15 = evaluate_sweep({0.25: model}, "bw", [0.25], ring_images, seed=2, snr_db=15.0)
        at_10 = evaluate_sweep({0.25: model}, "bw", [0.25], ring_images, seed=2, snr_db=10.0)
        assert default == at_15
        assert default[0].psnr_db != at_10[0].psnr_db

    def test_missing_rho_checkpoint(self, tmp_path, model, ring_images):
        paths = {0.25: save_checkpoint(tmp_path / "a.ckpt", model)}
        with pytest.raises(FormatError, match="no checkpoint for rho=0.5"):
            evaluate_sweep(paths, "bw", [0.25, 0.5], ring_images)

    def test_unknown_axis(self, model, ring_images):
        with pytest.raises(DomainError, match="unknown sweep axis"):
            evaluate_sweep(model, "time", [1.0], ring_images)


class TestSweepCsv:
    def test_round_trip_with_infinity(self, tmp_path):
        records = [SweepRecord("snr", 0.0, math.inf, 0.0, 0.0, 0.0, 1),
                   SweepRecord("snr", 5.0, 21.5, 0.25, 0.5, 0.75, 1)]
        path = write_sweep_csv(tmp_path / "sweep.csv", records)
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert lines[1] == "snr,0.0,inf,0.0,0.0,0.0,1"
        assert read_sweep_csv(path) == records

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n")
        with pytest.raises(FormatError):
            read_sweep_csv(path)

    def test_summarize(self):
        records = [SweepRecord("snr", 0.0, 20.0, 0.1, 0.1, 0.2, 0),
                   SweepRecord("snr", 0.0, 22.0, 0.2, 0.2, 0.4, 1)]
        summary = summarize(records)[0.0]
        assert summary["psnr_db"] == pytest.approx(21.0)
        assert summary["wdist_total"] == pytest.approx(0.3)
        assert summary["runs"] == 2
