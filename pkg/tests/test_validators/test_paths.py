"""Tests for dataset, checkpoint and output directory checks."""

import numpy as np

from topojscc.data import save_pgm
from topojscc.validators import IssueLevel, validate_checkpoints, validate_dataset, validate_output_dir


class TestValidateDataset:
    def test_synthetic_spec_skipped(self):
        assert validate_dataset("synthetic:blobs") == []

    def test_missing(self, tmp_path):
        issues = validate_dataset(tmp_path / "nope")
        assert issues[0].code == "NO_DATASET"

    def test_directory_without_images(self, tmp_path):
        (tmp_path / "readme.txt").write_text("x")
        assert validate_dataset(tmp_path)[0].code == "EMPTY_DATASET"

    def test_directory_with_images(self, pgm_dir):
        assert validate_dataset(pgm_dir) == []

    def test_file_with_other_suffix(self, tmp_path):
        path = save_pgm(tmp_path / "image.pgm", np.zeros((2, 2), dtype=np.uint8))
        renamed = path.rename(tmp_path / "image.raw")
        issues = validate_dataset(renamed)
        assert issues[0].level == IssueLevel.WARNING
        assert issues[0].code == "UNEXPECTED_SUFFIX"


class TestValidateCheckpoints:
    def test_reports_only_missing(self, tmp_path):
        present = tmp_path / "rho-0.2500.ckpt"
        present.write_bytes(b"")
        issues = validate_checkpoints([present, tmp_path / "rho-0.5000.ckpt"])
        assert len(issues) == 1
        assert "rho-0.5000.ckpt" in issues[0].message


class TestValidateOutputDir:
    def test_new_directory(self, tmp_path):
        assert validate_output_dir(tmp_path / "a" / "b") == []

    def test_existing_file(self, tmp_path):
        blocker = tmp_path / "out"
        blocker.write_text("x")
        assert validate_output_dir(blocker)[0].code == "OUT_NOT_DIR"

    def test_non_empty_warns(self, tmp_path):
        (tmp_path / "log.csv").write_text("x")
        issues = validate_output_dir(tmp_path)
        assert issues[0].code == "OUT_NOT_EMPTY"
        assert issues[0].level == IssueLevel.WARNING
