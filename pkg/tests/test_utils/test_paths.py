"""Tests for checkpoint and output path conventions."""

from pathlib import Path

from topojscc.model import save_checkpoint
from topojscc.utils.paths import diagram_path, find_checkpoint


class TestFindCheckpoint:
    def test_by_file_name(self, tmp_path, tiny_model):
        path = save_checkpoint(tmp_path / "rho-0.2500.ckpt", tiny_model)
        assert find_checkpoint(tmp_path, 0.25) == path

    def test_short_file_name(self, tmp_path, tiny_model):
        path = save_checkpoint(tmp_path / "rho0.5.ckpt", tiny_model)
        assert find_checkpoint(tmp_path, 0.5) == path

    def test_by_stored_rho(self, tmp_path, tiny_model):
        path = save_checkpoint(tmp_path / "run-a" / "model.ckpt", tiny_model)
        assert find_checkpoint(tmp_path, 0.25) == path
        assert find_checkpoint(tmp_path, 0.5) is None

    def test_skips_unreadable_files(self, tmp_path, tiny_model):
        (tmp_path / "a" / "model.ckpt").parent.mkdir()
        (tmp_path / "a" / "model.ckpt").write_bytes(b"not a zip")
        path = save_checkpoint(tmp_path / "b" / "model.ckpt", tiny_model)
        assert find_checkpoint(tmp_path, 0.25) == path

    def test_empty_directory(self, tmp_path):
        assert find_checkpoint(tmp_path, 0.25) is None


class TestDiagramPath:
    def test_uses_image_stem(self):
        assert diagram_path(Path("out"), Path("images/a.pgm")) == Path("out/a.csv")
