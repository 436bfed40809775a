"""Tests for the topojscc command."""

import csv

import pytest

from topojscc.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, build_parser, main
from topojscc.data import save_pgm
from topojscc.model import save_checkpoint
from topojscc.training import parse_config_text


@pytest.fixture
def image_dir(tmp_path, annulus, distinct_image):
    directory = tmp_path / "images"
    save_pgm(directory / "a.pgm", annulus)
    save_pgm(directory / "b.pgm", distinct_image)
    return directory


class TestPhAndWdist:
    def test_identical_diagrams_have_zero_distance(self, image_dir, tmp_path, capsys):
        out = tmp_path / "diagrams"
        assert main(["ph", str(image_dir / "a.pgm"), "--out", str(out)]) == EXIT_OK
        csv_path = out / "a.csv"
        assert csv_path.is_file()
        capsys.readouterr()

        assert main(["wdist", str(csv_path), str(csv_path)]) == EXIT_OK
        assert "total = 0.0" in capsys.readouterr().out.splitlines()

    def test_generated_images_get_one_csv_each(self, tmp_path):
        images = tmp_path / "gen"
        assert main(["gen", "--kind", "rings", "--count", "4", "--size", "16", "--shapes", "1",
                     "--out", str(images)]) == EXIT_OK
        pgms = sorted(images.glob("*.pgm"))
        assert len(pgms) == 4

        out = tmp_path / "diagrams"
        assert main(["ph", *map(str, pgms), "--out", str(out)]) == EXIT_OK
        assert len(list(out.glob("*.csv"))) == 4

    def test_gen_writes_betti_table(self, tmp_path):
        assert main(["gen", "--kind", "blobs", "--count", "2", "--size", "16", "--shapes", "1",
                     "--out", str(tmp_path)]) == EXIT_OK
        rows = list(csv.reader((tmp_path / "betti.csv").open()))
        assert rows == [["file", "betti0", "betti1"],
                        ["blobs-00000.pgm", "1", "0"], ["blobs-00001.pgm", "1", "0"]]

    def test_dimension_columns_are_reported(self, image_dir, tmp_path, capsys):
        out = tmp_path / "d"
        main(["ph", str(image_dir / "a.pgm"), str(image_dir / "b.pgm"), "--out", str(out)])
        capsys.readouterr()
        main(["wdist", str(out / "a.csv"), str(out / "b.csv"), "--p", "1"])
        lines = capsys.readouterr().out.splitlines()
        assert [line.split(" = ")[0] for line in lines] == ["dim0", "dim1", "total"]


class TestEval:
    def test_snr_sweep_rows(self, image_dir, tiny_model, tmp_path, capsys):
        checkpoint = save_checkpoint(tmp_path / "rho-0.2500.ckpt", tiny_model)
        out = tmp_path / "eval"
        code = main(["eval", "--checkpoint", str(checkpoint), "--values", "0,5,10,15,20",
                     "--dataset", str(image_dir), "--out", str(out)])

        assert code == EXIT_OK
        rows = (out / "sweep-snr.csv").read_text().splitlines()
        assert rows[0] == "axis,value,psnr_db,wdist0,wdist1,wdist_total,seed"
        assert len(rows) == 6

    def test_bandwidth_sweep_needs_every_rho(self, image_dir, tiny_model, tmp_path, capsys):
        save_checkpoint(tmp_path / "ckpts" / "rho-0.2500.ckpt", tiny_model)
        code = main(["eval", "--axis", "bw", "--checkpoint-dir", str(tmp_path / "ckpts"),
                     "--values", "0.25,0.5", "--dataset", str(image_dir), "--out", str(tmp_path)])

        assert code == EXIT_DOMAIN
        assert "no checkpoint for rho=0.5" in capsys.readouterr().err

    def test_bandwidth_sweep_snr_defaults_to_15_db(self):
        args = build_parser().parse_args(["eval", "--axis", "bw", "--values", "0.25"])
        assert args.snr == 15.0

    def test_snr_sweep_needs_checkpoint(self, image_dir, tmp_path, capsys):
        code = main(["eval", "--values", "0", "--dataset", str(image_dir), "--out", str(tmp_path)])
        assert code == EXIT_DOMAIN
        assert "--checkpoint" in capsys.readouterr().err


class TestCalibrate:
    def test_writes_report(self, image_dir, tiny_model, tmp_path, capsys):
        checkpoint = save_checkpoint(tmp_path / "m.ckpt", tiny_model)
        code = main(["calibrate", "--checkpoint", str(checkpoint), "--dataset", str(image_dir),
                     "--out", str(tmp_path / "cal")])

        assert code == EXIT_OK
        lines = (tmp_path / "cal" / "calibration.txt").read_text().splitlines()
        assert [line.split(" = ")[0] for line in lines] == [
            "mse", "topo_img", "topo_lat", "lambda_img", "lambda_lat"]


class TestTrain:
    def test_train_from_config_file(self, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text(
            "# small run\n"
            "synthetic_count = 6\n"
            "synthetic_shapes = 1\n"
            "image_size = 16\n"
            "batch_size = 3\n"
            "max_epochs = 1\n"
            "validation_fraction = 0.2\n"
        )
        out = tmp_path / "run"
        assert main(["train", "--config", str(config), "--preset", "topojscc", "--out", str(out)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == str(out / "model.ckpt")
        assert (out / "model.ckpt").is_file()


class TestConfigHandling:
    def test_dump_config_round_trip(self, capsys):
        assert main(["train", "--dump-config", "--rho", "0.5", "--preset", "topo-img"]) == EXIT_OK
        config = parse_config_text(capsys.readouterr().out)
        assert config.rho == 0.5
        assert config.lambda_img == 1e-4
        assert config.lambda_lat == 0.0

    def test_flags_override_config_file(self, tmp_path, capsys):
        path = tmp_path / "c.cfg"
        path.write_text("rho = 0.1\nbatch_size = 8\n")
        main(["train", "--config", str(path), "--batch-size", "4", "--dump-config"])
        config = parse_config_text(capsys.readouterr().out)
        assert (config.rho, config.batch_size) == (0.1, 4)

    def test_bad_config_is_diagnosed(self, tmp_path, capsys):
        path = tmp_path / "c.cfg"
        path.write_text("lamda_img = 1\n")
        assert main(["train", "--config", str(path), "--dump-config"]) == EXIT_DOMAIN
        err = capsys.readouterr().err
        assert err.startswith("Invalid configuration")
        assert "unknown key 'lamda_img'" in err


class TestUsage:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["transmogrify"])
        assert exc.value.code == EXIT_USAGE

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == EXIT_USAGE

    def test_missing_input_exits_with_domain_code(self, tmp_path, capsys):
        code = main(["ph", str(tmp_path / "missing.pgm"), "--out", str(tmp_path)])
        assert code == EXIT_DOMAIN
        assert "does not exist" in capsys.readouterr().err


class TestGradcheck:
    def test_every_suite_passes(self, capsys):
        assert main(["gradcheck"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines
        assert all(line.startswith("ok") for line in lines)
