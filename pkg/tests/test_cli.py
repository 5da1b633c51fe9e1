import json

import pytest

from sgtree.cli import main


def test_ztable_build_and_sample_round_trip(tmp_path):
    table_path = str(tmp_path / "u.sgtz")
    rc = main(
        [
            "ztable",
            "--weights",
            '{"family": "uniform"}',
            "--nmax",
            "12",
            "--exact-upto",
            "6",
            "--out",
            table_path,
            "--dump-csv",
            str(tmp_path / "u.csv"),
        ]
    )
    assert rc == 0
    assert (tmp_path / "u.csv").read_text().startswith("N,n,logZ")

    out = str(tmp_path / "trees.txt")
    rc = main(
        [
            "sample",
            "--weights",
            '{"family": "uniform"}',
            "--n",
            "8",
            "--count",
            "25",
            "--seed",
            "3",
            "--table",
            table_path,
            "--out",
            out,
        ]
    )
    assert rc == 0
    lines = open(out).read().strip().splitlines()
    assert len(lines) == 25
    from sgtree import PlaneTree

    for line in lines:
        t = PlaneTree.from_text(line)
        assert t.n_edges == 8


def test_sample_stats_only(tmp_path, capsys):
    rc = main(
        [
            "sample",
            "--weights",
            '{"family": "lambda_factorial", "lam": "2"}',
            "--n",
            "20",
            "--count",
            "10",
            "--seed",
            "1",
            "--stats-only",
        ]
    )
    assert rc == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0].startswith("sigma_s,x2,")
    assert out[0].endswith("max_branch_size")
    assert len(out) == 11


def test_sample_seed_determinism(tmp_path):
    args = [
        "sample",
        "--weights",
        '{"family": "factorial_alpha", "alpha": 0.5}',
        "--n",
        "30",
        "--count",
        "5",
        "--seed",
        "11",
    ]
    a, b = str(tmp_path / "a.txt"), str(tmp_path / "b.txt")
    assert main(args + ["--out", a]) == 0
    assert main(args + ["--out", b]) == 0
    assert open(a).read() == open(b).read()


def test_distance_command(tmp_path, capsys):
    fa, fb = tmp_path / "a.txt", tmp_path / "b.txt"
    fa.write_text("1 0\n")
    fb.write_text("1 1 0\n")
    assert main(["distance", str(fa), str(fb)]) == 0
    assert capsys.readouterr().out.strip() == "1/3"
    fb.write_text("1 0\n")
    assert main(["distance", str(fa), str(fb)]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_predict_command(capsys):
    assert main(["predict", "--alpha", "0.5", "--n", "400"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["k_cutoff"] == 2
    assert payload["scales"][0] == pytest.approx(20.0)
    assert payload["poisson_mean"] == pytest.approx(2**0.5)


def test_oracle_check_command(capsys):
    assert main(["oracle-check", "--weights", '{"family": "lambda_factorial", "lam": "1"}', "--n", "6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["tree_count"] == 42
    assert payload["exact_equal"] is True
    assert payload["rel_error"] < 1e-12


def test_experiment_command(tmp_path, capsys):
    spec = {
        "experiment": "logz_expansion",
        "weights": {"family": "factorial_alpha", "alpha": 0.6},
        "n_list": [50, 100],
        "seed": 4,
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    report_path = tmp_path / "report.json"
    rc = main(["experiment", "--spec", str(spec_path), "--out", str(report_path)])
    assert rc == 0
    report = json.loads(report_path.read_text())
    assert report["passed"] is True
    assert report["rng_algorithm"] == "philox4x64"
    assert report["spec"]["experiment"] == "logz_expansion"


def test_experiment_failing_exit_code(tmp_path):
    spec = {
        "experiment": "star_dominance",
        "weights": {"family": "factorial_alpha", "alpha": 1.5},
        "n_list": [60],
        "samples": 200,
        "seed": 5,
        "tolerances": {"zn_rel_error": 1e-9},  # unachievable on purpose
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    assert main(["experiment", "--spec", str(spec_path)]) == 1
