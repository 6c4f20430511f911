"""End-to-end runs of the command line interface, in process."""

import json

import pytest

from pencilcov import cli

FERMAT = {"quartic": ["1", "0", "0", "0", "1"]}
DIAG_PENCIL = {
    "n": 3,
    "A": [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "3"]],
    "B": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
}


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def read_json(path):
    return json.loads(path.read_text())


def run(tmp_path, *argv, input_payload=None):
    """Run main() with --input/--output wired to temp files."""
    args = list(argv)
    if input_payload is not None:
        args += ["--input", write_json(tmp_path / "in.json", input_payload)]
    out = tmp_path / "out.json"
    args += ["--output", str(out)]
    code = cli.main(args)
    payload = read_json(out) if out.exists() else None
    return code, payload


def test_covariants_fixture(tmp_path):
    code, payload = run(tmp_path, "covariants", input_payload=FERMAT)
    assert code == 0
    assert payload["schema"] == "pencilcov.covariants/1"
    assert payload["H"] == ["0", "0", "144", "0", "0"]
    assert payload["F6"] == ["0", "32", "0", "0", "0", "-32", "0"]
    assert payload["I"] == "12"
    assert payload["J"] == "0"
    assert payload["disc"] == "256"


def test_pair_fixture(tmp_path):
    code, payload = run(tmp_path, "pair", input_payload=DIAG_PENCIL)
    assert code == 0
    assert payload["det_form"] == ["6", "-11", "6", "-1"]
    assert payload["g_A"] == [
        ["6", "0", "0"],
        ["0", "3", "0"],
        ["0", "0", "2"],
    ]
    assert payload["g_B"] == [
        ["1", "0", "0"],
        ["0", "4", "0"],
        ["0", "0", "9"],
    ]
    assert payload["C3"] == {"xyz": "-16"}
    # kappa^4 = 256 times the cubic discriminant (4) of the det form
    assert payload["disc"] == "1024"


def test_pair_in_dimension_four_marks_cubic_fields(tmp_path):
    pencil = {
        "n": 4,
        "A": [
            ["1", "0", "0", "0"],
            ["0", "2", "0", "0"],
            ["0", "0", "3", "0"],
            ["0", "0", "0", "4"],
        ],
        "B": [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
        ],
    }
    code, payload = run(tmp_path, "pair", input_payload=pencil)
    assert code == 0
    assert len(payload["det_form"]) == 5
    assert payload["C3"]["error"] == "DimensionError"
    assert payload["disc"]["error"] == "DimensionError"


def test_embed_fixture(tmp_path):
    code, payload = run(tmp_path, "embed", input_payload=FERMAT)
    assert code == 0
    assert payload["det_form"] == ["1/4", "0", "-1", "0"]
    assert payload["pencil"]["n"] == 3


def test_verify_mt_small_sweep(tmp_path):
    code, payload = run(
        tmp_path, "verify", "mt", "--count", "5", "--seed", "11"
    )
    assert code == 0
    assert payload["schema"] == "pencilcov.verify.mt/1"
    assert payload["checked"] == 5
    assert payload["failures"] == []


def test_verify_mt2_small_sweep(tmp_path):
    code, payload = run(tmp_path, "verify", "mt2", "--count", "4")
    assert code == 0
    assert payload["failures"] == []


def test_verify_disc_small_sweep(tmp_path):
    code, payload = run(tmp_path, "verify", "disc", "--count", "4")
    assert code == 0
    assert payload["failures"] == []


def test_verify_syzygy_small_sweep(tmp_path):
    code, payload = run(tmp_path, "verify", "syzygy", "--count", "50")
    assert code == 0
    assert payload["failures"] == []
    assert payload["syzygy"] == ["-1/729", "16/27", "-64/27"]


def test_verify_mt3_tiny_box(tmp_path):
    witnesses = tmp_path / "w.json"
    code, payload = run(
        tmp_path,
        "verify",
        "mt3",
        "--box=-1:1",
        "--witnesses",
        str(witnesses),
    )
    assert code == 0
    # nine grid points, the origin is the only degenerate one
    assert payload["checked"] == 8
    assert payload["failures"] == []
    assert payload["unresolved"] == []
    assert len(payload["witnesses"]) == 8
    stored = read_json(witnesses)
    assert stored["schema"] == "pencilcov.mt3-witnesses/1"
    assert stored["witnesses"] == payload["witnesses"]


def test_verify_rejects_zero_count_gracefully(tmp_path):
    code, payload = run(tmp_path, "verify", "mt", "--count", "0")
    assert code == 0
    assert payload["checked"] == 0


def test_diagonalize_fixture(tmp_path):
    code, payload = run(tmp_path, "diagonalize", input_payload=DIAG_PENCIL)
    assert code == 0
    assert payload["schema"] == "pencilcov.diagonalize/1"
    assert payload["exact"] is True
    assert payload["field"] == []
    assert len(payload["U"]) == 3
    assert len(payload["s"]) == 3


def test_decide_yes(tmp_path):
    code, payload = run(tmp_path, "decide", input_payload=DIAG_PENCIL)
    assert code == 0
    assert payload["verdict"] == "yes"
    assert payload["witness"]["exact"] is True


def test_decide_no(tmp_path):
    pencil = {
        "n": 3,
        "A": [["0", "1", "1"], ["1", "1", "0"], ["1", "0", "-1"]],
        "B": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    }
    code, payload = run(tmp_path, "decide", input_payload=pencil)
    assert code == 0
    assert payload["verdict"] == "no"
    assert payload["witness"] is None


def test_decide_degenerate(tmp_path):
    pencil = {
        "n": 3,
        "A": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "2"]],
        "B": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    }
    code, payload = run(tmp_path, "decide", input_payload=pencil)
    assert code == 0
    assert payload["verdict"] == "degenerate"


def test_zero_det_form_exits_degenerate(tmp_path):
    zero = [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]
    code, _ = run(
        tmp_path, "diagonalize", input_payload={"n": 3, "A": zero, "B": zero}
    )
    assert code == 3


def test_bad_rational_exits_with_input_error(tmp_path):
    bad = {"quartic": ["1", "0", "1/0", "0", "1"]}
    code, _ = run(tmp_path, "covariants", input_payload=bad)
    assert code == 2


def test_unreadable_json_exits_with_input_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{nope")
    code = cli.main(["covariants", "--input", str(path)])
    assert code == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "pencilcov.error/1"
    assert payload["error"]["type"] == "ParseError"


def test_missing_file_exits_with_input_error(tmp_path):
    code = cli.main(["covariants", "--input", str(tmp_path / "absent.json")])
    assert code == 2


def test_calibrate_reports_frozen_constants(tmp_path):
    code, payload = run(tmp_path, "calibrate", "--count", "100")
    assert code == 0
    assert payload["schema"] == "pencilcov.constants/1"
    assert payload["lambda"] == "8"
    assert payload["mu1"] == "96"
    assert payload["mu2"] == "48"
    assert payload["kappa"] == "4"
    assert payload["mt3_ratio"] == "8*det(T)"


def test_runs_are_deterministic(tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    for out in (first, second):
        code = cli.main(
            ["verify", "mt", "--count", "6", "--output", str(out)]
        )
        assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_stdin_input(tmp_path, monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(FERMAT)))
    code = cli.main(["covariants", "--input", "-"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["I"] == "12"


def test_seed_is_validated():
    with pytest.raises(SystemExit):
        cli.main(["verify", "mt", "--seed", "-1"])
