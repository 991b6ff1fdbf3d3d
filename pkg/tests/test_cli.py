import json
import math

import pytest

from uncertkit.cli import main
from uncertkit.families import gaussian
from uncertkit.grid import GridSpec, save_field
from uncertkit.operators import FourierTransform, save_operator


def _write_spec(path, **kw):
    with open(path, "w") as fh:
        json.dump(kw, fh)
    return str(path)


def test_cli_verify_with_family(tmp_path):
    spec = _write_spec(tmp_path / "spec.json", variant="heisenberg_nd", q=2.0, dim=1)
    out = tmp_path / "out"
    rc = main(["--out", str(out), "verify", "--spec", spec, "--family", "gauss:lam=1"])
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True
    assert report["ratio"] == pytest.approx(1.0 / (16 * math.pi**2), rel=1e-9)


def test_cli_verify_with_field_and_operator_files(tmp_path):
    grid = GridSpec(1, 20.0, 4096)
    save_field(gaussian(grid), tmp_path / "field.bin")
    save_operator(FourierTransform("two_pi"), tmp_path / "op.json")
    spec = _write_spec(tmp_path / "spec.json", variant="hausdorff_young", p=1.5, dim=1)
    out = tmp_path / "out"
    rc = main(
        [
            "--out",
            str(out),
            "verify",
            "--spec",
            spec,
            "--field",
            str(tmp_path / "field.bin"),
            "--operator",
            str(tmp_path / "op.json"),
        ]
    )
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True


def test_cli_sweep_deterministic_and_plot(tmp_path):
    spec = _write_spec(tmp_path / "spec.json", variant="F_pq", p=1.0, q=2.0, dim=1)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    args = ["sweep", "--spec", spec, "--family", "gc", "--values", "0.5:2:5:log"]
    assert main(["--out", str(out_a), "--seed", "9", "--plot"] + args) == 0
    assert main(["--out", str(out_b), "--seed", "9"] + args) == 0
    assert (out_a / "sweep.json").read_bytes() == (out_b / "sweep.json").read_bytes()
    assert (out_a / "sweep.csv").exists()
    svg = (out_a / "sweep.svg").read_text()
    assert svg.lstrip().startswith("<?xml")


def test_cli_sequence(tmp_path):
    out = tmp_path / "out"
    rc = main(
        ["--out", str(out), "sequence", "--prop", "three_gc", "--n", "3", "--q", "12",
         "--indices", "0.01:0.1:5:log"]
    )
    assert rc == 0
    data = json.loads((out / "sequence.json").read_text())
    assert data["meta"]["expected_slope"] == pytest.approx(1.0)
    assert len(data["values"]) == 5


def test_cli_probe_and_classify(tmp_path):
    out = tmp_path / "p"
    assert main(["--out", str(out), "probe", "--p", "4.0", "--kmax", "16"]) == 0
    data = json.loads((out / "probe.json").read_text())
    assert data["meta"]["hermite_orders"][-1] <= 16

    out2 = tmp_path / "c"
    grid_arg = "1,512,20"  # a small grid keeps the classify run quick
    assert main(["--out", str(out2), "--grid", grid_arg, "classify", "--op", "fourier"]) == 0
    report = json.loads((out2 / "classify.json").read_text())
    assert report["verdicts"]["hadamard"] == "consistent"


def test_cli_minimize(tmp_path):
    spec = _write_spec(tmp_path / "spec.json", variant="F_pq", p=1.0, q=2.0, dim=1)
    out = tmp_path / "out"
    rc = main(
        ["--out", str(out), "--grid", "1,1024,16", "minimize", "--spec", spec,
         "--family", "gc", "--budget", "60"]
    )
    assert rc == 0
    data = json.loads((out / "minimize.json").read_text())
    assert data["best_value"] == pytest.approx(math.sqrt(2.0), rel=1e-4)
