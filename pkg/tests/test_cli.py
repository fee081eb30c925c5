import json
import subprocess
import sys

import numpy as np
import pytest

from sepfaces import PureState
from sepfaces.cli import dumps_report, read_state, run, state_to_dict

SQ = 1 / np.sqrt(2)


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


@pytest.fixture
def ghz_file(tmp_path):
    amps = [[0, 0]] * 8
    amps[0] = amps[7] = [SQ, 0]
    return write(tmp_path, "ghz3.json", {"dims": [2, 2, 2], "amplitudes": amps})


@pytest.fixture
def prod_file(tmp_path):
    amps = [[1, 0]] + [[0, 0]] * 7
    return write(tmp_path, "prod.json", {"dims": [2, 2, 2], "amplitudes": amps})


@pytest.fixture
def ket11_file(tmp_path):
    return write(tmp_path, "k11.json", {"dims": [2, 2], "amplitudes": [[0, 0], [0, 0], [0, 0], [1, 0]]})


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_face_dim_formula_only(capsys, ghz_file):
    code, out, _ = invoke(capsys, "face-dim", "--state", str(ghz_file), "--formula-only")
    assert code == 0
    assert out["formula_dim"] == 48 and out["oracle_dim"] is None and out["genuinely_entangled"]


def test_face_dim_with_oracle(capsys, ghz_file):
    code, out, _ = invoke(capsys, "face-dim", "--state", str(ghz_file), "--with-oracle", "--strict")
    assert code == 0 and out["oracle_dim"] == 48 and out["saturated"] is True


def test_ge_decompose(capsys, prod_file):
    code, out, _ = invoke(capsys, "ge-decompose", "--state", str(prod_file))
    assert code == 0 and out["blocks"] == [[1], [2], [3]] and out["m"] == 3


def test_theta_scan(capsys, tmp_path):
    amps = [[0, 0]] * 8
    amps[0] = amps[3] = [SQ, 0]  # |0> (x) Bell
    p = write(tmp_path, "zb.json", {"dims": [2, 2, 2], "amplitudes": amps})
    code, out, _ = invoke(capsys, "theta-scan", "--state", str(p))
    assert code == 0 and len(out["theta_scan"]) == 8
    code, out, _ = invoke(capsys, "theta-scan", "--state", str(p), "--subsets", "1;2,3;2")
    assert [e["range_rank"] for e in out["theta_scan"]] == [7, 7, 8]


def test_oracle(capsys, ket11_file):
    code, out, _ = invoke(capsys, "oracle", "--state", str(ket11_file), "--seed", "4")
    assert code == 0
    assert out["dim"] == 6 and out["span_rank"] == 7 and out["seed"] == 4 and out["samples"] == 64
    assert set(out) == {"span_rank", "dim", "saturated", "sv_gap", "seed", "samples"}


def test_dual_check(capsys, ket11_file):
    code, out, _ = invoke(capsys, "dual-check", "--state", str(ket11_file), "--n", "50")
    assert code == 0 and out["zeros_on_V"] == 50 and out["positives_off_V"] == 50


def test_hakye33(capsys):
    code, out, _ = invoke(capsys, "hakye33", "--b", "2", "--seed", "7")
    assert code == 0
    assert out["per_family_dims"] == [19, 5, 5, 5] and out["total_dim"] == 28 and out["face_dim"] == 27


def test_hakye24(capsys):
    code, out, _ = invoke(capsys, "hakye24", "--a", "2", "--b", "1", "--c", "1", "--d", "1")
    assert code == 0 and out["bound_ok"] and out["constants"]["e"] == 4


def test_hakye24_invalid(capsys):
    code, out, err = invoke(capsys, "hakye24", "--a", "1", "--b", "1", "--c", "1", "--d", "1")
    assert code == 2 and out is None and "ab > 1" in err


def test_strict_unsaturated_exits_1(capsys, monkeypatch, ghz_file):
    import sepfaces.cli as cli
    from sepfaces import OracleResult

    # samples >= d^2 saturates generically, so force the unsaturated branch
    monkeypatch.setattr(cli, "face_dim_oracle", lambda s, c: OracleResult(40, 39, False, 1.0, 0, 64))
    code, _, err = invoke(capsys, "oracle", "--state", str(ghz_file), "--strict")
    assert code == 1 and "saturated" in err
    code, out, _ = invoke(capsys, "oracle", "--state", str(ghz_file))
    assert code == 0 and out["saturated"] is False


@pytest.mark.parametrize(
    "data, needle",
    [
        ({"dims": [2, 2], "amplitudes": [[1, 0]] * 3}, "amplitudes"),
        ({"dims": [2, 2], "amplitudes": [[0, 0]] * 4}, "zero state"),
        ({"amplitudes": [[1, 0]]}, "dims"),
        ({"dims": [2], "amplitudes": [[1, 0, 0], [0, 0]]}, "amplitudes"),
    ],
)
def test_read_state_errors(capsys, tmp_path, data, needle):
    p = write(tmp_path, "bad.json", data)
    code, _, err = invoke(capsys, "face-dim", "--state", str(p))
    assert code == 2 and needle in err


def test_missing_and_malformed_files(capsys, tmp_path):
    code, _, err = invoke(capsys, "ge-decompose", "--state", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = invoke(capsys, "ge-decompose", "--state", str(bad))
    assert code == 2 and "malformed" in err


def test_read_state_ok(ket11_file):
    s = read_state(ket11_file)
    assert s.dims == (2, 2)
    np.testing.assert_array_equal(s.amplitudes, [0, 0, 0, 1])


def test_out_flag_and_roundtrip(tmp_path, ghz_file):
    out = tmp_path / "r.json"
    assert run(["face-dim", "--state", str(ghz_file), "--with-oracle", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert dumps_report(data) == out.read_text()


def test_state_roundtrip(tmp_path, rng):
    s = PureState.from_amplitudes([2, 3], rng.standard_normal(6) + 1j * rng.standard_normal(6))
    p = write(tmp_path, "s.json", state_to_dict(s))
    np.testing.assert_array_equal(read_state(p).amplitudes, s.amplitudes)


def test_byte_identical_output(ghz_file):
    cmd = [sys.executable, "-m", "sepfaces", "oracle", "--state", str(ghz_file), "--seed", "99"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"sv_gap" in a


def test_float_formatting():
    assert dumps_report({"x": 1 / 3, "y": [2.0, np.float64(1e-20)]}) == (
        '{\n  "x": 0.333333333333,\n  "y": [\n    2.0,\n    1e-20\n  ]\n}\n'
    )
