import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from wreathblock import data_file
from wreathblock.block_diag import phi
from wreathblock.cli import main, read_blocks
from wreathblock.generalized_boolean import OrbitInvariant
from wreathblock.group_action import load_group, spectral_table

S2 = data_file("s2")
C3 = data_file("c3")


def _json(capsys, argv):
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_orbitals_s2(capsys):
    doc = _json(capsys, ["orbitals", "--group", S2])
    assert doc["m"] == 1 and doc["dims"] == [1, 1]
    lam = np.array(doc["lambda"])
    np.testing.assert_allclose(lam[..., 0], [[1, 1], [1, -1]], atol=1e-12)
    np.testing.assert_allclose(lam[..., 1], 0, atol=1e-12)


def test_orbitals_c3_csv(tmp_path):
    out = tmp_path / "c3.csv"
    assert main(["orbitals", "--group", C3, "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 9
    assert max(abs(float(r["im"])) for r in rows) > 0.8


def test_malformed_group_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{degree: 2")
    assert main(["orbitals", "--group", str(bad)]) == 2
    assert "not valid JSON" in capsys.readouterr().err
    assert main(["orbitals", "--group", str(tmp_path / "missing.json")]) == 2


def test_blocks_identity_invariant(capsys):
    doc = _json(capsys, ["blocks", "--group", S2, "--n", "2", "--inv", "0:0:0:0,0"])
    (img,) = doc["images"]
    nonzero = [(b["k"], b["s"], b["p"], r, c, v)
               for b in img["blocks"] for r, row in enumerate(b["rows"])
               for c, v in enumerate(row) if v != [0.0, 0.0]]
    assert nonzero == [(0, 0, [0], 0, 0, [1.0, 0.0])]


def test_blocks_n1_full_basis(tmp_path):
    out = tmp_path / "blocks.json"
    assert main(["blocks", "--group", S2, "--n", "1", "--all", "--out", str(out)]) == 0
    images = read_blocks(out)
    assert len(images) == 5
    st = spectral_table(load_group(S2))
    for img in images:
        ref = phi(1, img.source, st)
        # bit-identical round trip through the JSON form
        for b, v in ref.blocks.items():
            assert np.array_equal(img.blocks[b], v)


def test_blocks_round_trip_c3(tmp_path):
    out = tmp_path / "blocks.json"
    assert main(["blocks", "--group", C3, "--n", "2", "--all", "--out", str(out)]) == 0
    st = spectral_table(load_group(C3))
    images = read_blocks(out)
    assert len(images) == 21
    for img in images:
        for b, v in phi(2, img.source, st).blocks.items():
            assert np.array_equal(img.blocks[b], v)


def test_blocks_deterministic(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        main(["blocks", "--group", C3, "--n", "2", "--all", "--seed", "4", "--out", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("inv", ["2:2:1:1,0", "1:1:0:1,0", "1:1", "a:b:c:d"])
def test_blocks_invalid_invariant(inv, capsys):
    assert main(["blocks", "--group", S2, "--n", "2", "--inv", inv]) == 2
    assert "error" in capsys.readouterr().err


def test_eigenvalues(capsys):
    doc = _json(capsys, ["eigenvalues", "--group", S2, "--n", "3", "--i", "2"])
    assert len(doc["rows"]) == len(doc["columns"])
    assert sum(c["multiplicity"] for c in doc["columns"]) == 3 * 4
    values = np.array(doc["values"])
    # the identity-type row (t = i, l = (i, 0)) is all ones
    r = doc["rows"].index({"t": 2, "l": [2, 0]})
    np.testing.assert_allclose(values[r, :, 0], 1)
    assert main(["eigenvalues", "--group", S2, "--n", "2", "--i", "3"]) == 2


def test_eigenvalues_c3_complex(capsys):
    doc = _json(capsys, ["eigenvalues", "--group", C3, "--n", "2", "--i", "1"])
    assert np.abs(np.array(doc["values"])[..., 1]).max() > 0.5


def test_verify_pass_and_fail(tmp_path, capsys):
    out = tmp_path / "reports.jsonl"
    assert main(["verify", "--group", C3, "--n", "2", "--out", str(out)]) == 0
    assert "oracles passed" in capsys.readouterr().out
    assert all(json.loads(line)["passed"] for line in out.read_text().splitlines())
    for mode in ("unitary", "matrix"):
        assert main(["verify", "--group", S2, "--n", "2", "--corrupt", mode]) == 1
        assert "FAIL" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["verify", "--group", S2, "--n", "-1"]) == 2
    assert main(["orbitals", "--group", S2, "--tol", "0"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["blocks", "--group", S2, "--n", "1"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "wreathblock", "--help"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    for flag in ("orbitals", "blocks", "eigenvalues", "verify"):
        assert flag in res.stdout
    res = subprocess.run([sys.executable, "-m", "wreathblock", "blocks", "--help"],
                         capture_output=True, text=True)
    for flag in ("--group", "--n", "--out", "--format", "--tol", "--seed", "--cap"):
        assert flag in res.stdout
