from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dgvla import fileio
from dgvla.catalog import CATALOG, from_catalog
from dgvla.cli import main
from dgvla.vla import UElement, with_products


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def vir_file(tmp_path):
    path = tmp_path / "virasoro.vla"
    fileio.dump(from_catalog("virasoro"), path)
    return path


def test_check_pass(capsys, vir_file):
    code, out, _ = run(capsys, "check", str(vir_file), "--window", "-3:3")
    assert code == 0
    assert "PASS" in out and "verified on generators" in out


def test_check_mutated_prints_jacobi_defect(capsys, tmp_path):
    bad = with_products(from_catalog("virasoro"), {("ω", 1, "ω"): UElement.gen("ω", 0, 3)})
    path = tmp_path / "mutated.vla"
    fileio.dump(bad, path)
    code, out, _ = run(capsys, "check", str(path), "--window", "-3:3")
    assert code == 1
    assert "FAIL" in out and "jacobi" in out


def test_check_malformed_file(capsys, tmp_path):
    path = tmp_path / "malformed.vla"
    path.write_text("{ not json", encoding="utf-8")
    code, _, err = run(capsys, "check", str(path))
    assert code == 2 and "ParseError" in err


def test_unknown_key_is_an_input_error(capsys, tmp_path):
    data = json.loads(fileio.dumps(from_catalog("virasoro")))
    data["surprise"] = 1
    path = tmp_path / "extra.vla"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, _, err = run(capsys, "check", str(path))
    assert code == 2 and "UnknownKey" in err


def test_check_machine_format(capsys):
    code, out, _ = run(capsys, "check", "virasoro", "--window", "-2:2", "--format", "machine")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert records[0]["status"] == "PASS"


@pytest.mark.parametrize(
    "argv,expected",
    [
        (("bracket", "virasoro", "ω", "3", "ω", "-1"), "4*ω_1 + 1/2*c_-1"),
        (("bracket", "virasoro", "omega", "2", "omega", "1"), "ω_2"),
        (("bracket", "affine-sl2", "e", "1", "f", "-1"), "h_0 + K_-1"),
        (("bracket", "virasoro", "ω", "1", "ω", "1"), "0"),
    ],
)
def test_bracket_output(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_bracket_unknown_generator(capsys):
    code, _, err = run(capsys, "bracket", "virasoro", "ω", "0", "x", "0")
    assert code == 2 and "UnknownGenerator" in err


def test_bracket_machine_format(capsys):
    code, out, _ = run(capsys, "bracket", "virasoro", "ω", "3", "ω", "-1", "--format", "machine")
    rec = json.loads(out)
    assert rec["value"] == [{"coeff": "4", "gen": "ω", "n": 1}, {"central": "c", "coeff": "1/2", "n": -1}]


def test_character_virasoro(capsys):
    code, out, _ = run(capsys, "character", "virasoro", "--level", "c=1/2", "--cap", "6")
    assert code == 0
    assert out.strip().splitlines()[-1] == "totals: 1,0,1,1,2,2,4"


def test_character_heisenberg_lowercase_level(capsys):
    code, out, _ = run(capsys, "character", "heisenberg", "--level", "k=1", "--cap", "5")
    assert code == 0
    assert out.strip().splitlines()[-1] == "totals: 1,1,2,3,5,7"


def test_envelope_missing_level(capsys):
    code, _, err = run(capsys, "envelope", "virasoro")
    assert code == 2 and "MissingLevel" in err


def test_envelope_listing(capsys):
    code, out, _ = run(capsys, "envelope", "virasoro", "--level", "c=1", "--cap", "4")
    assert code == 0
    assert "weight 4: 2" in out and "ω_-3 |0>" in out and "ω_-1 ω_-1 |0>" in out


def test_locality_with_small_cap_is_still_exact(capsys):
    # the cap only limits the probes; the products themselves are not truncated
    code, out, _ = run(capsys, "locality", "virasoro", "ω", "ω", "--level", "c=1", "--cap", "2")
    assert code == 0 and out.strip() == "4"


def test_cohomology_acyclic(capsys):
    code, out, _ = run(capsys, "cohomology", "acyclic", "--level", "K=0", "--cap", "3", "--format", "machine")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    dims = {}
    for r in records:
        if r["record"] == "cohomology":
            dims[r["weight"]] = dims.get(r["weight"], 0) + r["dim"]
    assert dims == {"0": 1, "1": 0, "2": 0, "3": 0}
    assert records[-1] == {"record": "euler", "match": True}


def test_sugawara_heisenberg(capsys):
    code, out, _ = run(capsys, "sugawara", "heisenberg", "--k", "1")
    assert code == 0
    assert "c = 1" in out and "PASS" in out


def test_sugawara_sl2_small(capsys):
    code, out, _ = run(capsys, "sugawara", "sl2", "--k", "1", "--window", "-2:2", "--cap", "2")
    assert code == 0
    assert "h_dual = 2" in out and "c = 1" in out


def test_sugawara_critical_level(capsys):
    code, _, err = run(capsys, "sugawara", "sl2", "--k", "-2")
    assert code == 1 and "CriticalLevel" in err


def test_sugawara_needs_affine_input(capsys):
    code, _, _ = run(capsys, "sugawara", "virasoro", "--k", "1")
    assert code == 2


@pytest.mark.parametrize(
    "argv,expected",
    [
        (("locality", "virasoro", "ω", "ω", "--level", "c=1/2", "--cap", "6"), "4"),
        (("locality", "heisenberg", "a", "a", "--level", "K=1", "--cap", "6"), "2"),
        (("locality", "virasoro", "1", "ω", "--level", "c=1/2", "--cap", "6"), "0"),
    ],
)
def test_locality(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_round_trip(capsys, tmp_path, name):
    out_path = tmp_path / f"{name}.vla"
    code, _, _ = run(capsys, "catalog", name, "--out", str(out_path))
    assert code == 0
    text = out_path.read_text(encoding="utf-8")
    p = fileio.loads(text)
    assert p == from_catalog(name)
    assert fileio.dumps(p) == text


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and out.split() == sorted(CATALOG)


def test_catalog_output_is_checkable(capsys, tmp_path):
    path = tmp_path / "ns.vla"
    run(capsys, "catalog", "ns", "--out", str(path))
    code, _, _ = run(capsys, "check", str(path), "--window", "-2:2")
    assert code == 0


def test_bad_window_is_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", "virasoro", "--window", "3:-3"])
    assert info.value.code == 2


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "dgvla", "character", "ns", "--level", "c=1", "--cap", "4", "--format", "machine"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first
