import io
import json
import subprocess
import sys

import pytest

from artifact.cli import run
from artifact.registry import raw_text


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def trn(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.trn"
        p.write_text(raw_text(name))
        return str(p)
    return write


def test_order_b_witness(trn):
    code, out, _ = call("order", trn("B_WITNESS"))
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "infinite"
    c = d["certificate"]
    assert c["level"] == 1 and c["circuit"][0]["from"] == ["q0", "q1"] == c["circuit"][0]["to"]
    assert set(d) == {"verdict", "certificate", "budgets"}


def test_order_finite_json(trn):
    d = json.loads(call("order", trn("ORD3_C"))[1])
    assert (d["verdict"], d["index"], d["period"]) == ("finite", 1, 3)


def test_spectrum_m(trn):
    code, out, _ = call("spectrum", trn("M_NOTCONJ"), "-k", "3")
    assert code == 0 and out == "(3,1,(3,1,2))\n(3,1,(21,7,1))\n"


def test_spectrum_compare(tmp_path, trn):
    from artifact.registry import get
    from artifact.transducer import inverse, save

    inv = tmp_path / "Minv.trn"
    save(inverse(get("M_NOTCONJ")), inv)
    out = call("spectrum", trn("M_NOTCONJ"), "-k", "3", "--compare", str(inv))[1]
    assert out.endswith("conjugacy: not conjugate\n")


def test_order_unknown_exit_3(trn):
    code, out, _ = call("order", trn("G_H3"), "--max-power", "1", "--max-dual", "0")
    assert code == 3 and json.loads(out)["verdict"] == "unknown"


def test_example_round_trip(tmp_path):
    p = tmp_path / "b.trn"
    assert call("example", "B_WITNESS", "-o", str(p))[0] == 0
    assert p.read_text() == raw_text("B_WITNESS")
    code, out, _ = call("minimize", str(p))
    assert code == 0 and out == raw_text("B_WITNESS")


def test_info(trn):
    out = call("info", trn("EX1_C"))[1]
    assert "sync_level: 2" in out and "inverse_sync_level: 2" in out and "invertible: yes" in out


def test_registry_name_as_file():
    assert call("info", "BPRIME")[0] == 0


def test_usage_and_invalid(tmp_path):
    assert call()[0] == 1
    assert call("bogus")[0] == 1
    assert call("order", "x", "--frobnicate")[0] == 1
    assert call("info", str(tmp_path / "missing.trn"))[0] == 2
    bad = tmp_path / "bad.trn"
    bad.write_text("alphabet: 2\nstates: a\na: 0|0->a\n")
    code, _, err = call("info", str(bad))
    assert code == 2 and "invalid input" in err
    assert call("order", "CM_Z2")[0] == 2


def test_growth_budget_exit_4(tmp_path):
    code, out, _ = call("growth", "H_H4", "-m", "10", "--cap", "100")
    assert code == 4 and out.startswith("m,states")


def test_growth_csv(tmp_path):
    p = tmp_path / "g.csv"
    assert call("growth", "G_H3", "-m", "5", "--csv", str(p))[0] == 0
    assert p.read_text().splitlines()[5] == "5,11,5,5,1"


def test_badpairs_dot(tmp_path):
    p = tmp_path / "g.dot"
    code, out, _ = call("badpairs", "B_WITNESS", "-r", "1", "--minimal", "--dot", str(p))
    assert code == 0 and "circuit: {q0,q1}" in out
    assert p.read_text().startswith("digraph badpairs {")


def test_splits_and_witness():
    out = call("splits", "B_WITNESS", "-r", "1")[1]
    assert "splitting_length: 1" in out and "bottom_depends_only_on_top: yes" in out
    assert "splitting_length: infinite" in call("splits", "ORD3_C", "-r", "3")[1]
    assert "witness: ...(1).1(02)..." in call("witness", "B_WITNESS", "-r", "1")[1]


def test_product_power_dual_core():
    assert call("product", "EX1_C", "EX1_C")[1].startswith("alphabet: 3\nstates: q0.q0")
    out = call("power", "ORD3_C", "-m", "3")[1]
    assert out.splitlines()[1].count(" ") == 1
    assert call("dual", "B_WITNESS", "-k", "1")[1].splitlines()[1] == "states: 0 1 2"
    assert call("core", "EX1_C")[1] == raw_text("EX1_C")


def test_cayley_and_combine(tmp_path):
    t = tmp_path / "z2.csv"
    t.write_text(",e,a\ne,e,a\na,a,e\n")
    code, out, _ = call("cayley", "--table", str(t))
    assert code == 0 and out.startswith("alphabet: 2\nstates: e a")
    (tmp_path / "ORD3_H3.trn").write_text(raw_text("ORD3_H3"))
    (tmp_path / "ORD2_H2.trn").write_text(raw_text("ORD2_H2"))
    spec = tmp_path / "h5.spec"
    spec.write_text("part ORD3_H3.trn block=0..2\npart ORD2_H2.trn block=3..4\n")
    code, out, _ = call("combine", str(spec), "--outputs", "identity")
    assert code == 0 and out == raw_text("COMBINED_H5")
    spec.write_text("part ORD3_H3.trn block=0..1\n")
    assert call("combine", str(spec))[0] == 2


def test_deterministic_output():
    assert call("order", "M_NOTCONJ")[1] == call("order", "M_NOTCONJ")[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "artifact", "example", "ORD2_B2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == raw_text("ORD2_B2")
