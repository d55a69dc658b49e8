"""Smoke test of the liesym Python bindings.

Build first with `maturin develop -m crates/liesym-py/Cargo.toml`, then run
`python python/smoke_test.py` or `pytest python/` from the repository root.
"""

import math

import liesym_py as ls


def test_classify():
    r = ls.classify("1/4", "0", "1/4", "0")
    assert r["case_id"] == "1.4"
    assert r["dimension"] == 9
    assert ls.classify("3/10", "1", "1/2", "2")["case_id"] == "2.1"
    assert len(ls.cases()) == 16


def test_expr():
    e = ls.Expr("x^2*exp(t)")
    assert str(e.diff("x")) == "2*x*exp(t)"
    assert (e - e).is_zero()
    assert e * ls.Expr("1") == e


def test_determining_system():
    rows = dict((m, str(c)) for m, c in ls.determining_system())
    assert rows["u_xt"] == "-x*tau_x"
    assert len(rows) >= 25
    assert len(ls.determining_system("heat")) > 0


def test_basis_and_check():
    b = ls.Basis("heat")
    assert len(b) == 6
    for f in b.fields:
        assert ls.check_field("heat", f)["passed"]
    bad = ls.VectorField("x", "0", "0", "0")
    r = ls.check_field("2.1", bad)
    assert not r["passed"]
    assert "u_xx" in r["failing"]


def test_structure():
    assert ls.structure("2.1")["matched"] == "abelian_2"
    grid = ls.bracket_table("2.3")
    assert len(grid) == 4 and grid[0][0] == "0"


def test_flows():
    f = ls.Flow("heat", 6)
    eps = math.pi
    g = f.transform(eps).shift_t(-1 / (4 * eps))
    want = math.exp(-0.25) / math.sqrt(4 * math.pi)
    assert abs(g(1.0, 0.0, 1.0) - want) < 1e-8
    u = ls.Flow("1.1", 3).transform(0.05)
    report = u.sweep()
    assert report["max_residual"] < 1e-5
    assert ls.Flow("3.2", "v_t").apply([1, 1, 0, 1], 0.5) == [1, 1, 0.5, 1]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok {name}")
