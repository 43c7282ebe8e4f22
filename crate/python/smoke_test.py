"""Smoke test for the frobx_py extension.

Build the extension and put it on the path first, for example:

    cargo build -p frobx-python --release
    cp target/release/libfrobx_py.so python/frobx_py.so
    PYTHONPATH=python python3 python/smoke_test.py
"""

from fractions import Fraction

import frobx_py as fx


def fermat_cubic():
    r = fx.Ring(2, ["x", "y", "z"], ["x^3+y^3+z^3"])
    i = r.ideal(["x", "y"])
    prof = i.frobenius_profile(3)
    assert [row["ann_exp"] for row in prof["rows"]] == [5, 9, 17], prof
    assert prof["b_hat"] == 3 and prof["c_hat"] == 3
    assert prof["rows"][0]["ratio_hk"] == Fraction(3)
    assert i.frobenius_closure_probe("z^2", 2) == 1
    assert i.tight_closure_witness("z^2") == "1"


def plane():
    r = fx.Ring(3, ["X", "Y"])
    i = r.ideal(["X*Y", "X^3"])
    assert i.saturation() == r.ideal(["X"])
    j = i.frobenius_power(1)
    assert j.h0()["length"] == 18
    assert j.saturation() == r.ideal(["X^3"])
    assert r.irrelevant().length() == 1
    assert r.irrelevant().hilbert_numerator() == [1, -2, 1]


def cone():
    r = fx.Ring(101, ["x", "y", "z"], ["x*y-z^2"])
    p = r.ideal(["x", "z"])
    assert p.symbolic_power(2) == r.ideal(["x"])
    prof = p.powers_profile(4, symbolic=True)
    assert prof["waldschmidt_upper"] == Fraction(1, 2)
    assert [row["h0_length"] for row in prof["rows"]] == [0, 1, 2, 4]


def misc():
    assert fx.brenner_bound(3, 1, 1, "0") == (Fraction(2), Fraction(1))
    try:
        fx.Ring(4, ["x"])
    except fx.FrobxError as e:
        assert "prime" in str(e)
    else:
        raise AssertionError("4 accepted as a prime")
    results = fx.selftest(True)
    assert len(results) == 12
    assert all(passed or corrected for _, passed, corrected, _ in results)


if __name__ == "__main__":
    for check in (fermat_cubic, plane, cone, misc):
        check()
        print(f"ok {check.__name__}")
    print("smoke test passed")
