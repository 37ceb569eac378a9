import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from nawelch.classical import (
    ClassicalFrame,
    bukh_cox,
    coherence,
    companion_bounds,
    exponential,
    gerzon,
    levenstein,
    rankin,
    welch_max_bound,
    welch_max_rhs,
    welch_sum_bound,
)


def mercedes_benz():
    angles = [0, 2 * math.pi / 3, 4 * math.pi / 3]
    return ClassicalFrame([[math.cos(a), math.sin(a)] for a in angles])


def random_frame(rng, n, d, field):
    v = rng.standard_normal((n, d))
    if field == "C":
        v = v + 1j * rng.standard_normal((n, d))
    return ClassicalFrame(v / np.linalg.norm(v, axis=1, keepdims=True), field)


def simplex(d):
    # n = d + 1 centered standard basis of R^{d+1}, projected into a d-dim subspace
    e = np.eye(d + 1) - 1 / (d + 1)
    q, _ = np.linalg.qr(e.T)
    v = e @ q[:, :d]
    return ClassicalFrame(v / np.linalg.norm(v, axis=1, keepdims=True))


def test_mercedes_benz_sum_bound():
    r = welch_sum_bound(mercedes_benz(), 1)
    assert r["lhs"] == pytest.approx(4.5, rel=1e-12) and r["rhs"] == 4.5
    assert r["holds"] and r["equality"]


def test_orthonormal_plus_repeat():
    r = welch_sum_bound(ClassicalFrame([[1, 0], [0, 1], [1, 0]]), 1)
    assert r["lhs"] == 5 and r["holds"] and not r["equality"]


def test_mercedes_benz_second_order():
    r = welch_sum_bound(mercedes_benz(), 2)
    assert r["rhs"] == 3 and r["lhs"] == pytest.approx(3.375, rel=1e-12) and r["holds"]


def test_mercedes_benz_max_bound():
    r = welch_max_bound(mercedes_benz(), 1)
    assert r["coherence_pow"] == pytest.approx(0.25, rel=1e-12) and r["rhs"] == pytest.approx(0.25)
    assert r["equality"] and r["holds"]


def test_repeated_basis_max_bound():
    r = welch_max_bound(ClassicalFrame([[1, 0], [0, 1], [1, 0], [0, 1]]), 1)
    assert r["coherence_pow"] == 1 and r["rhs"] == pytest.approx(1 / 3) and r["holds"]


def test_non_unit_vectors_rejected():
    with pytest.raises(ValueError):
        ClassicalFrame([[1, 1]])
    with pytest.raises(ValueError):
        ClassicalFrame([[1, 0]], "Q")


def test_first_order_simplification():
    rng = np.random.default_rng(1)
    for _ in range(200):
        d = int(rng.integers(1, 6))
        n = d + int(rng.integers(1, 20))
        assert abs(welch_max_rhs(n, d, 1) - (n - d) / (d * (n - 1))) < 1e-15


@pytest.mark.parametrize("field", ["R", "C"])
@pytest.mark.parametrize("d,n", [(2, 3), (2, 5), (3, 7)])
def test_random_frames_satisfy_both_bounds(field, d, n):
    rng = np.random.default_rng([ord(field), d, n])
    for _ in range(1000):
        fr = random_frame(rng, n, d, field)
        for m in (1, 2):
            assert welch_sum_bound(fr, m)["holds"]
            assert welch_max_bound(fr, m)["holds"]


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_simplex_attains_first_order_max_bound(d):
    fr = simplex(d)
    r = welch_max_bound(fr, 1)
    assert abs(r["coherence_pow"] - r["rhs"]) <= 1e-9 * max(r["rhs"], 1e-300)
    assert r["equality"]


@pytest.mark.parametrize("field", ["R", "C"])
def test_coherence_rotation_invariant(field):
    rng = np.random.default_rng(7)
    for _ in range(50):
        fr = random_frame(rng, 6, 3, field)
        a = rng.standard_normal((3, 3)) + (1j * rng.standard_normal((3, 3)) if field == "C" else 0)
        u, _ = np.linalg.qr(a)
        rotated = ClassicalFrame(fr.vectors @ u.T, field)
        assert abs(coherence(rotated) - coherence(fr)) < 1e-12


def test_gerzon_values():
    assert gerzon(3, "C") == 9 and gerzon(3, "R") == 6
    assert gerzon(1, "C") == gerzon(1, "R") == 1


def test_companion_values():
    assert rankin(4) == 0.5
    assert levenstein(4, 2, 0.5) == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert exponential(4, 2) == 0.5


def test_levenstein_matches_symbolic_evaluation():
    n, d, m = sp.symbols("n d m")
    expr = sp.sqrt((n * (m + 1) - d * (m * d + 1)) / ((n - d) * (m * d + 1)))
    for nn, dd, mm in [(4, 2, sp.Rational(1, 2)), (10, 3, 1), (7, 2, 1), (20, 4, sp.Rational(1, 2))]:
        exact = float(expr.subs({n: nn, d: dd, m: mm}))
        assert levenstein(nn, dd, float(mm)) == pytest.approx(exact, rel=1e-14)


def test_bukh_cox_literal_reading():
    n, d, m = sp.symbols("n d m")
    z = sp.Symbol("z")
    expr = z / (n * (1 + m * (n - d - 1) * sp.sqrt(1 / m + n - d)) - z)
    for nn, dd, field, mm in [(5, 2, "R", sp.Rational(1, 2)), (6, 3, "C", 1)]:
        zz = gerzon(nn - dd, field)
        exact = float(expr.subs({n: nn, d: dd, m: mm, z: zz}))
        assert bukh_cox(nn, dd, field) == pytest.approx(exact, rel=1e-14)


def test_companion_applicability():
    fr = ClassicalFrame([[1.0]] * 3)
    rows = companion_bounds(fr)
    assert not rows["exponential"]["applicable"] and rows["exponential"]["value"] is None
    assert rows["bukh_cox"]["applicable"]
    small = companion_bounds(mercedes_benz())
    assert not small["rankin"]["applicable"] and not small["levenstein"]["applicable"]
    rng = np.random.default_rng(3)
    big = companion_bounds(random_frame(rng, 5, 2, "R"))
    assert big["rankin"]["applicable"] and big["rankin"]["meets"]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 8), st.integers(0, 2**31), st.sampled_from(["R", "C"]))
def test_sum_bound_property(d, extra, seed, field):
    fr = random_frame(np.random.default_rng(seed), d + extra, d, field)
    for m in (1, 2, 3):
        assert welch_sum_bound(fr, m)["holds"]
