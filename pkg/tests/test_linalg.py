import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nawelch.linalg import (
    BilinearForm,
    CapExceeded,
    DimensionMismatch,
    UFunctional,
    UMatrix,
    UVector,
    basis_vector,
    determinant,
    dual_basis_functional,
    functional_from_form,
    pairing,
    probe_diagonalizable,
    sym_basis,
    sym_dim,
    sym_power_matrix,
    trace,
)
from nawelch.scalars import LaurentField, PadicField, PrecisionError, RationalField


def vec(F, xs):
    return UVector([F(x) for x in xs])


def fun(F, xs):
    return UFunctional([F(x) for x in xs])


def mat(F, rows):
    return UMatrix([[F(x) for x in r] for r in rows])


def test_pairing_examples():
    F = PadicField(3)
    assert pairing(dual_basis_functional(F, 2, 0), basis_vector(F, 2, 0)) == 1
    assert pairing(dual_basis_functional(F, 2, 0), basis_vector(F, 2, 1)).is_zero()
    x = pairing(fun(F, [1, 1]), vec(F, [1, 2]))
    assert x == 3 and x.valuation == 1


def test_pairing_dimension_mismatch():
    F = PadicField(3)
    with pytest.raises(DimensionMismatch):
        pairing(fun(F, [1, 1]), vec(F, [1, 2, 3]))


def test_trace_examples():
    F = PadicField(5)
    assert trace(UMatrix.identity(F, 4)) == 4
    assert trace(mat(F, [[7, 0], [0, 11]])) == 18
    tau, f = vec(F, [1, 2, 3]), fun(F, [4, 5, 6])
    assert trace(UMatrix.outer(tau, f)) == pairing(f, tau)


def test_norm_is_min_entry_valuation():
    F = PadicField(2)
    assert vec(F, [4, 6, 8]).norm_valuation == 1
    assert fun(F, [Fraction(1, 4), 2]).norm_valuation == -2


def test_norm_refuses_undecidable_entry():
    F = PadicField(2, 3)
    z = F(1) - F(1)
    with pytest.raises(PrecisionError):
        _ = UVector([z, F(16)]).norm_valuation


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_trace_of_product_commutes(data):
    F = PadicField(data.draw(st.sampled_from([2, 3, 5])))
    n = data.draw(st.integers(1, 4))
    ent = st.integers(-20, 20)
    A = mat(F, [[data.draw(ent) for _ in range(n)] for _ in range(n)])
    B = mat(F, [[data.draw(ent) for _ in range(n)] for _ in range(n)])
    assert trace(A @ B) == trace(B @ A)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_matrix_product_associative(data):
    Q = RationalField(3)
    ent = st.integers(-9, 9)
    A, B, C = ([[data.draw(ent) for _ in range(3)] for _ in range(3)] for _ in range(3))
    A, B, C = mat(Q, A), mat(Q, B), mat(Q, C)
    assert ((A @ B) @ C).to_json() == (A @ (B @ C)).to_json()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3), st.lists(st.integers(-9, 9), min_size=3, max_size=3),
       st.integers(-5, 5), st.integers(-5, 5))
def test_functional_linearity(c, x, a, b):
    F = PadicField(7)
    f = fun(F, c)
    u, v = vec(F, x), vec(F, x[::-1])
    assert f(u.scale(F(a)) + v.scale(F(b))) == F(a) * f(u) + F(b) * f(v)


def test_determinant_against_sympy():
    rng = random.Random(4)
    Q = RationalField(5)
    for _ in range(30):
        rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        assert determinant(mat(Q, rows)).value == sympy.Matrix(rows).det()


def test_sym_dim_examples():
    assert sym_dim(2, 1) == 2
    assert sym_dim(2, 2) == 3
    assert sym_dim(3, 2) == 6
    assert len(sym_basis(3, 2)) == 6
    assert sym_basis(2, 2)[0] == (2, 0)


def test_sym_power_first_order_is_outer_product():
    F = PadicField(3)
    tau, f = vec(F, [1, 2]), fun(F, [5, 7])
    assert sym_power_matrix(f, tau, 1).to_json() == UMatrix.outer(tau, f).to_json()


def test_sym_power_projector_on_e1_squared():
    F = PadicField(3)
    M = sym_power_matrix(dual_basis_functional(F, 2, 0), basis_vector(F, 2, 0), 2)
    nonzero = [(i, j) for i in range(3) for j in range(3) if not M[i, j].is_zero()]
    assert nonzero == [(0, 0)] and M[0, 0] == 1


def test_sym_power_cap():
    F = PadicField(3)
    with pytest.raises(CapExceeded):
        sym_power_matrix(fun(F, [1] * 6), vec(F, [1] * 6), 3, cap=20)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_sym_power_trace_is_pairing_power(data):
    F = data.draw(st.sampled_from([PadicField(2), PadicField(5), LaurentField(8)]))
    d = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(1, 3))
    ent = st.integers(-6, 6)
    tau = vec(F, [data.draw(ent) for _ in range(d)])
    f = fun(F, [data.draw(ent) for _ in range(d)])
    assert trace(sym_power_matrix(f, tau, m)) == pairing(f, tau) ** m


def test_functional_from_form_examples():
    F = PadicField(3)
    std = BilinearForm.standard(F, 2)
    e1 = basis_vector(F, 2, 0)
    assert functional_from_form(std, e1).to_json() == dual_basis_functional(F, 2, 0).to_json()
    two = BilinearForm(mat(F, [[2, 0], [0, 2]]))
    assert functional_from_form(two, e1).to_json() == fun(F, [2, 0]).to_json()
    g = BilinearForm(mat(F, [[1, 2], [2, 5]]))
    u, v = vec(F, [1, 4]), vec(F, [3, -2])
    assert pairing(functional_from_form(g, u), v) == pairing(functional_from_form(g, v), u)


def test_bilinear_form_rejects_bad_gram():
    F = PadicField(3)
    with pytest.raises(ValueError):
        BilinearForm(mat(F, [[1, 2], [3, 1]]))
    with pytest.raises(ValueError):
        BilinearForm(mat(F, [[1, 1], [1, 1]]))


def test_probe_examples():
    Q = RationalField(3)
    r = probe_diagonalizable(mat(Q, [[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
    assert r.status == "yes" and list(r.eigenvalues) == [1, 2, 3]
    assert probe_diagonalizable(mat(Q, [[0, 1], [0, 0]])).status == "undetermined"
    r = probe_diagonalizable(mat(Q, [[2, 0], [0, 2]]))
    assert r.status == "yes" and list(r.eigenvalues) == [2, 2]


def test_probe_irrational_eigenvalues_undetermined():
    Q = RationalField(5)
    assert probe_diagonalizable(mat(Q, [[0, 2], [1, 0]])).status == "undetermined"


def test_probe_non_square():
    with pytest.raises(DimensionMismatch):
        probe_diagonalizable(mat(RationalField(3), [[1, 2, 3], [4, 5, 6]]))


def test_probe_laurent_conjugate():
    L = LaurentField(8)
    t = L.uniformizer
    P = UMatrix([[L(1), t], [L(0), L(1)]])
    Pinv = UMatrix([[L(1), -t], [L(0), L(1)]])
    D = UMatrix([[L(2), L(0)], [L(0), L(5)]])
    r = probe_diagonalizable(P @ D @ Pinv)
    assert r.status == "yes" and list(r.eigenvalues) == [2, 5]


def test_probe_never_claims_a_false_diagonalization():
    rng = random.Random(11)
    Q = RationalField(7)
    for trial in range(120):
        n = rng.randint(1, 4)
        if trial % 3 == 0:
            # Jordan-type: conjugate a matrix with a nontrivial block
            J = [[rng.choice([1, 2]) if i == j else (1 if j == i + 1 and rng.random() < 0.5 else 0)
                  for j in range(n)] for i in range(n)]
        else:
            J = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        S = sympy.Matrix(J)
        r = probe_diagonalizable(mat(Q, J))
        if r.status == "yes":
            assert S.is_diagonalizable()
            ev = sorted(sum(([k] * mult for k, mult in S.eigenvals().items()), []))
            assert [sympy.Rational(x.numerator, x.denominator) for x in r.eigenvalues] == ev
