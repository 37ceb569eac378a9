"""Vector and matrix types over any scalar backend (functionals are row vectors).

Also the symmetric-power bookkeeping used for higher-order bounds and a
deliberately incomplete diagonalizability probe (rational eigenvalues
only; anything else is reported as undetermined, never as "no").
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .scalars import INF, PrecisionError, Scalar, common_field

SYM_DIM_CAP = 56


class DimensionMismatch(ValueError):
    pass


class CapExceeded(ValueError):
    """Symmetric power too large to materialise."""


def _min_valuation(entries) -> int | float:
    """Min valuation over entries; inexact zeros only bound from below."""
    best_exact, best_bound = INF, INF
    for x in entries:
        v, exact = x.valuation_bound()
        if exact:
            best_exact = min(best_exact, v)
        else:
            best_bound = min(best_bound, v)
    if best_bound < best_exact:
        raise PrecisionError("max-norm decided by an entry indistinguishable from zero")
    return best_exact


@dataclass(frozen=True)
class UVector:
    entries: tuple

    def __post_init__(self):
        if not self.entries:
            raise ValueError("vectors need at least one entry")
        object.__setattr__(self, "entries", tuple(self.entries))
        common_field(self.entries)

    @property
    def field(self):
        return self.entries[0].field

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def norm_valuation(self):
        """Valuation of the max-norm, ``min_i v(x_i)``."""
        return _min_valuation(self.entries)

    def scale(self, c) -> "UVector":
        return UVector(tuple(c * x for x in self.entries))

    def __add__(self, other: "UVector") -> "UVector":
        _check_dims(self, other)
        return UVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def to_json(self):
        return [x.to_json() for x in self.entries]


@dataclass(frozen=True)
class UFunctional:
    """``x -> sum_i coeffs[i] * x[i]``; operator norm is the max coefficient norm."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("functionals need at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        common_field(self.coeffs)

    @property
    def field(self):
        return self.coeffs[0].field

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def norm_valuation(self):
        return _min_valuation(self.coeffs)

    def __call__(self, x: UVector):
        return pairing(self, x)

    def scale(self, c) -> "UFunctional":
        return UFunctional(tuple(c * a for a in self.coeffs))

    def to_json(self):
        return [a.to_json() for a in self.coeffs]


def _check_dims(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension {len(a)} does not match {len(b)}")


def pairing(f: UFunctional, x: UVector):
    """``f(x) = sum_i f_i x_i``."""
    _check_dims(f, x)
    if f.field != x.field:
        common_field([f.coeffs[0], x.entries[0]])
    total = f.coeffs[0] * x.entries[0]
    for a, b in zip(f.coeffs[1:], x.entries[1:]):
        total = total + a * b
    return total


def basis_vector(field, d: int, i: int) -> UVector:
    return UVector(tuple(field.one() if k == i else field.zero() for k in range(d)))


def dual_basis_functional(field, d: int, i: int) -> UFunctional:
    return UFunctional(basis_vector(field, d, i).entries)


class UMatrix:
    """Dense matrix of scalars, stored row-major as a tuple of tuples."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise DimensionMismatch(f"row {i} has {len(r)} entries, expected {width}")
        self.rows = rows

    @classmethod
    def identity(cls, field, d: int) -> "UMatrix":
        return cls([[field.one() if i == j else field.zero() for j in range(d)] for i in range(d)])

    @classmethod
    def zeros(cls, field, r: int, c: int) -> "UMatrix":
        return cls([[field.zero()] * c for _ in range(r)])

    @classmethod
    def outer(cls, tau: UVector, f: UFunctional) -> "UMatrix":
        """The rank-one map ``x -> f(x) tau``, i.e. ``tau f^T``."""
        return cls([[t * a for a in f.coeffs] for t in tau.entries])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    @property
    def field(self):
        return self.rows[0][0].field

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "UMatrix") -> "UMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        return UMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "UMatrix") -> "UMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        return UMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "UMatrix":
        return UMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "UMatrix") -> "UMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = r[0] * c[0]
                for a, b in zip(r[1:], c[1:]):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return UMatrix(out)

    def apply(self, x: UVector) -> UVector:
        return UVector(tuple(pairing(UFunctional(r), x) for r in self.rows))

    def transpose(self) -> "UMatrix":
        return UMatrix(list(zip(*self.rows)))

    def is_zero(self) -> bool:
        """All entries zero at working precision."""
        return all(a.is_zero() for r in self.rows for a in r)

    def entries(self):
        return [a for r in self.rows for a in r]

    def to_json(self):
        return [[a.to_json() for a in r] for r in self.rows]

    def __repr__(self):
        return f"UMatrix({[list(r) for r in self.rows]!r})"


def trace(M: UMatrix):
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"trace of a non-square {M.shape} matrix")
    total = M.rows[0][0]
    for i in range(1, n):
        total = total + M.rows[i][i]
    return total


def determinant(M: UMatrix):
    """Gaussian elimination, pivoting on the largest-norm entry of the column."""
    n, m = M.shape
    if n != m:
        raise DimensionMismatch("determinant of a non-square matrix")
    field = M.field
    a = [list(r) for r in M.rows]
    det = field.one()
    for col in range(n):
        best = None
        for r in range(col, n):
            x = a[r][col]
            if x.is_zero():
                continue
            if best is None or x.valuation < a[best][col].valuation:
                best = r
        if best is None:
            return field.zero()
        if best != col:
            a[col], a[best] = a[best], a[col]
            det = -det
        piv = a[col][col]
        det = det * piv
        inv = piv.inverse()
        for r in range(col + 1, n):
            if a[r][col].is_zero():
                continue
            factor = a[r][col] * inv
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric invertible form ``<x, y> = x^T G y``."""

    gram: UMatrix

    def __post_init__(self):
        n, m = self.gram.shape
        if n != m:
            raise DimensionMismatch("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if self.gram[i, j] != self.gram[j, i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i}, {j})")
        if determinant(self.gram).is_zero():
            raise ValueError("Gram matrix is singular at working precision")

    @classmethod
    def standard(cls, field, d: int) -> "BilinearForm":
        return cls(UMatrix.identity(field, d))

    @property
    def d(self):
        return self.gram.shape[0]

    def __call__(self, x: UVector, y: UVector):
        return pairing(functional_from_form(self, y), x)


def functional_from_form(form: BilinearForm, v: UVector) -> UFunctional:
    """``<., v>`` as a functional: coefficients ``G v``."""
    if form.d != len(v):
        raise DimensionMismatch(f"form of dimension {form.d} applied to vector of length {len(v)}")
    return UFunctional(form.gram.apply(v).entries)


# ---------------------------------------------------------------- Sym^m


def sym_dim(d: int, m: int) -> int:
    """Dimension of the m-th symmetric power of a d-dimensional space."""
    if d < 1 or m < 1:
        raise ValueError("need d >= 1 and m >= 1")
    return math.comb(d + m - 1, m)


def sym_basis(d: int, m: int) -> list[tuple[int, ...]]:
    """Exponent vectors ``alpha`` with ``|alpha| = m``, lexicographically descending.

    The order starts at ``e_1^m`` and ends at ``e_d^m``.
    """
    out = []
    for combo in itertools.combinations_with_replacement(range(d), m):
        alpha = [0] * d
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return out


def _multinomial(alpha) -> int:
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def _monomial(values, alpha):
    field = values[0].field
    out = field.one()
    for x, a in zip(values, alpha):
        if a:
            out = out * x**a
    return out


def sym_power_matrix(f: UFunctional, tau: UVector, m: int, cap: int = SYM_DIM_CAP) -> UMatrix:
    """Matrix of ``x -> f^{(m)}(x) tau^{(m)}`` on the monomial basis of Sym^m.

    Sym^m is identified with degree-m forms: ``tau^{(m)}`` becomes
    ``(sum tau_i e_i)^m`` with coordinates ``multinom(alpha) tau^alpha`` and
    ``f^{(m)}`` evaluates a form at ``f``, so ``f^{(m)}(e^beta) = f^beta``.
    Then ``f^{(m)}(tau^{(m)}) = f(tau)^m`` and the trace is ``f(tau)^m``.
    """
    _check_dims(f, tau)
    d = len(tau)
    dim = sym_dim(d, m)
    if dim > cap:
        raise CapExceeded(f"Sym^{m} of dimension {d} has size {dim} > cap {cap}")
    if m == 1:
        return UMatrix.outer(tau, f)
    basis = sym_basis(d, m)
    t_coords = [_monomial(tau.entries, a) * _multinomial(a) for a in basis]
    f_coords = [_monomial(f.coeffs, b) for b in basis]
    return UMatrix([[t * g for g in f_coords] for t in t_coords])


# ---------------------------------------------------------------- diagonalizability


@dataclass(frozen=True)
class DiagonalizabilityProbe:
    """Outcome of :func:`probe_diagonalizable`.

    ``eigenvalues`` (with multiplicity, ascending) is set only when
    diagonalizable; otherwise ``reason`` says why the probe gave up.
    """

    diagonalizable: bool
    eigenvalues: tuple | None = None
    reason: str | None = None

    @property
    def status(self) -> str:
        return "yes" if self.diagonalizable else "undetermined"


def _lift(M: UMatrix):
    rows = []
    for r in M.rows:
        row = []
        for a in r:
            q = a.to_rational()
            if q is None:
                return None
            row.append(q)
        rows.append(row)
    return rows


def _charpoly(a, zero, one):
    """Berkowitz: characteristic polynomial coefficients, leading first.

    Division free, so it runs unchanged on any backend.
    """
    n = len(a)
    vect = [one]
    for k in range(n):
        # Column/row blocks of the leading (k+1) x (k+1) submatrix.
        r_row = a[k][:k]
        c_col = [a[i][k] for i in range(k)]
        akk = a[k][k]
        big = [a[i][:k] for i in range(k)]
        toep = [one, -akk]
        power = c_col
        for _ in range(k):
            s = zero
            for x, y in zip(r_row, power):
                s = s + x * y
            toep.append(-s)
            power = [_dot(row, power, zero) for row in big]
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i, len(vect) - 1) + 1):
                if i - j < len(toep):
                    s = s + toep[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def _dot(u, v, zero):
    s = zero
    for x, y in zip(u, v):
        s = s + x * y
    return s


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction] | None:
    """All rational roots with multiplicity, or None if some root is irrational."""
    coeffs = list(coeffs)
    roots: list[Fraction] = []
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        roots.append(Fraction(0))
    degree = len(coeffs) - 1
    if degree == 0:
        return roots
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    lead, const = abs(ints[0]), abs(ints[-1])
    candidates = set()
    for num in sympy.divisors(const):
        for den in sympy.divisors(lead):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    poly = [Fraction(c) for c in ints]
    for r in sorted(candidates):
        if len(poly) == 1:
            break
        while len(poly) > 1:
            quotient, rem = _synthetic_division(poly, r)
            if rem != 0:
                break
            roots.append(r)
            poly = quotient
    if len(poly) > 1:
        return None
    return sorted(roots)


def _synthetic_division(poly, r):
    out = [poly[0]]
    for c in poly[1:]:
        out.append(c + out[-1] * r)
    return out[:-1], out[-1]


def _rational_nullspace(a: list[list[Fraction]]) -> list[list[Fraction]]:
    rows = [list(r) for r in a]
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [x - fac * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def probe_diagonalizable(M: UMatrix) -> DiagonalizabilityProbe:
    """Try to certify that ``M`` is diagonalizable with rational eigenvalues.

    If every entry lifts to a rational at working precision the work is
    exact over Q: characteristic polynomial, rational roots, squarefree
    minimal polynomial, eigenvectors, and finally ``M P = P D`` is checked
    back in the original backend.  Otherwise the characteristic polynomial
    is computed in the backend and lifted, and the squarefree minimal
    polynomial is checked there.  Anything that does not go through is
    "undetermined".
    """
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"probe of a non-square {M.shape} matrix")
    field = M.field
    lifted = _lift(M)
    if lifted is not None:
        coeffs = _charpoly(lifted, Fraction(0), Fraction(1))
    else:
        try:
            back = _charpoly([list(r) for r in M.rows], field.zero(), field.one())
        except PrecisionError:
            return DiagonalizabilityProbe(False, reason="precision exhausted in characteristic polynomial")
        coeffs = [c.to_rational() for c in back]
        if any(c is None for c in coeffs):
            return DiagonalizabilityProbe(False, reason="characteristic polynomial not rational")
    try:
        roots = _rational_roots(coeffs)
    except ValueError:
        roots = None
    if roots is None:
        return DiagonalizabilityProbe(False, reason="eigenvalues not all rational")
    distinct = sorted(set(roots))

    if lifted is not None:
        prod = _fraction_identity(n)
        for lam in distinct:
            prod = _fraction_matmul(prod, _fraction_shift(lifted, lam))
        if any(x != 0 for r in prod for x in r):
            return DiagonalizabilityProbe(False, reason="minimal polynomial not squarefree")
        columns, diag = [], []
        for lam in distinct:
            for v in _rational_nullspace(_fraction_shift(lifted, lam)):
                columns.append(v)
                diag.append(lam)
        if len(columns) != n:
            return DiagonalizabilityProbe(False, reason="eigenspaces do not span")
        P = UMatrix([[field.from_rational(columns[j][i]) for j in range(n)] for i in range(n)])
        D = UMatrix(
            [[field.from_rational(diag[i]) if i == j else field.zero() for j in range(n)] for i in range(n)]
        )
        if not (M @ P - P @ D).is_zero():
            return DiagonalizabilityProbe(False, reason="eigendecomposition check failed at working precision")
        return DiagonalizabilityProbe(True, eigenvalues=tuple(roots))

    ident = UMatrix.identity(field, n)
    prod = ident
    try:
        for lam in distinct:
            prod = prod @ (M - ident.scale(field.from_rational(lam)))
    except PrecisionError:
        return DiagonalizabilityProbe(False, reason="precision exhausted in minimal polynomial check")
    if not prod.is_zero():
        return DiagonalizabilityProbe(False, reason="minimal polynomial not squarefree")
    return DiagonalizabilityProbe(True, eigenvalues=tuple(roots))


def _fraction_identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _fraction_shift(a, lam):
    return [[x - lam if i == j else x for j, x in enumerate(r)] for i, r in enumerate(a)]


def _fraction_matmul(a, b):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in cols] for r in a]


def rational_inverse(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a rational matrix (Gauss-Jordan)."""
    n = len(a)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                fac = aug[i][c]
                aug[i] = [x - fac * y for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]
