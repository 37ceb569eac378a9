"""Finitely indexed measured systems and the quantities built from them.

A system is a list of points g with positive rational weights w_g, a
vector tau_g and a functional f_g for each point.  Integrals over the index
set are weighted sums; the diagonal of G x G carries mass w_g**2 at (g, g).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (
    SYM_DIM_CAP,
    BilinearForm,
    CapExceeded,
    DimensionMismatch,
    UFunctional,
    UMatrix,
    UVector,
    pairing,
    rational_inverse,
    sym_dim,
    sym_power_matrix,
)
from .scalars import (
    INF,
    BackendMismatch,
    PadicField,
    PadicScalar,
    field_from_config,
    format_rational,
    parse_rational,
)

CONSTRAINTS = frozenset({"normalized", "unit-norm", "tight", "diagonalizable"})


class SystemFileError(ValueError):
    """Malformed system description; the message names the offending position."""


@dataclass(frozen=True)
class MeasuredIndex:
    labels: tuple
    weights: tuple
    group: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if len(self.labels) != len(self.weights):
            raise ValueError("one weight per label required")
        for i, w in enumerate(self.weights):
            if w <= 0:
                raise ValueError(f"weight[{i}] must be positive, got {w}")
        if self.group is not None:
            orders = tuple(int(k) for k in self.group)
            if any(k < 1 for k in orders) or math.prod(orders) != len(self.labels):
                raise ValueError(f"group orders {orders} do not multiply to {len(self.labels)}")
            object.__setattr__(self, "group", orders)

    @classmethod
    def counting(cls, n: int, group: Sequence[int] | None = None) -> "MeasuredIndex":
        return cls(tuple(str(i) for i in range(n)), (Fraction(1),) * n, tuple(group) if group else None)

    def __len__(self):
        return len(self.labels)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def diagonal_mass(self) -> Fraction:
        return sum((w * w for w in self.weights), Fraction(0))

    @property
    def is_counting(self) -> bool:
        return all(w == 1 for w in self.weights)

    def translations(self) -> list[list[int]]:
        """Index permutations g -> g + h for every h, in a direct product of cyclics.

        Points are numbered in mixed radix, last factor fastest.
        """
        if self.group is None:
            return [list(range(len(self)))]
        orders = self.group
        coords = []
        for g in range(len(self)):
            c, r = [], g
            for k in reversed(orders):
                c.append(r % k)
                r //= k
            coords.append(tuple(reversed(c)))
        index = {c: i for i, c in enumerate(coords)}
        return [
            [index[tuple((a + b) % k for a, b, k in zip(cg, ch, orders))] for cg in coords]
            for ch in coords
        ]


@dataclass(frozen=True)
class SystemPair:
    index: MeasuredIndex
    tau: tuple
    f: tuple
    form: BilinearForm | None = None

    def __post_init__(self):
        object.__setattr__(self, "tau", tuple(self.tau))
        object.__setattr__(self, "f", tuple(self.f))
        n = len(self.index)
        if len(self.tau) != n or len(self.f) != n:
            raise DimensionMismatch(f"{n} points but {len(self.tau)} vectors and {len(self.f)} functionals")
        if n:
            d = len(self.tau[0])
            fld = self.tau[0].field
            for g, (t, fn) in enumerate(zip(self.tau, self.f)):
                if len(t) != d:
                    raise DimensionMismatch(f"tau[{g}]: expected {d} entries, got {len(t)}")
                if len(fn) != d:
                    raise DimensionMismatch(f"f[{g}]: expected {d} entries, got {len(fn)}")
                if t.field != fld or fn.field != fld:
                    raise BackendMismatch(f"point {g} uses a different backend")

    @property
    def n(self) -> int:
        return len(self.index)

    @property
    def d(self) -> int:
        return len(self.tau[0])

    @property
    def field(self):
        return self.tau[0].field

    def weight_scalars(self) -> list:
        return [self.field.from_rational(w) for w in self.index.weights]

    def pairing_matrix(self) -> list[list]:
        """``P[g][h] = f_g(tau_h)``."""
        return [[pairing(fg, th) for th in self.tau] for fg in self.f]

    def scaled(self, c) -> "SystemPair":
        """Replace every (tau_g, f_g) by (c tau_g, c^-1 f_g)."""
        ci = c.inverse()
        return SystemPair(self.index, [t.scale(c) for t in self.tau], [fn.scale(ci) for fn in self.f], self.form)


def frame_operator(system: SystemPair, m: int = 1, cap: int = SYM_DIM_CAP) -> UMatrix:
    """``sum_g w_g tau_g^(m) (f_g^(m))^T`` on the monomial basis of Sym^m."""
    if m < 1:
        raise ValueError("order m must be at least 1")
    if sym_dim(system.d, m) > cap:
        raise CapExceeded(f"Sym^{m} of dimension {sym_dim(system.d, m)} exceeds cap {cap}")
    total = None
    for w, t, fn in zip(system.weight_scalars(), system.tau, system.f):
        term = sym_power_matrix(fn, t, m, cap).scale(w)
        total = term if total is None else total + term
    return total


@dataclass(frozen=True)
class TightnessCertificate:
    b: object
    residual_valuation: int | float
    valid: bool
    m: int = 1

    def to_json(self) -> dict:
        from .scalars import format_valuation

        return {
            "b": self.b.to_json(),
            "m": self.m,
            "residual_valuation": format_valuation(self.residual_valuation),
            "valid": self.valid,
        }


def tightness_check(system: SystemPair, m: int = 1, cap: int = SYM_DIM_CAP) -> TightnessCertificate:
    """Certify ``S = b I`` with ``b = S[0][0]``; zero means zero at working precision."""
    S = frame_operator(system, m, cap)
    b = S[0, 0]
    k = S.shape[0]
    residual = INF
    for i in range(k):
        for j in range(k):
            r = S[i, j] - b if i == j else S[i, j]
            if not r.is_zero():
                residual = min(residual, r.valuation)
    return TightnessCertificate(b, residual, residual == INF, m)


@dataclass(frozen=True)
class Integrals:
    m: int
    diag_sq: object
    trace: object
    double: object
    sup_offdiag: int | float
    sup_exact: bool
    offdiag_abs_integral: Fraction


def integrals(system: SystemPair, m: int = 1) -> Integrals:
    """The weighted sums entering the order-m bound.

    ``sup_offdiag`` is a valuation (the sup of norms is the min of
    valuations) over unordered pairs; ``offdiag_abs_integral`` is the real
    number ``sum_{g != h} w_g w_h |f_g(tau_h) f_h(tau_g)|^m`` as a fraction.
    Pairs known only to be zero at working precision contribute their
    precision bound to both.
    """
    if m < 1:
        raise ValueError("order m must be at least 1")
    fld = system.field
    P = system.pairing_matrix()
    ws = system.weight_scalars()
    wq = system.index.weights
    n = system.n
    base = Fraction(fld.norm_base)

    diag_sq = fld.zero()
    tr = fld.zero()
    for g in range(n):
        a = P[g][g] ** m
        tr = tr + ws[g] * a
        diag_sq = diag_sq + ws[g] * ws[g] * a * a
    cross = fld.zero()
    sup_v, sup_exact = INF, True
    abs_sum = Fraction(0)
    for g in range(n):
        for h in range(g + 1, n):
            q = (P[g][h] * P[h][g]) ** m
            cross = cross + ws[g] * ws[h] * q
            v, exact = q.valuation_bound()
            if v < sup_v or (v == sup_v and not exact):
                sup_v, sup_exact = v, exact
            if v != INF:
                abs_sum += 2 * wq[g] * wq[h] * base ** (-v)
    double = diag_sq + cross + cross
    return Integrals(m, diag_sq, tr, double, sup_v, sup_exact, abs_sum)


# ------------------------------------------------------------------ JSON


def system_to_json(system: SystemPair) -> dict:
    out = {
        "backend": system.field.config(),
        "d": system.d,
        "measure": [
            {"label": lab, "weight": format_rational(w)}
            for lab, w in zip(system.index.labels, system.index.weights)
        ],
        "tau": [t.to_json() for t in system.tau],
        "f": [fn.to_json() for fn in system.f],
    }
    if system.index.group is not None:
        out["group"] = list(system.index.group)
    if system.form is not None:
        out["form"] = system.form.gram.to_json()
    return out


def _scalar_row(fld, row, where: str, d: int) -> tuple:
    if not isinstance(row, list):
        raise SystemFileError(f"{where}: expected a list of {d} scalars")
    if len(row) != d:
        raise SystemFileError(f"{where}: expected {d} entries, got {len(row)}")
    out = []
    for j, obj in enumerate(row):
        try:
            out.append(fld.from_json(obj))
        except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
            raise SystemFileError(f"{where}[{j}]: {exc}") from None
    return tuple(out)


def system_from_json(obj: dict, precision: int | None = None) -> SystemPair:
    if not isinstance(obj, dict):
        raise SystemFileError("top level: expected an object")
    for key in ("backend", "d", "measure", "tau", "f"):
        if key not in obj:
            raise SystemFileError(f"top level: missing key '{key}'")
    try:
        fld = field_from_config(obj["backend"], precision)
    except (ValueError, KeyError, TypeError) as exc:
        raise SystemFileError(f"backend: {exc}") from None
    d = obj["d"]
    if not isinstance(d, int) or d < 1:
        raise SystemFileError(f"d: expected a positive integer, got {d!r}")
    measure = obj["measure"]
    if not isinstance(measure, list) or not measure:
        raise SystemFileError("measure: expected a nonempty list")
    labels, weights = [], []
    for i, item in enumerate(measure):
        try:
            labels.append(str(item["label"]))
            w = parse_rational(item["weight"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise SystemFileError(f"measure[{i}]: {exc}") from None
        if w <= 0:
            raise SystemFileError(f"measure[{i}]: weight must be positive, got {format_rational(w)}")
        weights.append(w)
    n = len(labels)
    for key in ("tau", "f"):
        if not isinstance(obj[key], list) or len(obj[key]) != n:
            got = len(obj[key]) if isinstance(obj[key], list) else "none"
            raise SystemFileError(f"{key}: expected {n} rows, got {got}")
    tau = [UVector(_scalar_row(fld, row, f"tau[{g}]", d)) for g, row in enumerate(obj["tau"])]
    fs = [UFunctional(_scalar_row(fld, row, f"f[{g}]", d)) for g, row in enumerate(obj["f"])]
    try:
        index = MeasuredIndex(labels, weights, obj.get("group"))
    except (ValueError, TypeError) as exc:
        raise SystemFileError(f"group: {exc}") from None
    form = None
    if obj.get("form") is not None:
        gram = obj["form"]
        if not isinstance(gram, list) or len(gram) != d:
            raise SystemFileError(f"form: expected {d} rows")
        rows = [_scalar_row(fld, row, f"form[{i}]", d) for i, row in enumerate(gram)]
        try:
            form = BilinearForm(UMatrix(rows))
        except ValueError as exc:
            raise SystemFileError(f"form: {exc}") from None
    return SystemPair(index, tau, fs, form)


# ------------------------------------------------------------- generators


def _rand_fraction(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if q or not nonzero:
            return q


def _rand_scalar(fld, rng: random.Random, nonzero: bool = True):
    """A small rational times a uniformizer power in [-1, 1]."""
    c = fld.from_rational(_rand_fraction(rng, nonzero))
    e = rng.choice((-1, 0, 0, 1))
    return c * fld.uniformizer ** e if e else c


def _rand_invertible(rng: random.Random, d: int) -> list[list[Fraction]]:
    while True:
        a = [[Fraction(rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)]
        try:
            rational_inverse(a)
        except ZeroDivisionError:
            continue
        return a


def _rand_weights(rng: random.Random, n: int, counting: bool) -> list[Fraction]:
    if counting:
        return [Fraction(1)] * n
    return [Fraction(rng.randint(1, 6)) for _ in range(n)]


def _field_matrix(fld, a) -> list[list]:
    return [[fld.from_rational(x) for x in row] for row in a]


def _padic_sqrt(fld: PadicField, a: int) -> PadicScalar:
    """A square root of the integer ``a`` (a p-adic unit square) at full precision."""
    p, N = fld.prime, fld.precision
    if p == 2:
        if a % 8 != 1:
            raise ValueError(f"{a} is not a 2-adic unit square")
        r = 1
        for k in range(3, N + 2):
            if (r * r - a) % 2 ** (k + 1):
                r += 2 ** (k - 1)
        return PadicScalar(fld, 0, r % 2**N, N)
    roots = [r for r in range(1, p) if (r * r - a) % p == 0]
    if not roots:
        raise ValueError(f"{a} is not a square modulo {p}")
    r, k = roots[0], 1
    while k < N:
        k = min(2 * k, N)
        mod = p**k
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return PadicScalar(fld, 0, r, N)


def _design_parameters(p: int) -> list[int]:
    """Integers q > 1, prime to p, with -q a square in Q_p."""
    out, q = [], 2
    while len(out) < 4:
        if q % p:
            ok = (-q) % 8 == 1 if p == 2 else pow(-q % p, (p - 1) // 2, p) == 1
            if ok:
                out.append(q)
        q += 1
    return out


def _order_two_design(fld: PadicField, d: int, rng: random.Random):
    """Points tight on Sym^1 and Sym^2, built from a weighted set of scalars.

    The one-dimensional set {+-1, +-sqrt(-q), +-s} with suitable weights has
    vanishing moments of orders +-1 and +-2; a product of such sets times the
    radial set {1, e_1, ..., e_d} gives a system whose frame operators on
    Sym^1 and Sym^2 are scalar.
    """
    q = rng.choice(_design_parameters(fld.prime))
    s = math.isqrt(q) + rng.randint(1, 3)
    den = s * s * (q * q - 1)
    w1 = Fraction(s**4 - q * q, den)
    wa = Fraction((s**4 - 1) * q, den)
    wb = Fraction(1)
    scale = math.lcm(w1.denominator, wa.denominator)
    root = _padic_sqrt(fld, -q)
    one = fld.one()
    ys = [
        (one, w1 * scale), (-one, w1 * scale),
        (root, wa * scale), (-root, wa * scale),
        (fld.from_rational(s), wb * scale), (fld.from_rational(-s), wb * scale),
    ]
    radial = [[1] * d] + [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    points = []
    for zs in _product(ys, d - 1):
        z = [one] + [y for y, _ in zs]
        w = math.prod((c for _, c in zs), start=Fraction(1))
        for u in radial:
            tau = [z[i] if u[i] else fld.zero() for i in range(d)]
            f = [z[i].inverse() for i in range(d)]
            points.append((w, tau, f))
    return points


def _product(items, k):
    if k == 0:
        return [()]
    return [(a,) + rest for a in items for rest in _product(items, k - 1)]


def design_size(d: int) -> int:
    """Number of points in one order-two tight design in dimension d."""
    return 6 ** (d - 1) * (d + 1)


def random_system(
    field,
    d: int,
    n: int,
    seed: int = 0,
    constraints: Iterable[str] = (),
    *,
    order: int = 1,
    counting: bool = True,
) -> SystemPair:
    """A seeded random system honoring ``constraints``.

    ``tight`` unions scaled dual-basis families (needs ``d | n``); with
    ``order=2`` it unions order-two designs instead (p-adic only, ``n`` a
    multiple of ``design_size(d)``).  ``diagonalizable`` conjugates rank-one
    projections by ``diag(t^k) R`` with ``R`` rational, so eigenvalues stay
    rational.  ``normalized`` forces ``f_g(tau_g) = 1``; ``unit-norm``
    rescales each tau_g to norm one and compensates in f_g.
    """
    constraints = frozenset(constraints)
    unknown = constraints - CONSTRAINTS
    if unknown:
        raise ValueError(f"unknown constraints: {sorted(unknown)}")
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    rng = random.Random(seed)
    fld = field
    normalized = "normalized" in constraints

    if "tight" in constraints and order == 2:
        if not isinstance(fld, PadicField):
            raise ValueError("order-two tight systems are only constructed over Q_p")
        size = design_size(d)
        if n % size:
            raise ValueError(f"order-two tight construction needs n a multiple of {size}")
        pts = []
        for _ in range(n // size):
            pts.extend(_order_two_design(fld, d, rng))
        if normalized:
            # f_g(tau_g) = k is 1 or d; dividing f_g by k and multiplying the
            # weight by k**2 keeps both frame operators scalar
            pts = [(w * sum(1 for a in t if not a.is_zero()) ** 2, t, fn) for w, t, fn in pts]
        weights = [w for w, _, _ in pts]
        tau = [UVector(t) for _, t, _ in pts]
        fs = [UFunctional(fn) for _, _, fn in pts]
        tau, fs = _conjugate(fld, rng, d, tau, fs)
        tau, fs = _rescale(fld, rng, tau, fs)
    elif "tight" in constraints:
        if order != 1:
            raise ValueError("tight construction supports order 1 or 2")
        if n % d:
            raise ValueError(f"tight construction needs d | n (d={d}, n={n})")
        weights, tau, fs = [], [], []
        for _ in range(n // d):
            B = _rand_invertible(rng, d)
            Binv = _field_matrix(fld, rational_inverse(B))
            Bf = _field_matrix(fld, B)
            w = _rand_weights(rng, 1, counting)[0]
            for i in range(d):
                c = _rand_scalar(fld, rng)
                col = UVector([Bf[r][i] for r in range(d)]).scale(c)
                row = UFunctional(Binv[i]).scale(c.inverse())
                weights.append(w)
                tau.append(col)
                fs.append(row)
    elif "diagonalizable" in constraints:
        weights = _rand_weights(rng, n, counting)
        R = _rand_invertible(rng, d)
        Rinv = rational_inverse(R)
        ks = [rng.randint(-1, 1) for _ in range(d)]
        pi = fld.uniformizer
        P = [[fld.from_rational(R[i][j]) * pi ** ks[i] for j in range(d)] for i in range(d)]
        Pinv = [[fld.from_rational(Rinv[i][j]) * pi ** (-ks[j]) for j in range(d)] for i in range(d)]
        tau, fs = [], []
        for g in range(n):
            i = g % d
            beta = _rand_scalar(fld, rng)
            c = Fraction(1) if normalized else _rand_fraction(rng)
            tau.append(UVector([P[r][i] for r in range(d)]).scale(beta))
            fs.append(UFunctional(Pinv[i]).scale(fld.from_rational(c) / beta))
    else:
        weights = _rand_weights(rng, n, counting)
        tau, fs = [], []
        for _ in range(n):
            while True:
                t = UVector([_rand_scalar(fld, rng, nonzero=False) for _ in range(d)])
                fn = UFunctional([_rand_scalar(fld, rng, nonzero=False) for _ in range(d)])
                if not normalized or not pairing(fn, t).is_zero():
                    break
            tau.append(t)
            fs.append(fn)

    if normalized:
        fs = [fn.scale(pairing(fn, t).inverse()) for t, fn in zip(tau, fs)]
    if "unit-norm" in constraints:
        pi = fld.uniformizer
        out_t, out_f = [], []
        for t, fn in zip(tau, fs):
            v = t.norm_valuation
            if v == INF:
                out_t.append(t)
                out_f.append(fn)
                continue
            out_t.append(t.scale(pi ** (-v)))
            out_f.append(fn.scale(pi**v))
        tau, fs = out_t, out_f
    index = MeasuredIndex(tuple(str(g) for g in range(len(tau))), weights)
    return SystemPair(index, tau, fs)


def _conjugate(fld, rng, d, tau, fs):
    """Apply a random rational change of basis: tau -> A tau, f -> f A^-1."""
    A = _rand_invertible(rng, d)
    Ainv = rational_inverse(A)
    Af, Aif = _field_matrix(fld, A), _field_matrix(fld, Ainv)
    new_t = [UVector([sum((Af[i][j] * t[j] for j in range(d)), fld.zero()) for i in range(d)]) for t in tau]
    new_f = [UFunctional([sum((fn[i] * Aif[i][j] for i in range(d)), fld.zero()) for j in range(d)]) for fn in fs]
    return new_t, new_f


def _rescale(fld, rng, tau, fs):
    out_t, out_f = [], []
    for t, fn in zip(tau, fs):
        c = _rand_scalar(fld, rng)
        out_t.append(t.scale(c))
        out_f.append(fn.scale(c.inverse()))
    return out_t, out_f


def orthonormal_system(field, d: int) -> SystemPair:
    """The standard basis with its dual functionals, counting measure."""
    from .linalg import basis_vector, dual_basis_functional

    return SystemPair(
        MeasuredIndex.counting(d),
        [basis_vector(field, d, i) for i in range(d)],
        [dual_basis_functional(field, d, i) for i in range(d)],
    )


def cyclic_example(field) -> SystemPair:
    """G = Z/4 with counting measure, tau_g = e_(g mod 2), f_g its dual."""
    from .linalg import basis_vector, dual_basis_functional

    return SystemPair(
        MeasuredIndex.counting(4, group=[4]),
        [basis_vector(field, 2, g % 2) for g in range(4)],
        [dual_basis_functional(field, 2, g % 2) for g in range(4)],
    )
