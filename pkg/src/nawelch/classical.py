"""Real and complex Welch bounds and companion coherence bounds, in floats.

These are the archimedean reference points; tolerances are relative 1e-9
for bound comparisons and 1e-12 for unit-norm checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

REL_TOL = 1e-9
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class ClassicalFrame:
    vectors: np.ndarray
    field: str = "R"

    def __post_init__(self):
        if self.field not in ("R", "C"):
            raise ValueError("field must be 'R' or 'C'")
        dtype = complex if self.field == "C" else float
        v = np.atleast_2d(np.asarray(self.vectors, dtype=dtype))
        norms = np.linalg.norm(v, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1) >= UNIT_TOL)
        if bad.size:
            raise ValueError(f"vector {int(bad[0])} has norm {norms[bad[0]]!r}, not 1")
        object.__setattr__(self, "vectors", v)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    def gram(self) -> np.ndarray:
        return self.vectors.conj() @ self.vectors.T


def _leq(a: float, b: float) -> bool:
    return a <= b + REL_TOL * max(abs(a), abs(b), 1.0)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= REL_TOL * max(abs(a), abs(b), 1.0)


def welch_sum_bound(frame: ClassicalFrame, m: int = 1) -> dict:
    """``sum_{j,k} |<t_j, t_k>|^(2m) >= n^2 / binom(d+m-1, m)``."""
    n, d = frame.n, frame.d
    lhs = float(np.sum(np.abs(frame.gram()) ** (2 * m)))
    rhs = n * n / math.comb(d + m - 1, m)
    return {
        "applicable": n > d,
        "equality": n > d and _close(lhs, rhs),
        "holds": _leq(rhs, lhs),
        "lhs": lhs,
        "m": m,
        "rhs": rhs,
    }


def welch_max_rhs(n: int, d: int, m: int) -> float:
    return (n / math.comb(d + m - 1, m) - 1) / (n - 1)


def welch_max_bound(frame: ClassicalFrame, m: int = 1) -> dict:
    """``max_{j != k} |<t_j, t_k>|^(2m) >= (n / binom(d+m-1, m) - 1) / (n - 1)``."""
    n, d = frame.n, frame.d
    c = coherence(frame)
    lhs = c ** (2 * m)
    rhs = welch_max_rhs(n, d, m) if n > 1 else float("nan")
    applicable = n > d
    return {
        "applicable": applicable,
        "coherence_pow": lhs,
        "equality": applicable and _close(lhs, rhs),
        "holds": (not applicable) or _leq(rhs, lhs),
        "m": m,
        "rhs": rhs,
    }


def coherence(frame: ClassicalFrame) -> float:
    if frame.n < 2:
        return 0.0
    g = np.abs(frame.gram())
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def gerzon(d: int, field: str) -> int:
    """Maximum number of equiangular lines: d^2 over C, d(d+1)/2 over R."""
    if d < 1:
        raise ValueError("d must be positive")
    if field == "C":
        return d * d
    if field == "R":
        return d * (d + 1) // 2
    raise ValueError("field must be 'R' or 'C'")


def bukh_cox(n: int, d: int, field: str) -> float:
    """Read literally: ``Z(n-d) / (n (1 + m (n-d-1) sqrt(1/m + n - d)) - Z(n-d))``."""
    mf = 0.5 if field == "R" else 1.0
    z = gerzon(n - d, field)
    return z / (n * (1 + mf * (n - d - 1) * math.sqrt(1 / mf + n - d)) - z)


def rankin(d: int) -> float:
    return 1 / math.sqrt(d)


def levenstein(n: int, d: int, mf: float) -> float:
    return math.sqrt((n * (mf + 1) - d * (mf * d + 1)) / ((n - d) * (mf * d + 1)))


def exponential(n: int, d: int) -> float:
    return 1 - 2 * n ** (-1 / (d - 1))


def companion_bounds(frame: ClassicalFrame) -> dict:
    """Each bound with applicability and whether the coherence meets it."""
    n, d = frame.n, frame.d
    mf = 0.5 if frame.field == "R" else 1.0
    mu = coherence(frame)
    z = gerzon(d, frame.field)
    out = {}

    def row(name, applicable, fn):
        if not applicable:
            out[name] = {"applicable": False, "value": None, "meets": None}
            return
        value = fn()
        out[name] = {"applicable": True, "value": value, "meets": _leq(value, mu)}

    row("bukh_cox", n > d, lambda: bukh_cox(n, d, frame.field))
    row("rankin", n > z, lambda: rankin(d))
    row("levenstein", n > z, lambda: levenstein(n, d, mf))
    row("exponential", d > 1, lambda: exponential(n, d))
    out["coherence"] = mu
    out["gerzon"] = z
    return out
