"""Both sides of the ultrametric Welch bounds, with hypothesis bookkeeping.

Everything is a valuation comparison.  The left side is the larger of the
norms of the diagonal integral and of the off-diagonal supremum, i.e. the
smaller valuation; the right side is ``|I_trace|**2 / |D_m|``.  A verdict
is only ``holds`` or ``fails`` when one of two hypothesis paths is
verified: a diagonalizable frame operator over a field with the
sum-of-squares property (Laurent backend), or a scalar frame operator over
Q_p.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .frames import SystemPair, frame_operator, integrals, tightness_check
from .linalg import (
    SYM_DIM_CAP,
    BilinearForm,
    functional_from_form,
    pairing,
    probe_diagonalizable,
    sym_dim,
)
from .scalars import INF, LaurentField, PrecisionError, format_valuation, rational_valuation

HOLDS = "holds"
FAILS = "fails"
UNVERIFIED = "hypothesis-unverified"


def _norm(v) -> dict | None:
    if v is None:
        return None
    return {"exponent": "-inf" if v == INF else -int(v)}


@dataclass(frozen=True)
class WelchReport:
    m: int
    path: str | None
    d: int
    D_m: int
    lhs_diag: int | float
    lhs_diag_exact: bool
    lhs_sup: int | float
    lhs_sup_exact: bool
    lhs: int | float
    lhs_exact: bool
    rhs: int | float
    rhs_exact: bool
    trace_valuation: int | float
    hypotheses: dict
    verdict: str
    slack: int | float | None
    norm_base: int
    precision: int | None
    hilbert: bool = False
    notes: tuple = dc_field(default_factory=tuple)

    def to_json(self) -> dict:
        """Valuations as integers ("inf" for zero), norms as {base, exponent}."""

        def norm(v):
            out = _norm(v)
            out["base"] = self.norm_base
            return out

        return {
            "D_m": self.D_m,
            "d": self.d,
            "hilbert": self.hilbert,
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "lhs": {"valuation": format_valuation(self.lhs), "exact": self.lhs_exact, "norm": norm(self.lhs)},
            "lhs_diag": {
                "valuation": format_valuation(self.lhs_diag),
                "exact": self.lhs_diag_exact,
                "norm": norm(self.lhs_diag),
            },
            "lhs_sup": {
                "valuation": format_valuation(self.lhs_sup),
                "exact": self.lhs_sup_exact,
                "norm": norm(self.lhs_sup),
            },
            "m": self.m,
            "notes": list(self.notes),
            "path": self.path,
            "precision": self.precision,
            "rhs": {"valuation": format_valuation(self.rhs), "exact": self.rhs_exact, "norm": norm(self.rhs)},
            "slack": None if self.slack is None else format_valuation(self.slack),
            "trace_valuation": format_valuation(self.trace_valuation),
            "verdict": self.verdict,
        }


def _valuation_of_integer(field, k: int):
    if isinstance(field, LaurentField):
        return 0
    return rational_valuation(k, field.norm_base)


def _weights_bounded(system: SystemPair) -> bool:
    """Every weight has norm at most one in the backend."""
    if isinstance(system.field, LaurentField):
        return True
    p = system.field.norm_base
    return all(rational_valuation(w, p) >= 0 for w in system.index.weights)


def _hypotheses(system: SystemPair, m: int, cap: int):
    """Return (path, hypothesis map, notes) for order m."""
    fu = isinstance(system.field, LaurentField)
    hyp = {
        "double_integral_finite": "yes",
        "fu_backend": "yes" if fu else "no",
        "weights_bounded": "yes" if _weights_bounded(system) else "no",
    }
    notes = []
    if sym_dim(system.d, m) > cap:
        hyp["tight"] = "absent"
        hyp["diagonalizable"] = "undetermined"
        notes.append(f"Sym^{m} has dimension {sym_dim(system.d, m)} above the cap {cap}; not checked")
        return None, hyp, notes
    cert = tightness_check(system, m, cap)
    if cert.valid:
        hyp["tight"] = {"b": cert.b.to_json(), "residual_valuation": "inf"}
        hyp["diagonalizable"] = "yes"
    else:
        hyp["tight"] = "absent"
        hyp["diagonalizable"] = probe_diagonalizable(frame_operator(system, m, cap)).status
    path = None
    if fu and hyp["diagonalizable"] == "yes":
        path = "fu-field"
    elif not fu and cert.valid:
        path = "tight-padic"
    if path is not None and hyp["weights_bounded"] == "no":
        notes.append("some weight has norm above one; the off-diagonal estimate is not available")
        path = None
    return path, hyp, notes


def _evaluate(system: SystemPair, m: int, cap: int, hilbert: bool) -> WelchReport:
    if m < 1:
        raise ValueError("order m must be at least 1")
    I = integrals(system, m)
    dv, dexact = I.diag_sq.valuation_bound()
    sv, sexact = I.sup_offdiag, I.sup_exact
    # the lhs valuation is the min; it is exact when an exact term attains it
    lv = min(dv, sv)
    lexact = (dexact and dv == lv) or (sexact and sv == lv)
    tv, texact = I.trace.valuation_bound()
    D = sym_dim(system.d, m)
    rv = 2 * tv - _valuation_of_integer(system.field, D) if tv != INF else INF
    rexact = texact

    path, hyp, notes = _hypotheses(system, m, cap)
    if lexact and lv <= rv:
        relation = HOLDS
    elif rexact and lv > rv:
        relation = FAILS
    else:
        relation = None
    if path is None:
        verdict = UNVERIFIED
    elif relation is None:
        raise PrecisionError("both sides agree only up to working precision; raise the precision")
    else:
        verdict = relation
    slack = rv - lv if (lexact and rexact and lv != INF) else None
    prec = getattr(system.field, "precision", None)
    return WelchReport(
        m=m, path=path, d=system.d, D_m=D,
        lhs_diag=dv, lhs_diag_exact=dexact, lhs_sup=sv, lhs_sup_exact=sexact,
        lhs=lv, lhs_exact=lexact, rhs=rv, rhs_exact=rexact, trace_valuation=tv,
        hypotheses=hyp, verdict=verdict, slack=slack, norm_base=system.field.norm_base,
        precision=prec, hilbert=hilbert, notes=tuple(notes),
    )


def verify_first_order(system: SystemPair, cap: int = SYM_DIM_CAP) -> WelchReport:
    return _evaluate(system, 1, cap, False)


def verify_higher_order(system: SystemPair, m: int, cap: int = SYM_DIM_CAP) -> WelchReport:
    """Order-m bound with denominator ``binomial(d + m - 1, m)``.

    The hypothesis is checked on Sym^m itself; beyond the cap the verdict is
    reported as unverified.
    """
    return _evaluate(system, m, cap, False)


def hilbert_system(system: SystemPair, form: BilinearForm | None = None) -> SystemPair:
    """Replace every f_g by the functional ``<., tau_g>`` of the form."""
    form = form if form is not None else system.form
    if form is None:
        raise ValueError("a bilinear form is required")
    fs = [functional_from_form(form, t) for t in system.tau]
    return SystemPair(system.index, system.tau, fs, form)


def verify_hilbert(system: SystemPair, m: int = 1, form: BilinearForm | None = None,
                   cap: int = SYM_DIM_CAP) -> WelchReport:
    """Pairings become ``<tau_g, tau_h>**2``; the order-m sup uses exponent 2m."""
    return _evaluate(hilbert_system(system, form), m, cap, True)


# ---------------------------------------------------------------- predicate

NORMALIZATION = "normalization"
HYPOTHESIS = "hypothesis"
UNIT_NORM = "unit-norm"
FLATNESS = "flatness"


@dataclass(frozen=True)
class PredicateResult:
    satisfied: bool
    violated: tuple
    detail: dict

    def to_json(self) -> dict:
        return {"detail": self.detail, "satisfied": self.satisfied, "violated": list(self.violated)}


def flatness_target(system: SystemPair):
    """Valuation of ``|mu(G)|**2 / |d|``."""
    fld = system.field
    mu = fld.from_rational(system.index.total_mass).valuation
    return 2 * mu - _valuation_of_integer(fld, system.d)


def _hypothesis_ok(system: SystemPair) -> bool:
    if isinstance(system.field, LaurentField):
        S = frame_operator(system, 1)
        return tightness_check(system).valid or probe_diagonalizable(S).status == "yes"
    return tightness_check(system).valid


def conjecture_predicate(system: SystemPair, require_tau_norm: bool = True,
                         require_f_norm: bool = True) -> PredicateResult:
    """Check the Zauner-type conditions in order and report the first failure.

    Order: normalization, the frame-operator hypothesis (scalar over Q_p,
    diagonalizable over the Laurent field), unit max-norms, then flatness:
    for every pair g != h the norms of the diagonal mass, of
    ``f_g(tau_h) f_h(tau_g)`` and of ``|mu(G)|**2/|d|`` agree.
    """
    for g, (t, fn) in enumerate(zip(system.tau, system.f)):
        if not (pairing(fn, t) - 1).is_zero():
            return PredicateResult(False, (NORMALIZATION,), {"point": g})
    if not _hypothesis_ok(system):
        return PredicateResult(False, (HYPOTHESIS,), {})
    bad = []
    for g, (t, fn) in enumerate(zip(system.tau, system.f)):
        if (require_tau_norm and t.norm_valuation != 0) or (require_f_norm and fn.norm_valuation != 0):
            bad.append(g)
    if bad:
        return PredicateResult(False, (UNIT_NORM,), {"points": bad})
    gaps = flatness_gaps(system)
    if gaps["violations"]:
        return PredicateResult(False, (FLATNESS,), {"gap": format_valuation(gaps["gap"])})
    return PredicateResult(True, (), {})


def flatness_gaps(system: SystemPair) -> dict:
    """How far each flatness quantity sits from the target valuation.

    ``gap`` is the largest absolute valuation difference (``inf`` when a
    pairing product vanishes).
    """
    fld = system.field
    target = flatness_target(system)
    diag_v = fld.from_rational(system.index.diagonal_mass).valuation
    P = system.pairing_matrix()
    worst = abs(diag_v - target)
    violations = 1 if diag_v != target else 0
    for g in range(system.n):
        for h in range(g + 1, system.n):
            q = P[g][h] * P[h][g]
            v, exact = q.valuation_bound()
            if not exact:
                v = INF
            if v != target:
                violations += 1
                worst = max(worst, abs(v - target))
    return {"target": target, "diagonal": diag_v, "gap": worst, "violations": violations}


def condition_slack(system: SystemPair, require_tau_norm: bool = True,
                    require_f_norm: bool = True) -> dict:
    """Per-condition gaps; zero means the condition holds.

    Unit-norm and flatness gaps are valuation distances; the normalization
    gap counts unnormalized points and the hypothesis gap is 0 or 1.
    """
    norm_gap = sum(1 for t, fn in zip(system.tau, system.f) if not (pairing(fn, t) - 1).is_zero())
    unit_gap = 0
    for t, fn in zip(system.tau, system.f):
        vals = []
        if require_tau_norm:
            vals.append(t.norm_valuation)
        if require_f_norm:
            vals.append(fn.norm_valuation)
        for v in vals:
            unit_gap = max(unit_gap, abs(v))
    return {
        NORMALIZATION: norm_gap,
        UNIT_NORM: unit_gap,
        FLATNESS: flatness_gaps(system)["gap"],
        HYPOTHESIS: 0 if _hypothesis_ok(system) else 1,
    }


__all__ = [
    "FAILS", "HOLDS", "UNVERIFIED", "WelchReport", "PredicateResult",
    "verify_first_order", "verify_higher_order", "verify_hilbert", "hilbert_system",
    "conjecture_predicate", "condition_slack", "flatness_gaps", "flatness_target",
]
