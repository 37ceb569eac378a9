"""Witness search for the Zauner-type conditions over small candidate spaces.

A candidate assigns to every point g a vector tau_g and a functional f_g
whose entries come from a finite entry set.  Candidates are numbered in
lexicographic order of the index tuple (tau_1, f_1, ..., tau_n, f_n), each
vector read as a base-|E| number with its first coordinate most
significant.  The exhaustive walk visits them in that order, pruning whole
subtrees as soon as a point fails normalization or the unit-norm test, so
every counter is an exact count of candidates.  The walk can be stopped and
resumed at any candidate position.

Witnesses are witnesses at working precision only: candidates for, not
proofs of, exact witnesses.
"""
from __future__ import annotations

import bisect
import random
from dataclasses import dataclass

from .frames import MeasuredIndex, SystemPair, frame_operator, system_to_json, tightness_check
from .linalg import BilinearForm, UFunctional, UVector, functional_from_form, pairing, probe_diagonalizable
from .scalars import (
    INF,
    LaurentField,
    PrecisionError,
    field_from_config,
    format_valuation,
    parse_rational,
)
from .welch import condition_slack, conjecture_predicate

DEFAULT_CEILING = 10**6
COUNTERS = (
    "candidates_checked",
    "pruned_normalization",
    "pruned_unit_norm",
    "skipped_symmetry",
    "failed_flatness",
    "failed_hypothesis",
    "skipped_undetermined",
)


class CeilingExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpace:
    field: object
    d: int
    index: MeasuredIndex
    entries: tuple
    mode: str = "exhaustive"
    seed: int = 0
    budget: int = 100
    symmetry: bool = False
    ceiling: int = DEFAULT_CEILING
    hilbert: bool = False
    require_tau_norm: bool = True
    require_f_norm: bool = True
    keep_nearest: int = 5

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("the candidate entry set is empty")
        if self.mode not in ("exhaustive", "randomized"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.d < 1:
            raise ValueError("d must be positive")

    @property
    def n(self) -> int:
        return len(self.index)

    @property
    def vector_count(self) -> int:
        return len(self.entries) ** self.d

    @property
    def pair_count(self) -> int:
        """Choices for one point: (tau, f), or tau alone in Hilbert mode."""
        v = self.vector_count
        return v if self.hilbert else v * v

    @property
    def size(self) -> int:
        return self.pair_count**self.n if self.n else 0


def entry_set(field, digit_bound: int, valuation_window: tuple[int, int]) -> list:
    """0, then ``c * pi**v`` for v in the window and 1 <= |c| <= digit_bound.

    p-adic coefficients are positive and prime to p; Laurent coefficients
    take both signs.  Ordered by (v, sign, |c|).
    """
    lo, hi = valuation_window
    out = [field.zero()]
    pi = field.uniformizer
    for v in range(lo, hi + 1):
        if isinstance(field, LaurentField):
            coeffs = list(range(1, digit_bound + 1)) + [-c for c in range(1, digit_bound + 1)]
        else:
            coeffs = [c for c in range(1, digit_bound + 1) if c % field.norm_base]
        for c in coeffs:
            out.append(field.from_rational(c) * pi**v)
    return out


def space_from_json(obj: dict, precision: int | None = None) -> SearchSpace:
    fld = field_from_config(obj["backend"], precision)
    d = int(obj["d"])
    measure = obj.get("measure", [])
    labels = [str(m["label"]) for m in measure]
    weights = [parse_rational(m["weight"]) for m in measure]
    index = MeasuredIndex(labels, weights, obj.get("group"))
    ent = obj.get("entries")
    if isinstance(ent, dict):
        entries = entry_set(fld, int(ent["digit_bound"]), tuple(ent["valuation_window"]))
    elif isinstance(ent, list):
        entries = [fld.from_json(x) for x in ent]
    else:
        raise ValueError("entries: expected a list of scalars or {digit_bound, valuation_window}")
    norms = obj.get("norms", {})
    return SearchSpace(
        field=fld, d=d, index=index, entries=tuple(entries),
        mode=obj.get("mode", "exhaustive"), seed=int(obj.get("seed", 0)),
        budget=int(obj.get("budget", 100)), symmetry=bool(obj.get("symmetry", False)),
        ceiling=int(obj.get("ceiling", DEFAULT_CEILING)), hilbert=bool(obj.get("hilbert", False)),
        require_tau_norm=bool(norms.get("tau", True)), require_f_norm=bool(norms.get("f", True)),
        keep_nearest=int(obj.get("keep_nearest", 5)),
    )


@dataclass
class SearchOutcome:
    status: str
    counters: dict
    space: SearchSpace
    witness: SystemPair | None = None
    witness_position: int | None = None
    nearest: list | None = None
    position: int = 0
    checkpoint: dict | None = None

    def to_json(self) -> dict:
        fld = self.space.field
        return {
            "backend": fld.config(),
            "candidates_total": self.space.size,
            "counters": dict(self.counters),
            "mode": self.space.mode,
            "nearest": [
                {"candidate": pos, "slack": {k: format_valuation(v) for k, v in sorted(sl.items())}}
                for pos, _, sl in (self.nearest or [])
            ],
            "note": f"witness at precision {getattr(fld, 'precision', None)} is a candidate, not a proof",
            "status": self.status,
            "symmetry": self.space.symmetry,
            "witness": None if self.witness is None else system_to_json(self.witness),
            "witness_candidate": self.witness_position,
        }


class _Engine:
    """Shared state for one search: caches and candidate decoding."""

    def __init__(self, space: SearchSpace):
        self.space = space
        fld = space.field
        E, d = space.entries, space.d
        self.k = len(E)
        self.vcount = space.vector_count
        self.vectors = [self._vector(i) for i in range(self.vcount)]
        self.form = BilinearForm.standard(fld, d) if space.hilbert else None
        if space.hilbert:
            self.functionals = [functional_from_form(self.form, v) for v in self.vectors]
        else:
            self.functionals = [UFunctional(v.entries) for v in self.vectors]
        self.fcount = 1 if space.hilbert else self.vcount
        self._pv = {}
        self.status = [self._pair_status(c) for c in range(space.pair_count)]
        n = space.n
        self.weights_uniform = len(set(space.index.weights)) <= 1
        self.translations = space.index.translations() if (space.symmetry and self.weights_uniform) else None
        self.fu = isinstance(fld, LaurentField)
        if n:
            self.target = flatness_target_for(space)
            self.diag_ok = fld.from_rational(space.index.diagonal_mass).valuation == self.target

    def _vector(self, i: int) -> UVector:
        digits = []
        for _ in range(self.space.d):
            digits.append(i % self.k)
            i //= self.k
        return UVector(tuple(self.space.entries[j] for j in reversed(digits)))

    def split(self, c: int) -> tuple[int, int]:
        """Pair index -> (tau index, f index); f index is tau index in Hilbert mode."""
        if self.space.hilbert:
            return c, c
        return divmod(c, self.fcount)

    def functional(self, fi: int) -> UFunctional:
        return self.functionals[fi]

    def pair_valuation(self, fi: int, ti: int):
        key = (fi, ti)
        if key not in self._pv:
            v, exact = pairing(self.functionals[fi], self.vectors[ti]).valuation_bound()
            self._pv[key] = v if exact else None
        return self._pv[key]

    def _pair_status(self, c: int) -> int:
        """0 passes, 1 fails normalization, 2 fails unit norm."""
        ti, fi = self.split(c)
        t, f = self.vectors[ti], self.functionals[fi]
        if not (pairing(f, t) - 1).is_zero():
            return 1
        try:
            if self.space.require_tau_norm and t.norm_valuation != 0:
                return 2
            if self.space.require_f_norm and f.norm_valuation != 0:
                return 2
        except PrecisionError:
            return 2
        return 0

    def canonical(self, pairs: tuple) -> bool:
        if self.translations is None:
            return True
        return all(pairs <= tuple(pairs[i] for i in perm) for perm in self.translations)

    def flatness_gap(self, pairs: tuple):
        """Largest valuation distance from the target; 0 means flat."""
        worst = 0 if self.diag_ok else 1
        split = [self.split(c) for c in pairs]
        tgt = self.target
        for g in range(len(pairs)):
            tg, fg = split[g]
            for h in range(g + 1, len(pairs)):
                th, fh = split[h]
                a = self.pair_valuation(fg, th)
                b = self.pair_valuation(fh, tg)
                if a is None or b is None or a == INF or b == INF:
                    return INF
                worst = max(worst, abs(a + b - tgt))
        return worst

    def system(self, pairs: tuple) -> SystemPair:
        split = [self.split(c) for c in pairs]
        return SystemPair(
            self.space.index,
            [self.vectors[t] for t, _ in split],
            [self.functionals[f] for _, f in split],
            self.form,
        )

    def hypothesis(self, pairs: tuple) -> str:
        """'ok', 'fail' or 'undetermined'."""
        sysm = self.system(pairs)
        if tightness_check(sysm).valid:
            return "ok"
        if not self.fu:
            return "fail"
        return "ok" if probe_diagonalizable(frame_operator(sysm)).status == "yes" else "undetermined"

    def decode(self, pos: int) -> tuple:
        out = []
        for _ in range(self.space.n):
            out.append(pos % self.space.pair_count)
            pos //= self.space.pair_count
        return tuple(reversed(out))


def flatness_target_for(space: SearchSpace):
    fld = space.field
    mu = fld.from_rational(space.index.total_mass).valuation
    dv = 0 if isinstance(fld, LaurentField) else fld.from_rational(space.d).valuation
    return 2 * mu - dv


class _Nearest:
    """The best leaf candidates by (flatness gap, position)."""

    def __init__(self, keep: int, items=()):
        self.keep = keep
        self.items = sorted(items)

    def offer(self, gap, pos: int):
        if self.keep <= 0:
            return
        key = (gap, pos)
        if len(self.items) < self.keep or key < self.items[-1]:
            bisect.insort(self.items, key)
            del self.items[self.keep:]


class _Stop(Exception):
    pass


def search(space: SearchSpace, checkpoint: dict | None = None, stop_after: int | None = None) -> SearchOutcome:
    """Run (or resume) a search.

    ``stop_after`` bounds the number of evaluation steps in this call; when
    it runs out the outcome has status ``budget-spent`` and ``position``
    is where a resumed run continues.
    """
    counters = dict.fromkeys(COUNTERS, 0)
    if space.n == 0:
        return SearchOutcome("exhausted", counters, space, nearest=[])
    if space.mode == "exhaustive" and space.size > space.ceiling:
        raise CeilingExceeded(f"{space.size} candidates exceed the ceiling {space.ceiling}")
    eng = _Engine(space)
    nearest = _Nearest(space.keep_nearest)
    start = 0
    if checkpoint is not None:
        counters.update(checkpoint["counters"])
        nearest = _Nearest(space.keep_nearest, [(_parse_gap(g), p) for g, p in checkpoint["nearest"]])
        start = int(checkpoint["position"])
    if space.mode == "exhaustive":
        result = _exhaustive(eng, counters, nearest, start, stop_after)
    else:
        result = _randomized(eng, counters, nearest, start, stop_after)
    status, position, witness_pos = result
    witness = None
    if witness_pos is not None:
        witness = eng.system(eng.decode(witness_pos))
        check = conjecture_predicate(witness, space.require_tau_norm, space.require_f_norm)
        if not check.satisfied:
            raise AssertionError(f"search accepted a candidate the predicate rejects: {check.violated}")
    near = []
    if status != "witness":
        for gap, pos in nearest.items:
            sysm = eng.system(eng.decode(pos))
            near.append((pos, sysm, condition_slack(sysm, space.require_tau_norm, space.require_f_norm)))
    ck = {
        "counters": dict(counters),
        "nearest": [[format_valuation(g), p] for g, p in nearest.items],
        "position": position,
    }
    return SearchOutcome(status, counters, space, witness, witness_pos, near, position, ck)


def _parse_gap(g):
    return INF if g == "inf" else int(g)


def _leaf(eng: _Engine, counters: dict, nearest: _Nearest, pairs: tuple, pos: int) -> bool:
    counters["candidates_checked"] += 1
    if not eng.canonical(pairs):
        counters["skipped_symmetry"] += 1
        return False
    gap = eng.flatness_gap(pairs)
    if gap != 0:
        counters["failed_flatness"] += 1
        nearest.offer(gap, pos)
        return False
    h = eng.hypothesis(pairs)
    if h == "ok":
        return True
    counters["failed_hypothesis" if h == "fail" else "skipped_undetermined"] += 1
    nearest.offer(0, pos)
    return False


def _exhaustive(eng: _Engine, counters: dict, nearest: _Nearest, start: int, stop_after: int | None):
    space = eng.space
    C, n = space.pair_count, space.n
    steps = [0]
    sizes = [C ** (n - g - 1) for g in range(n)]

    def tick(pos_after: int):
        steps[0] += 1
        if stop_after is not None and steps[0] > stop_after:
            raise _Stop(pos_after)

    def visit(g: int, prefix: tuple, base: int):
        size = sizes[g]
        for c in range(C):
            lo = base + c * size
            if lo + size <= start:
                continue
            st = eng.status[c]
            if st:
                tick(lo)
                counters["candidates_checked"] += size
                counters["pruned_normalization" if st == 1 else "pruned_unit_norm"] += size
                continue
            pairs = prefix + (c,)
            if g + 1 < n:
                found = visit(g + 1, pairs, lo)
                if found is not None:
                    return found
            else:
                tick(lo)
                if _leaf(eng, counters, nearest, pairs, lo):
                    return lo
        return None

    try:
        found = visit(0, (), 0)
    except _Stop as stop:
        return "budget-spent", stop.args[0], None
    if found is not None:
        return "witness", found + 1, found
    return "exhausted", space.size, None


def _randomized(eng: _Engine, counters: dict, nearest: _Nearest, start: int, stop_after: int | None):
    space = eng.space
    total = space.size
    rng = random.Random(space.seed)
    order = rng.sample(range(total), min(space.budget, total))
    done = 0
    for i in range(start, len(order)):
        if stop_after is not None and done >= stop_after:
            return "budget-spent", i, None
        done += 1
        pos = order[i]
        pairs = eng.decode(pos)
        bad = next((eng.status[c] for c in pairs if eng.status[c]), 0)
        if bad:
            counters["candidates_checked"] += 1
            counters["pruned_normalization" if bad == 1 else "pruned_unit_norm"] += 1
            continue
        if _leaf(eng, counters, nearest, pairs, pos):
            return "witness", i + 1, pos
    if len(order) < total:
        return "budget-spent", len(order), None
    return "exhausted", len(order), None


def nearest_miss_report(outcome: SearchOutcome) -> list[dict]:
    """One row per (candidate, violated condition), sorted by gap then candidate."""
    rows = []
    for pos, _, slack in outcome.nearest or []:
        for cond, gap in slack.items():
            if gap != 0:
                rows.append({"candidate": pos, "condition": cond, "gap": gap})
    rows.sort(key=lambda r: (r["gap"], r["candidate"], r["condition"]))
    return rows


def slack_rows(system: SystemPair, label=0, require_tau_norm: bool = True, require_f_norm: bool = True) -> list[dict]:
    """Rows for a single candidate, in the same shape as the report."""
    slack = condition_slack(system, require_tau_norm, require_f_norm)
    rows = [{"candidate": label, "condition": c, "gap": g} for c, g in slack.items() if g != 0]
    rows.sort(key=lambda r: (r["gap"], r["condition"]))
    return rows
