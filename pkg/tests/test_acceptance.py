"""Acceptance criteria 1-8, one test each.

Each test prints a single PASS/FAIL line (also repeated in the pytest
terminal summary).  Runtime limits are part of the criteria.
"""
import json
import math
import random
import time
from contextlib import contextmanager

import numpy as np

from make_goldens import GOLDEN, render, run_case
from oracles import agrees, random_rational
from nawelch.classical import ClassicalFrame, gerzon, welch_max_bound, welch_sum_bound
from nawelch.frames import MeasuredIndex, design_size, frame_operator, orthonormal_system, random_system
from nawelch.linalg import pairing, sym_dim, trace
from nawelch.scalars import LaurentField, PadicField, fu_search
from nawelch.search import SearchSpace, entry_set, search
from nawelch.welch import FAILS, HOLDS, conjecture_predicate, verify_first_order, verify_higher_order

PRIMES = (2, 3, 5, 7)
RESULTS = []


@contextmanager
def criterion(k: int, title: str, limit: float | None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = limit is None or elapsed < limit
        assert ok, f"took {elapsed:.1f}s, limit {limit}s"
    finally:
        elapsed = time.perf_counter() - start
        budget = "" if limit is None else f" / {limit:g}s"
        line = f"criterion {k} [{'PASS' if ok else 'FAIL'}] {title} ({elapsed:.2f}s{budget})"
        RESULTS.append(line)
        print(line)


def _all_backends():
    return [PadicField(p) for p in PRIMES] + [LaurentField()]


def test_criterion_1_arithmetic_oracle():
    with criterion(1, "truncated arithmetic agrees with exact rationals", 5):
        for p in PRIMES:
            rng = random.Random(p)
            F = PadicField(p)
            for _ in range(10**4):
                x, y = random_rational(rng, p), random_rational(rng, p)
                a, b = F.from_rational(x), F.from_rational(y)
                assert agrees(a + b, x + y, p)
                assert agrees(a * b, x * y, p)
                if y:
                    assert agrees(a / b, x / y, p)


def test_criterion_2_sum_of_squares_dichotomy():
    forced = {2: (1, 1), 3: (1, 1, 1), 5: (1, 2), 7: (1, 2, 3)}
    with criterion(2, "every Q_p has a sum-of-squares witness, Q((t)) has none", 10):
        for p in (2, 3, 5, 7, 11, 13):
            w = fu_search(PadicField(p), p - 1, 4)
            assert w is not None and w.lhs_valuation > w.rhs_valuation
            if p in forced:
                assert tuple(x.to_rational() for x in w.tuple) == forced[p]
        assert fu_search(LaurentField(), 3, 3) is None


def _sym_shortcut(system, m):
    """Sums of w_g f_g(tau_g)^m and of w_g w_h (f_g(tau_h) f_h(tau_g))^m."""
    F = system.field
    w = system.weight_scalars()
    P = system.pairing_matrix()
    one = sum((w[g] * P[g][g] ** m for g in range(system.n)), F.zero())
    two = F.zero()
    for g in range(system.n):
        for h in range(system.n):
            two = two + w[g] * w[h] * (P[g][h] * P[h][g]) ** m
    return one, two


def test_criterion_3_trace_identities():
    with criterion(3, "trace identities on 1000 systems per backend", 30):
        for F in _all_backends():
            for seed in range(1000):
                rng = random.Random(seed)
                d = rng.randint(1, 3)
                n = rng.randint(1, 5)
                cons = rng.choice([(), ("normalized",), ("diagonalizable",)])
                s = random_system(F, d, n, seed, cons, counting=seed % 2 == 0)
                S = frame_operator(s, 1)
                direct = sum(
                    (F.from_rational(wg) * pairing(fg, tg) for wg, tg, fg in zip(s.index.weights, s.tau, s.f)),
                    F.zero(),
                )
                assert trace(S) == direct
                for m in (1, 2):
                    Sm = S if m == 1 else frame_operator(s, m)
                    assert Sm.shape[0] == sym_dim(d, m)
                    one, two = _sym_shortcut(s, m)
                    assert trace(Sm) == one
                    assert trace(Sm @ Sm) == two


def test_criterion_4_soundness_sweeps():
    counts = {HOLDS: 0, FAILS: 0, "other": 0}

    def tally(r):
        counts[r.verdict if r.verdict in counts else "other"] += 1
        return r.verdict

    with criterion(4, "soundness sweeps, zero fails", 120):
        for p in PRIMES:
            F = PadicField(p)
            for seed in range(1000):
                cons = ("tight", "normalized") if seed % 3 == 0 else ("tight",)
                s = random_system(F, 2, design_size(2), seed, cons, order=2, counting=seed % 2 == 0)
                for m in (1, 2):
                    assert tally(verify_higher_order(s, m)) == HOLDS, (p, seed, m)
                d = 1 + seed % 3
                b = random_system(F, d, d * (1 + seed % 2), seed, ("tight",), counting=seed % 4 < 2)
                assert tally(verify_first_order(b)) == HOLDS, (p, seed)
        L = LaurentField()
        for seed in range(1000):
            rng = random.Random(seed)
            s = random_system(L, rng.randint(1, 3), rng.randint(1, 5), seed, ("diagonalizable",),
                              counting=seed % 2 == 0)
            for m in (1, 2):
                assert tally(verify_higher_order(s, m)) == HOLDS, ("laurent", seed, m)
        assert counts[FAILS] == 0 and counts["other"] == 0
    print(f"criterion 4 verdicts: {counts}")


def test_criterion_5_equality_case():
    with criterion(5, "orthonormal basis gives lhs = rhs = 1", 1):
        for p, d in [(2, 1), (2, 3), (3, 2), (3, 4), (5, 2), (5, 3), (7, 6)]:
            r = verify_first_order(orthonormal_system(PadicField(p), d))
            assert (r.lhs, r.rhs, r.lhs_exact, r.rhs_exact) == (0, 0, True, True)
            assert r.verdict == HOLDS


def _random_frame(rng, n, d, field):
    v = rng.standard_normal((n, d))
    if field == "C":
        v = v + 1j * rng.standard_normal((n, d))
    return ClassicalFrame(v / np.linalg.norm(v, axis=1, keepdims=True), field)


def test_criterion_6_classical_reference():
    with criterion(6, "classical bounds: Mercedes-Benz equality, random frames, Gerzon", 10):
        a = [0, 2 * math.pi / 3, 4 * math.pi / 3]
        mb = ClassicalFrame([[math.cos(t), math.sin(t)] for t in a])
        s, mx = welch_sum_bound(mb, 1), welch_max_bound(mb, 1)
        assert s["rhs"] == 4.5 and abs(s["lhs"] - 4.5) / 4.5 < 1e-9
        assert abs(mx["coherence_pow"] - 0.25) / 0.25 < 1e-9 and abs(mx["rhs"] - 0.25) < 1e-15
        rng = np.random.default_rng(2024)
        for d in (2, 3, 4):
            for n in range(d + 1, 9):
                for i in range(1000):
                    fr = _random_frame(rng, n, d, "RC"[i % 2])
                    for m in (1, 2):
                        assert welch_sum_bound(fr, m)["holds"] and welch_max_bound(fr, m)["holds"]
        assert [gerzon(d, "C") for d in (1, 2, 3, 4)] == [1, 4, 9, 16]
        assert [gerzon(d, "R") for d in (1, 2, 3, 4)] == [1, 3, 6, 10]


def test_criterion_7_search():
    with criterion(7, "search witness, exhaustive/randomized agreement, re-verification", 30):
        F3 = PadicField(3)
        d1 = SearchSpace(F3, 1, MeasuredIndex.counting(2, [2]), entry_set(F3, 2, (0, 0)))
        out = search(d1)
        assert out.status == "witness" and out.witness_position == 40
        assert [t.entries[0] for t in out.witness.tau] == [1, 1]
        assert conjecture_predicate(out.witness).satisfied
        F2 = PadicField(2, 4)
        micro = SearchSpace(F2, 2, MeasuredIndex.counting(2, [2]), [F2(0), F2(1)])
        for sp in (d1, micro):
            ex = search(sp)
            rnd = search(SearchSpace(sp.field, sp.d, sp.index, sp.entries, mode="randomized", seed=5,
                                     budget=sp.size))
            assert (ex.status == "witness") == (rnd.status == "witness")
            assert ex.status in ("witness", "exhausted")
            for o in (ex, rnd):
                if o.witness is not None:
                    assert conjecture_predicate(o.witness).satisfied
        assert search(micro).status == "exhausted"


def test_criterion_8_cli_goldens():
    cases = json.loads((GOLDEN / "cases.json").read_text())
    with criterion(8, f"{len(cases)} CLI golden files byte-identical", None):
        for name, case in cases.items():
            code, out, err = run_case(case["argv"])
            assert code == case["exit"], name
            assert render(code, out, err) == (GOLDEN / f"{name}.out").read_text(), name
