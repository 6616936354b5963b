"""Acceptance checks.  Each test prints one ``[criterion N] PASS|FAIL`` line.

Tolerances are exact (zero mismatches) except the runtime budgets, which
are pinned below.
"""

import statistics
import time
from math import gcd

import numpy as np
import pytest

from planarfield.extfield import ExtFieldCtx
from planarfield.linearized import (DOPoly, apply_linear_equivalence, derivative_matrix,
                                    matrix_of_linearized, random_permutation)
from planarfield.matrix import FpMatrix, mat_inverse
from planarfield.oracle import brute_force_field_check
from planarfield.quot import (QuotSet, decide_x2, quot_set, quot_slice, quot_upper_bound,
                              rcf_multiset, twisted_quot_cardinality)
from planarfield.recognition import finite_field_decide
from planarfield.twisted import verify_conjugation_identities, verify_twisted_structure

BUDGET_1 = 60.0
BUDGET_2 = 30.0
BUDGET_3 = 300.0
BUDGET_4 = 120.0
BUDGET_7_EACH = 10.0
GROWTH_7 = 200.0
MIN_INPUTS_1 = 500
TRANSFORMS_4 = 50
TRANSFORMS_5 = 50
SLICE_TRANSFORMS_5 = 10
PAIRS_6 = 100


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


def _invertible(rng, n, p):
    while True:
        M = FpMatrix(rng.integers(0, p, size=(n, n)), p)
        if M.is_invertible():
            return M


def _field_inputs(rng, p, n):
    """Yield (label, matrix list) covering the four input families."""
    ctx = ExtFieldCtx(p, n)
    # random subsets of GL(n, p)
    for _ in range(12):
        yield "gl", [_invertible(rng, n, p) for _ in range(int(rng.integers(1, 4)))]
    # multiplication matrices
    for _ in range(12):
        yield "t_beta", [ctx.mult_matrix(ctx.random(rng, nonzero=True))
                         for _ in range(int(rng.integers(1, 4)))]
    # conjugates of field algebras, including subfields
    for _ in range(12):
        P = _invertible(rng, n, p)
        Pi = mat_inverse(P)
        S = []
        for _ in range(int(rng.integers(1, 4))):
            b = ctx.random(rng, nonzero=True)
            d = int(rng.choice([d for d in range(1, n + 1) if n % d == 0]))
            b = b ** ((ctx.order - 1) // (p ** d - 1))
            S.append(P @ ctx.mult_matrix(b) @ Pi)
        yield "conjugate", S
    # adversarial non-fields and near-fields
    for _ in range(9):
        kind = int(rng.integers(0, 5))
        if kind == 0:  # diagonal with distinct entries
            vals = [int(v) for v in rng.integers(1, p, size=n)]
            S = [FpMatrix.diag(vals, p)]
        elif kind == 1:  # unipotent Jordan block
            J = np.eye(n, dtype=np.int64)
            if n > 1:
                J[0, n - 1] = 1
            S = [FpMatrix(J, p)]
        elif kind == 2:  # field element plus a non-commuting conjugate
            b = ctx.mult_matrix(ctx.random(rng, nonzero=True))
            P = _invertible(rng, n, p)
            S = [b, P @ b @ mat_inverse(P)]
        elif kind == 3:  # block sum of two smaller fields
            h = n // 2 or 1
            A = np.eye(n, dtype=np.int64)
            if n >= 2:
                k1, k2 = ExtFieldCtx(p, h), ExtFieldCtx(p, n - h)
                c1 = k1.mult_matrix(k1.random(rng, nonzero=True)).a
                c2 = k2.mult_matrix(k2.random(rng, nonzero=True)).a
                A[:h, :h] = c1
                A[h:, h:] = c2
            S = [FpMatrix(A, p)]
        else:  # commuting pair, one of them scalar times a unipotent
            b = ctx.mult_matrix(ctx.random(rng, nonzero=True))
            S = [b, b @ b]
        yield "adversarial", S


def test_criterion_1_field_recognition_oracle(report):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    total = agree = fields = 0
    mismatches = []
    for p in (2, 3, 5):
        for n in (1, 2, 3, 4):
            for label, S in _field_inputs(rng, p, n):
                fast = finite_field_decide(S)
                slow = brute_force_field_check(S)
                total += 1
                fields += fast.is_field
                if (fast.is_field, fast.degree) == (slow.is_field, slow.degree):
                    agree += 1
                else:
                    mismatches.append((p, n, label))
    elapsed = time.perf_counter() - start
    ok = total >= MIN_INPUTS_1 and agree == total and elapsed < BUDGET_1
    report(1, ok, f"{agree}/{total} agree ({fields} fields), {elapsed:.1f}s "
                  f"(budget {BUDGET_1:.0f}s) mismatches={mismatches[:5]}")


def test_criterion_2_x_squared_quot_size(report):
    cases = [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2)]
    start = time.perf_counter()
    bad = []
    for p, n in cases:
        size = len(quot_set(DOPoly.x_squared(ExtFieldCtx(p, n))))
        if size != p ** n:
            bad.append((p, n, size))
    elapsed = time.perf_counter() - start
    report(2, not bad and elapsed < BUDGET_2,
           f"{len(cases) - len(bad)}/{len(cases)} sizes equal p^n, {elapsed:.1f}s "
           f"(budget {BUDGET_2:.0f}s) bad={bad}")


def test_criterion_3_twisted_cardinality(report):
    cases = [(p, n, k) for p in (3, 5) for n in range(1, 6) for k in range(1, n)
             if (n // gcd(k, n)) % 2 == 1]
    start = time.perf_counter()
    bad = []
    extremal = None
    for p, n, k in cases:
        size = len(quot_set(DOPoly.twisted(ExtFieldCtx(p, n), k)))
        if size != twisted_quot_cardinality(p, n, k):
            bad.append((p, n, k, size))
        if (p, n, k) == (3, 5, 1):
            extremal = size
    elapsed = time.perf_counter() - start
    ok = not bad and extremal == 29043 == quot_upper_bound(3, 5) and elapsed < BUDGET_3
    report(3, ok, f"{len(cases) - len(bad)}/{len(cases)} planar (p,n,k) match the formula, "
                  f"|Quot(x^4) over F_243| = {extremal}, {elapsed:.1f}s "
                  f"(budget {BUDGET_3:.0f}s) bad={bad}")


def test_criterion_4_x2_decision(report):
    rng = np.random.default_rng(4)
    start = time.perf_counter()
    total = correct = 0
    wrong = []
    for n in (3, 5):
        ctx = ExtFieldCtx(3, n)
        twists = [k for k in range(1, n) if (n // gcd(k, n)) % 2 == 1]
        cases = [(DOPoly.x_squared(ctx), True)]
        cases += [(DOPoly.twisted(ctx, k), False) for k in twists]
        for i in range(TRANSFORMS_4):
            L, L2 = random_permutation(ctx, rng), random_permutation(ctx, rng)
            cases.append((apply_linear_equivalence(DOPoly.x_squared(ctx), L, L2), True))
            L, L2 = random_permutation(ctx, rng), random_permutation(ctx, rng)
            base = DOPoly.twisted(ctx, twists[i % len(twists)])
            cases.append((apply_linear_equivalence(base, L, L2), False))
        for g, expected in cases:
            total += 1
            verdict = decide_x2(g).verdict
            if verdict == expected:
                correct += 1
            else:
                wrong.append((n, g))
    elapsed = time.perf_counter() - start
    report(4, correct == total and elapsed < BUDGET_4,
           f"{correct}/{total} correct, {elapsed:.1f}s (budget {BUDGET_4:.0f}s)")


def test_criterion_5_invariance(report):
    rng = np.random.default_rng(5)
    ctx = ExtFieldCtx(3, 3)
    bases = {"x^2": DOPoly.x_squared(ctx), "x^4": DOPoly.twisted(ctx, 1),
             "x^10": DOPoly.twisted(ctx, 2)}
    mismatches = 0
    compared = 0
    for name, g in bases.items():
        ref = rcf_multiset(quot_set(g)).digest
        for _ in range(TRANSFORMS_5):
            L, L2 = random_permutation(ctx, rng), random_permutation(ctx, rng)
            g2 = apply_linear_equivalence(g, L, L2)
            compared += 1
            mismatches += rcf_multiset(quot_set(g2)).digest != ref
    slice_failures = 0
    slices = 0
    for i in range(SLICE_TRANSFORMS_5):
        g = list(bases.values())[i % 3]
        L, L2 = random_permutation(ctx, rng), random_permutation(ctx, rng)
        g2 = apply_linear_equivalence(g, L, L2)
        A = mat_inverse(matrix_of_linearized(L2))
        Ai = mat_inverse(A)
        for b in ctx.elements():
            Y2 = derivative_matrix(g2, b)
            if not Y2.is_invertible():
                continue
            left = quot_slice(g2, Y2)
            base = quot_slice(g, derivative_matrix(g, L(b)))
            right = QuotSet.from_arrays([(Ai @ M @ A).a for M in base], 3, 3)
            slices += 1
            slice_failures += left != right
    ok = mismatches == 0 and slice_failures == 0 and slices > 0
    report(5, ok, f"{compared - mismatches}/{compared} digests equal, "
                  f"{slices - slice_failures}/{slices} slice conjugations over "
                  f"{SLICE_TRANSFORMS_5} transforms")


def test_criterion_6_twisted_identities(report):
    rng = np.random.default_rng(6)
    failures = []
    checked = 0
    for n in (3, 5):
        ctx = ExtFieldCtx(3, n)
        for k in (1, 2):
            g = DOPoly.twisted(ctx, k)
            q = quot_set(g)
            for _ in range(PAIRS_6):
                a, b = ctx.random(rng, nonzero=True), ctx.random(rng)
                r = verify_conjugation_identities(ctx, k, a, b, rng=rng)
                s = verify_twisted_structure(g, a, b, quot=q)
                checked += 1
                if not (r.ok and s.ok):
                    failures.append((n, k, a.tolist(), b.tolist(), r, s))
    report(6, not failures and checked >= PAIRS_6,
           f"{checked - len(failures)}/{checked} (alpha, beta) pairs pass all identities "
           f"and structure checks")


def _time_decide(S, repeats=5):
    samples = []
    for _ in range(repeats):
        t = time.perf_counter()
        d = finite_field_decide(S)
        samples.append(time.perf_counter() - t)
    return statistics.median(samples), d


def test_criterion_7_complexity(report):
    rng = np.random.default_rng(7)
    times = {}
    degrees = {}
    cold = None
    for n in (8, 16, 32):
        ctx = ExtFieldCtx(3, n)
        S = [ctx.mult_matrix(ctx.random(rng, nonzero=True)) for _ in range(2)]
        if cold is None:
            t = time.perf_counter()
            finite_field_decide(S)
            cold = time.perf_counter() - t
        times[n], d = _time_decide(S)
        degrees[n] = d.degree if d.is_field else None
    ratios = [times[16] / times[8], times[32] / times[16]]
    ok = (all(t < BUDGET_7_EACH for t in times.values()) and cold < BUDGET_7_EACH
          and all(r <= GROWTH_7 for r in ratios) and all(degrees.values()))
    detail = ", ".join(f"n={n}: {times[n] * 1e3:.2f}ms" for n in times)
    report(7, ok, f"{detail}; ratios {ratios[0]:.1f}, {ratios[1]:.1f} "
                  f"(bound {GROWTH_7:.0f}); first call {cold:.2f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
