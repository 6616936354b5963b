"""Deciding whether F_p[A_1, ..., A_t] is a finite field.

No factorisation of p^n - 1 is needed: generators of the compositum of two
fields are built from products and relative traces, and fieldness is then
certified by irreducibility of one minimal polynomial plus span membership.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import DimensionMismatch, EmptyInput, ModulusMismatch, NotInvertible
from .fp import FpPoly, is_irreducible
from .matrix import (FpMatrix, combine, mat_pow, minimal_polynomial,
                     relative_trace_matrix, span_membership)


def factor_small_integer(m: int) -> list[tuple[int, int]]:
    """Prime factorisation by trial division, primes increasing."""
    if m < 1:
        raise ValueError("expected a positive integer")
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            out.append((q, e))
        q += 1
    if m > 1:
        out.append((m, 1))
    return out


# -- decision outcome -------------------------------------------------------

@dataclass(frozen=True)
class ReducibleMinPoly:
    element: FpMatrix
    min_poly: FpPoly

    kind = "reducible_min_poly"


@dataclass(frozen=True)
class OutsideSpan:
    index: int

    kind = "outside_span"


@dataclass(frozen=True)
class NoGenerator:
    kind = "no_generator"


@dataclass(frozen=True)
class FieldDecision:
    """Outcome of :func:`finite_field_decide`.

    ``is_field`` with ``degree``, ``generator`` and ``min_poly`` set, or not
    a field with a ``witness``.  ``certificates[i]`` are the coordinates of
    the i-th input in the basis ``I, a, ..., a^(d-1)``.
    """

    is_field: bool
    degree: int | None = None
    generator: FpMatrix | None = None
    min_poly: FpPoly | None = None
    witness: ReducibleMinPoly | OutsideSpan | NoGenerator | None = None
    certificates: tuple = field(default=(), compare=False)

    def __bool__(self):
        return self.is_field


def _check_same_shape(mats):
    p, n = mats[0].p, mats[0].n
    for M in mats[1:]:
        if M.p != p:
            raise ModulusMismatch(f"mixed moduli {p} and {M.p}")
        if M.n != n:
            raise DimensionMismatch(f"mixed dimensions {n} and {M.n}")


def _trace_search(x: FpMatrix, deg: int, target: int):
    """First j in 1..deg-1 whose relative trace of x^j has minimal
    polynomial of degree ``target``."""
    power = x
    for j in range(1, deg):
        if j > 1:
            power = power @ x
        c = relative_trace_matrix(power, deg, target)
        if minimal_polynomial(c).degree == target:
            return c
    return None


def compute_generator(a: FpMatrix, b: FpMatrix, *, _degrees=None):
    """Return c with F_p[a, b] = F_p[c] whenever F_p[a, b] is a field.

    If F_p[a, b] is not a field the result is some matrix or ``None`` (no
    generator found); :func:`finite_field_decide` catches both cases.
    """
    _check_same_shape([a, b])
    for M in (a, b):
        if not M.is_invertible():
            raise NotInvertible("compute_generator expects invertible matrices")
    if _degrees is None:
        m, k = minimal_polynomial(a).degree, minimal_polynomial(b).degree
    else:
        m, k = _degrees
    d = gcd(m, k)
    if d == k:
        return a
    if d == m:
        return b
    if d == 1:
        return a @ b
    fm = dict(factor_small_integer(m))
    fk = dict(factor_small_integer(k))
    c = None
    for q in sorted(set(fm) | set(fk)):
        em, ek = fm.get(q, 0), fk.get(q, 0)
        if em >= ek:
            ci = _trace_search(a, m, q ** em)
        else:
            ci = _trace_search(b, k, q ** ek)
        if ci is None:
            return None
        c = ci if c is None else c @ ci
    return c


def finite_field_decide(S) -> FieldDecision:
    """Decide whether the algebra generated by ``S`` is a field.

    All inputs must be invertible; a singular input raises
    :class:`NotInvertible`.
    """
    S = list(S)
    if not S:
        raise EmptyInput("need at least one matrix")
    _check_same_shape(S)
    for i, M in enumerate(S):
        if not M.is_invertible():
            raise NotInvertible(f"input {i} is singular")
    n, p = S[0].n, S[0].p
    a = S[0]
    mu = minimal_polynomial(a)
    for A in S[1:]:
        mb = minimal_polynomial(A)
        a = compute_generator(a, A, _degrees=(mu.degree, mb.degree))
        if a is None:
            return FieldDecision(False, witness=NoGenerator())
        mu = minimal_polynomial(a)
    if not is_irreducible(mu):
        return FieldDecision(False, witness=ReducibleMinPoly(a, mu))
    d = mu.degree
    powers = [FpMatrix.identity(n, p)]
    for _ in range(1, d):
        powers.append(powers[-1] @ a)
    certs = []
    for i, A in enumerate(S):
        coords = span_membership(A, powers)
        if coords is None:
            return FieldDecision(False, witness=OutsideSpan(i))
        certs.append(tuple(coords))
    return FieldDecision(True, degree=d, generator=a, min_poly=mu, certificates=tuple(certs))


def reconstruct(decision: FieldDecision, index: int) -> FpMatrix:
    """Rebuild input ``index`` from its span certificate."""
    a = decision.generator
    powers = [mat_pow(a, j) for j in range(decision.degree)]
    return combine(decision.certificates[index], powers)
