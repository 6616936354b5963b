"""Structure checks for the planar monomials x^(p^k + 1) (twisted fields).

With q = p^k, the linearized derivative of x^(q+1) in direction alpha is
``phi_alpha(x) = alpha x^q + alpha^q x``.  It is invertible iff
n / gcd(k, n) is odd, and then has a closed-form inverse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import NotInvertible, NotInvertibleParameters, SizeGuard, ZeroDirection
from .extfield import ExtElem, ExtFieldCtx
from .fp import is_irreducible
from .linearized import DOPoly, LinearizedPoly, derivative_matrix, matrix_of_linearized
from .matrix import FpMatrix, mat_inverse, minimal_polynomial
from .quot import QuotSet, quot_set

DEFAULT_SPAN_LIMIT = 2_000_000


def _odd_part_degree(n, k):
    d = n // gcd(k, n)
    if d % 2 == 0:
        raise NotInvertibleParameters(f"n/gcd(k, n) = {d} is even")
    return d


def phi(alpha: ExtElem, k: int) -> LinearizedPoly:
    """``alpha x^(p^k) + alpha^(p^k) x``."""
    ctx = alpha.ctx
    return (LinearizedPoly.monomial(ctx, k, alpha)
            + LinearizedPoly.monomial(ctx, 0, alpha.frobenius(k)))


def phi_inverse(alpha: ExtElem, k: int) -> LinearizedPoly:
    """Closed-form compositional inverse of :func:`phi`.

    ``(alpha/2) sum_{i<d} (-1)^i alpha^(-(q+1) p^(ki)) x^(p^(ki))`` with
    ``d = n / gcd(k, n)``, which must be odd.
    """
    ctx = alpha.ctx
    if alpha.is_zero():
        raise ZeroDirection("phi_0 is the zero map")
    d = _odd_part_degree(ctx.n, k)
    q = ctx.p ** k
    half = alpha * ctx.scalar(2).inverse()
    base = (alpha ** (q + 1)).inverse()
    coeffs = [ctx.zero()] * ctx.n
    for i in range(d):
        c = half * base.frobenius(k * i)
        if i % 2:
            c = -c
        idx = (k * i) % ctx.n
        coeffs[idx] = coeffs[idx] + c
    return LinearizedPoly.from_coeffs(ctx, coeffs)


# -- twisted structure inside Quot -----------------------------------------

@dataclass(frozen=True)
class TwistedReport:
    """Result of :func:`verify_twisted_structure`."""

    irreducible: bool
    degree: int
    expected_degree: int
    span_size: int
    span_in_quot: bool
    failing_element: FpMatrix | None = None

    @property
    def ok(self) -> bool:
        return self.irreducible and self.degree == self.expected_degree and self.span_in_quot


def verify_twisted_structure(g: DOPoly, alpha: ExtElem, beta: ExtElem, *,
                             quot: QuotSet | None = None,
                             limit: int = DEFAULT_SPAN_LIMIT) -> TwistedReport:
    """Check that ``X = M_{g,beta} M_{g,alpha}^-1`` generates a field of the
    same degree as ``alpha^-1 beta`` and that all of F_p[X] lies in Quot."""
    ctx = g.ctx
    if alpha.is_zero():
        raise ZeroDirection("alpha must be nonzero")
    Ma = derivative_matrix(g, alpha)
    if not Ma.is_invertible():
        raise NotInvertible("M_{g,alpha} is singular")
    X = derivative_matrix(g, beta) @ mat_inverse(Ma)
    mu = minimal_polynomial(X)
    expected = (beta / alpha).degree()
    deg = mu.degree
    span_size = ctx.p ** deg
    if span_size > limit:
        raise SizeGuard(span_size, limit)
    if quot is None:
        quot = quot_set(g)
    p, n = ctx.p, ctx.n
    powers = [np.eye(n, dtype=np.int64)]
    for _ in range(1, deg):
        powers.append((X @ FpMatrix._wrap(powers[-1], p)).a)
    P = np.stack(powers).reshape(deg, n * n)
    coeffs = np.array(list(itertools.product(range(p), repeat=deg)), dtype=np.int64)
    span = ((coeffs @ P) % p).reshape(-1, n, n)
    member = quot.contains_many(span)
    failing = None
    if not member.all():
        failing = FpMatrix(span[int(np.argmin(member))], p)
    return TwistedReport(is_irreducible(mu), deg, expected, span_size, bool(member.all()), failing)


# -- conjugation identities -------------------------------------------------

@dataclass(frozen=True)
class ConjugationReport:
    """Pass/fail per identity; ``subfield_degenerate`` marks the case
    ``beta^q - alpha^(q-1) beta = 0``."""

    phi_inverse_matches: bool
    composition_identity: bool
    conjugation_identity: bool
    scaling_identity: bool
    subfield_degenerate: bool
    details: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return (self.phi_inverse_matches and self.composition_identity
                and self.conjugation_identity and self.scaling_identity)


def verify_conjugation_identities(ctx: ExtFieldCtx, k: int, alpha: ExtElem, beta: ExtElem, *,
                                  gamma: ExtElem | None = None, rng=None) -> ConjugationReport:
    """Materialise the phi maps as matrices and compare:

    * ``phi_beta o phi_alpha^-1 = c * phi_alpha^-1 + (alpha^-1 beta) x`` with
      ``c = beta^q - alpha^(q-1) beta``;
    * if c = 0 this is ``T_{alpha^-1 beta}``, otherwise conjugation by
      ``psi = T_{alpha^q} Phi_alpha T_{c^-1}`` turns it into
      ``T_{(alpha^-1 beta)^q}``;
    * ``phi_beta o phi_alpha^-1 = T_{gamma^-(q+1)} Phi_{gamma beta}
      Phi_{gamma alpha}^-1 T_{gamma^(q+1)}`` for gamma != 0.
    """
    if alpha.is_zero():
        raise ZeroDirection("alpha must be nonzero")
    _odd_part_degree(ctx.n, k)
    if gamma is None:
        rng = np.random.default_rng(0) if rng is None else rng
        gamma = ctx.random(rng, nonzero=True)
    elif gamma.is_zero():
        raise ZeroDirection("gamma must be nonzero")
    q = ctx.p ** k
    T = ctx.mult_matrix

    Phi_a = matrix_of_linearized(phi(alpha, k))
    Phi_a_inv = matrix_of_linearized(phi_inverse(alpha, k))
    inv_ok = Phi_a_inv == mat_inverse(Phi_a)

    Phi_b = matrix_of_linearized(phi(beta, k))
    lhs = Phi_b @ Phi_a_inv
    ratio = beta / alpha
    c = beta.frobenius(k) - alpha ** (q - 1) * beta
    comp_ok = lhs == T(c) @ Phi_a_inv + T(ratio)

    degenerate = c.is_zero()
    if degenerate:
        conj_ok = lhs == T(ratio)
    else:
        psi = T(alpha.frobenius(k)) @ Phi_a @ T(c.inverse())
        conj_ok = psi @ lhs @ mat_inverse(psi) == T(ratio.frobenius(k))

    g_q1 = gamma ** (q + 1)
    scaled = (T(g_q1.inverse()) @ matrix_of_linearized(phi(gamma * beta, k))
              @ matrix_of_linearized(phi_inverse(gamma * alpha, k)) @ T(g_q1))
    scale_ok = lhs == scaled

    return ConjugationReport(inv_ok, comp_ok, conj_ok, scale_ok, degenerate,
                             {"gamma": gamma.tolist(), "k": k})
