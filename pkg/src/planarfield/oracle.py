"""Brute-force reference implementations for cross-checking at small sizes.

Nothing here reuses the fast paths it is meant to validate: algebras are
closed by explicit multiplication, planarity is read off a full table of
g's values, and quotient sets are formed from every pair of directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EmptyInput, EvenCharacteristic, SizeGuard
from .fp import is_irreducible
from .linearized import DOPoly
from .matrix import FpMatrix, minimal_polynomial
from .quot import QuotSet
from .recognition import FieldDecision, _check_same_shape

ENUM_LIMIT = 2_000_000


@dataclass(frozen=True)
class AlgebraBasis:
    basis: tuple  # of FpMatrix

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _insert(rows, flat, p):
    """Add ``flat`` to the row-echelon list ``rows`` if independent."""
    stacked = np.stack(rows + [flat]) if rows else flat[None]
    return kernels.rref(stacked, p)[2] > len(rows)


def algebra_closure_basis(S) -> AlgebraBasis:
    """Basis of the F_p-algebra generated by ``S`` (with identity)."""
    S = list(S)
    if not S:
        raise EmptyInput("need at least one matrix")
    _check_same_shape(S)
    p, n = S[0].p, S[0].n
    basis, rows = [], []
    for M in [FpMatrix.identity(n, p)] + S:
        flat = M.a.reshape(-1)
        if _insert(rows, flat, p):
            basis.append(M)
            rows.append(flat)
    i = 0
    while i < len(basis):
        for G in S:
            P = basis[i] @ G
            flat = P.a.reshape(-1)
            if _insert(rows, flat, p):
                basis.append(P)
                rows.append(flat)
        i += 1
    return AlgebraBasis(tuple(basis))


def brute_force_field_check(S, limit: int = ENUM_LIMIT) -> FieldDecision:
    """Decide fieldness of F_p[S] by enumerating every element."""
    S = list(S)
    ab = algebra_closure_basis(S)
    p, n = S[0].p, S[0].n
    dim = ab.dimension
    if dim > n:
        return FieldDecision(False)
    size = p ** dim
    if size > limit:
        raise SizeGuard(size, limit)
    B = np.stack([M.a.reshape(-1) for M in ab.basis])
    for X, Y in itertools.combinations(ab.basis, 2):
        if X @ Y != Y @ X:
            return FieldDecision(False)
    coeffs = np.array(list(itertools.product(range(p), repeat=dim)), dtype=np.int64)
    elems = ((coeffs @ B) % p).reshape(-1, n, n)[1:]  # first row is zero
    _, ok = kernels.batch_inverse(elems, p)
    if not ok.all():
        return FieldDecision(False, witness=FpMatrix(elems[int(np.argmin(ok))], p))
    for E in elems:
        M = FpMatrix._wrap(E, p)
        mu = minimal_polynomial(M)
        if mu.degree == dim and is_irreducible(mu):
            return FieldDecision(True, degree=dim, generator=M, min_poly=mu)
    raise AssertionError("finite field without a primitive element")  # pragma: no cover


def _value_table(g: DOPoly, limit):
    ctx = g.ctx
    if ctx.order > limit:
        raise SizeGuard(ctx.order, limit)
    coords = ctx.all_coords()
    return coords, ctx.to_index(g.evaluate_many(coords))


def _add_index(ctx, coords, a):
    return ctx.to_index((coords + a) % ctx.p)


def exhaustive_planarity(g: DOPoly, limit: int = ENUM_LIMIT) -> bool:
    """Planarity by direct evaluation of every difference map, checked
    against the 2-to-1 property of g itself."""
    ctx = g.ctx
    if ctx.p == 2:
        raise EvenCharacteristic("planarity needs odd characteristic")
    coords, G = _value_table(g, limit)
    Gc = coords[G]
    by_delta = True
    for a in range(1, ctx.order):
        shifted = Gc[_add_index(ctx, coords, coords[a])]
        delta = ctx.to_index((shifted - Gc - Gc[a]) % ctx.p)
        if len(np.unique(delta)) != ctx.order:
            by_delta = False
            break
    counts = np.bincount(G[1:], minlength=ctx.order)
    two_to_one = bool(G[0] == 0 and counts[0] == 0 and np.all((counts == 0) | (counts == 2)))
    if by_delta != two_to_one:
        raise AssertionError(f"oracle criteria disagree: delta={by_delta} 2-to-1={two_to_one}")
    return by_delta


def derivative_matrices_by_table(g: DOPoly, limit: int = ENUM_LIMIT) -> np.ndarray:
    """(p^n, n, n) stack of M_{g,alpha} in ``from_int`` order, column j
    being g(x^j + alpha) - g(x^j) - g(alpha) read off the value table."""
    ctx = g.ctx
    coords, G = _value_table(g, limit)
    Gc = coords[G]
    basis_idx = ctx.to_index(np.eye(ctx.n, dtype=np.int64))
    out = np.zeros((ctx.order, ctx.n, ctx.n), dtype=np.int64)
    for a in range(ctx.order):
        cols = (Gc[_add_index(ctx, coords[basis_idx], coords[a])] - Gc[basis_idx] - Gc[a]) % ctx.p
        out[a] = cols.T
    return out


def exhaustive_quot(g: DOPoly, limit: int = ENUM_LIMIT) -> QuotSet:
    """Quot(D_g) from all (alpha, beta) pairs."""
    ctx = g.ctx
    pairs = ctx.order ** 2
    if pairs > limit:
        raise SizeGuard(pairs, limit)
    D = derivative_matrices_by_table(g, limit)
    invs, ok = kernels.batch_inverse(D, ctx.p)
    if not ok.any():
        return QuotSet.empty(ctx.p, ctx.n)
    seen = set()
    for Yinv in invs[ok]:
        prods = np.einsum("aij,jk->aik", D, Yinv) % ctx.p
        seen.update(m.tobytes() for m in prods)
    mats = np.array([np.frombuffer(b, dtype=np.int64) for b in sorted(seen)])
    return QuotSet.from_arrays(mats, ctx.p, ctx.n)
