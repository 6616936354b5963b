"""Quotient sets of spread sets and the rcf-multiset invariant.

``Quot(D_g) = {X Y^-1 : X, Y in D_g, Y invertible}``.  Since
``M_{g, c alpha} = c M_{g, alpha}`` for c in F_p, it is enough to form
quotients between projective representatives and then close under F_p^*.

Matrices are packed into int64 keys (base p, row-major, first entry most
significant) whenever p^(n^2) fits; otherwise flattened rows are used.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import kernels
from .errors import EvenCharacteristic, NotPlanarParameters
from .fp import FpPoly
from .linearized import DOPoly, spread_basis
from .matrix import FpMatrix, RcfForm, rcf
from .recognition import FieldDecision, finite_field_decide

_CHUNK = 1 << 17


class QuotSet:
    """A deduplicated set of n x n matrices over F_p, kept in sorted order."""

    __slots__ = ("p", "n", "_keys", "_flat", "_lookup")

    def __init__(self, p, n, *, keys=None, flat=None):
        self.p = p
        self.n = n
        self._keys = keys
        self._flat = flat
        self._lookup = None

    @classmethod
    def from_arrays(cls, mats, p, n) -> QuotSet:
        mats = np.asarray(mats, dtype=np.int64).reshape(-1, n, n) % p
        if kernels.keys_fit(p, n):
            return cls(p, n, keys=np.unique(kernels.encode_keys(mats, p)))
        flat = mats.reshape(len(mats), n * n)
        return cls(p, n, flat=np.unique(flat, axis=0) if len(flat) else flat)

    @classmethod
    def empty(cls, p, n) -> QuotSet:
        return cls.from_arrays(np.zeros((0, n, n), dtype=np.int64), p, n)

    @property
    def packed(self) -> bool:
        return self._keys is not None

    @property
    def keys(self) -> np.ndarray:
        """Sorted int64 keys (only when the matrices pack)."""
        if self._keys is None:
            raise ValueError(f"{self.n}x{self.n} matrices over F_{self.p} do not pack into int64")
        return self._keys

    def __len__(self):
        return len(self._keys) if self.packed else len(self._flat)

    def is_empty(self):
        return len(self) == 0

    def matrices(self, start=0, stop=None) -> np.ndarray:
        """(N, n, n) array of the elements in canonical order."""
        if self.packed:
            return kernels.decode_keys(self._keys[start:stop], self.p, self.n)
        return self._flat[start:stop].reshape(-1, self.n, self.n)

    def __iter__(self):
        for s in range(0, len(self), _CHUNK):
            for M in self.matrices(s, s + _CHUNK):
                yield FpMatrix._wrap(M, self.p)

    def contains_many(self, mats) -> np.ndarray:
        mats = np.asarray(mats, dtype=np.int64).reshape(-1, self.n, self.n) % self.p
        if self.packed:
            k = kernels.encode_keys(mats, self.p)
            pos = np.searchsorted(self._keys, k)
            pos = np.minimum(pos, max(len(self._keys) - 1, 0))
            return (self._keys[pos] == k) if len(self._keys) else np.zeros(len(k), dtype=bool)
        if self._lookup is None:
            self._lookup = {row.tobytes() for row in self._flat}
        return np.array([m.reshape(-1).tobytes() in self._lookup for m in mats], dtype=bool)

    def __contains__(self, M: FpMatrix):
        if M.p != self.p or M.n != self.n:
            return False
        return bool(self.contains_many(M.a[None])[0])

    def __eq__(self, other):
        if not isinstance(other, QuotSet) or (self.p, self.n) != (other.p, other.n):
            return NotImplemented
        if self.packed and other.packed:
            return bool(np.array_equal(self._keys, other._keys))
        return bool(np.array_equal(self.matrices(), other.matrices()))

    __hash__ = None

    def __repr__(self):
        return f"QuotSet(p={self.p}, n={self.n}, size={len(self)})"


def _scalar_closure(q: QuotSet) -> QuotSet:
    """Union of c * q over c in F_p^*."""
    p, n = q.p, q.n
    if p == 2 or q.is_empty():
        return q
    parts = []
    for s in range(0, len(q), _CHUNK):
        block = q.matrices(s, s + _CHUNK)
        for c in range(1, p):
            parts.append((block * c) % p)
    return QuotSet.from_arrays(np.concatenate(parts), p, n)


def _products(D, Yinv, p, n) -> QuotSet:
    """All X @ Y for X in D, Y in Yinv."""
    if kernels.keys_fit(p, n):
        return QuotSet(p, n, keys=np.unique(kernels.quotient_keys(D, Yinv, p)))
    prods = [np.einsum("aij,jk->aik", D, Y) % p for Y in Yinv]
    return QuotSet.from_arrays(np.concatenate(prods), p, n)


def quot_set(g: DOPoly) -> QuotSet:
    """Quot(D_g), via projective representatives plus scalar closure."""
    ctx = g.ctx
    p, n = ctx.p, ctx.n
    sb = spread_basis(g)
    D = sb.matrices_for(ctx.projective_coords())
    invs, ok = kernels.batch_inverse(D, p)
    if not ok.any():
        return QuotSet.empty(p, n)
    numerators = np.concatenate([np.zeros((1, n, n), dtype=np.int64), D])
    return _scalar_closure(_products(numerators, invs[ok], p, n))


def quot_slice(g: DOPoly, Y: FpMatrix) -> QuotSet:
    """The slice ``D_g Y^-1`` over all directions (Y invertible)."""
    ctx = g.ctx
    D = spread_basis(g).matrices_for(ctx.all_coords())
    return _products(D, Y.inverse().a[None], ctx.p, ctx.n)


def quot_upper_bound(p: int, n: int) -> int:
    """Largest possible |Quot(D_g)| for planar g over F_{p^n}."""
    q = p ** n
    return (q - p) * (q - 1) // (p - 1) + p


def twisted_quot_cardinality(p: int, n: int, k: int) -> int:
    """|Quot| for the planar monomial x^(p^k + 1) over F_{p^n}."""
    if k % n == 0:
        return p ** n
    d = gcd(k, n)
    if (n // d) % 2 == 0:
        raise NotPlanarParameters(f"n/gcd(k, n) = {n // d} is even")
    q, r = p ** n, p ** d
    return (q - r) * (q - 1) // (r - 1) + r


# -- rcf multiset -----------------------------------------------------------

@dataclass(frozen=True)
class RcfMultiset:
    """Similarity classes of a matrix set with the number of members in each."""

    p: int
    n: int
    classes: tuple  # ((RcfForm, multiplicity), ...) in canonical order

    @property
    def size(self) -> int:
        return sum(m for _, m in self.classes)

    def text(self) -> str:
        lines = [f"p={self.p} n={self.n}"]
        lines += [f"{form.to_text()} {mult}" for form, mult in self.classes]
        return "\n".join(lines) + "\n"

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text().encode()).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, RcfMultiset):
            return NotImplemented
        return self.text() == other.text()

    def __hash__(self):
        return hash(self.text())


def _count_rcf(p, mats):
    counts = Counter()
    for M in mats:
        counts[rcf(FpMatrix._wrap(M, p))] += 1
    return counts


def rcf_multiset(q, jobs: int = 1) -> RcfMultiset:
    """Group a :class:`QuotSet` (or any iterable of equal-shaped matrices)
    by rational canonical form."""
    if isinstance(q, QuotSet):
        p, n = q.p, q.n
        chunks = [q.matrices(s, s + 4096) for s in range(0, len(q), 4096)]
    else:
        mats = list(q)
        if not mats:
            raise ValueError("cannot infer p and n from an empty iterable")
        p, n = mats[0].p, mats[0].n
        chunks = [np.stack([M.a for M in mats])]
    counts = Counter()
    if jobs > 1 and len(chunks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_count_rcf, [p] * len(chunks), chunks):
                counts.update(part)
    else:
        for chunk in chunks:
            counts.update(_count_rcf(p, chunk))
    classes = tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
    return RcfMultiset(p, n, classes)


def parse_rcf_text(text: str) -> RcfMultiset:
    """Inverse of :meth:`RcfMultiset.text`."""
    lines = text.strip().splitlines()
    head = dict(part.split("=") for part in lines[0].split())
    p, n = int(head["p"]), int(head["n"])
    classes = []
    for line in lines[1:]:
        form, mult = line.rsplit(" ", 1)
        body = form.strip()[1:-1]
        factors = tuple(FpPoly([int(c) for c in f.split(",")], p) for f in body.split(";"))
        classes.append((RcfForm(factors), int(mult)))
    return RcfMultiset(p, n, tuple(classes))


# -- equivalence to x^2 -----------------------------------------------------

@dataclass(frozen=True)
class SingularGenerator:
    index: int

    kind = "singular_generator"


@dataclass(frozen=True)
class X2Certificate:
    """Outcome of :func:`decide_x2`.

    ``stage`` is ``"field"`` when the verdict is true, otherwise one of
    ``"singular_y"`` (witness: rank of M_{g,1}), ``"not_field"`` (witness:
    the :class:`FieldDecision`) or ``"wrong_degree"``.
    """

    verdict: bool
    stage: str
    degree: int | None = None
    generator: FpMatrix | None = None
    min_poly: FpPoly | None = None
    witness: object = None

    def __bool__(self):
        return self.verdict


def decide_x2(g: DOPoly) -> X2Certificate:
    """Whether g is linear equivalent to x^2."""
    ctx = g.ctx
    if ctx.p == 2:
        raise EvenCharacteristic("x^2 equivalence needs odd characteristic")
    sb = spread_basis(g)
    Y = sb.matrix_at(ctx.one())
    Yinv, rank = kernels.inverse(Y.a, ctx.p)
    if rank < ctx.n:
        return X2Certificate(False, "singular_y", witness=int(rank))
    gens = []
    for i, M in enumerate(sb.mats):
        X = FpMatrix._wrap(kernels.matmul(M, Yinv, ctx.p), ctx.p)
        if X.is_zero():
            continue
        if not X.is_invertible():
            # a nonzero zero-divisor already rules out a field
            return X2Certificate(False, "not_field", witness=SingularGenerator(i))
        gens.append(X)
    dec: FieldDecision = finite_field_decide(gens)
    if not dec.is_field:
        return X2Certificate(False, "not_field", witness=dec)
    if dec.degree != ctx.n:
        return X2Certificate(False, "wrong_degree", degree=dec.degree,
                             generator=dec.generator, min_poly=dec.min_poly, witness=dec)
    return X2Certificate(True, "field", degree=dec.degree,
                         generator=dec.generator, min_poly=dec.min_poly)
