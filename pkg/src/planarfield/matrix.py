"""Dense exact linear algebra over F_p."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionMismatch, ModulusMismatch, NonDivisor, Singular
from .fp import FpPoly, _padd, _pdivmod, _pmonic, _pmul, _psub, poly_lcm


class FpMatrix:
    """Immutable square matrix over F_p backed by an int64 array.

    Equality and hashing use the reduced entries in row-major order, so
    matrices can live in sets.  ``@`` is the matrix product; ``*`` only
    scales by an integer.
    """

    __slots__ = ("p", "a", "_hash")

    def __init__(self, entries, p: int):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
        a %= p
        a.flags.writeable = False
        self.p = p
        self.a = a
        self._hash = None

    @classmethod
    def _wrap(cls, arr, p):
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.flags.writeable = False
        obj.p = p
        obj.a = arr
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n, p):
        return cls._wrap(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zero(cls, n, p):
        return cls._wrap(np.zeros((n, n), dtype=np.int64), p)

    @classmethod
    def scalar(cls, c, n, p):
        return cls._wrap(np.eye(n, dtype=np.int64) * (c % p), p)

    @classmethod
    def elementary(cls, i, j, n, p):
        e = np.zeros((n, n), dtype=np.int64)
        e[i, j] = 1
        return cls._wrap(e, p)

    @classmethod
    def diag(cls, values, p):
        return cls(np.diag([int(v) for v in values]), p)

    @classmethod
    def companion(cls, f: FpPoly) -> FpMatrix:
        """Companion matrix of a monic ``f``: ones below the diagonal and
        ``-c_0, ..., -c_{d-1}`` in the last column."""
        if not f.is_monic():
            raise ValueError("companion matrix needs a monic polynomial")
        d = f.degree
        C = np.zeros((d, d), dtype=np.int64)
        for i in range(1, d):
            C[i, i - 1] = 1
        for i in range(d):
            C[i, d - 1] = (-f.coeffs[i]) % f.p
        return cls._wrap(C, f.p)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def _compat(self, other):
        if not isinstance(other, FpMatrix):
            return False
        if other.p != self.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")
        return True

    def __add__(self, other):
        if not self._compat(other):
            return NotImplemented
        return FpMatrix._wrap((self.a + other.a) % self.p, self.p)

    def __sub__(self, other):
        if not self._compat(other):
            return NotImplemented
        return FpMatrix._wrap((self.a - other.a) % self.p, self.p)

    def __neg__(self):
        return FpMatrix._wrap((-self.a) % self.p, self.p)

    def __mul__(self, c):
        if isinstance(c, (int, np.integer)):
            return FpMatrix._wrap((self.a * (int(c) % self.p)) % self.p, self.p)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not self._compat(other):
            return NotImplemented
        return FpMatrix._wrap(kernels.matmul(self.a, other.a, self.p), self.p)

    def __pow__(self, e):
        return mat_pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.a.shape == other.a.shape and bool(np.array_equal(self.a, other.a))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.a.shape, self.a.tobytes()))
        return self._hash

    def __repr__(self):
        return f"FpMatrix({self.a.tolist()}, p={self.p})"

    def tolist(self):
        return self.a.tolist()

    def is_zero(self):
        return not self.a.any()

    def rank(self) -> int:
        return kernels.rref(self.a, self.p)[2]

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def inverse(self) -> FpMatrix:
        return mat_inverse(self)

    def transpose(self) -> FpMatrix:
        return FpMatrix._wrap(self.a.T.copy(), self.p)

    def apply(self, v):
        """Matrix-vector product for a coordinate vector."""
        return kernels.matvec(self.a, np.asarray(v, dtype=np.int64) % self.p, self.p)


def mat_add(A: FpMatrix, B: FpMatrix) -> FpMatrix:
    return A + B


def mat_mul(A: FpMatrix, B: FpMatrix) -> FpMatrix:
    return A @ B


def mat_scale(A: FpMatrix, c: int) -> FpMatrix:
    return A * c


def mat_inverse(A: FpMatrix) -> FpMatrix:
    inv, rank = kernels.inverse(A.a, A.p)
    if rank < A.n:
        raise Singular(int(rank), A.n)
    return FpMatrix._wrap(inv, A.p)


def mat_pow(A: FpMatrix, e: int) -> FpMatrix:
    if e < 0:
        return mat_pow(mat_inverse(A), -e)
    p = A.p
    result = np.eye(A.n, dtype=np.int64)
    base = A.a
    first = True
    while e:
        if e & 1:
            result = base.copy() if first else kernels.matmul(result, base, p)
            first = False
        e >>= 1
        if e:
            base = kernels.matmul(base, base, p)
    return FpMatrix._wrap(result, p)


def poly_eval_matrix(f: FpPoly, A: FpMatrix) -> FpMatrix:
    """Horner evaluation ``f(A)``."""
    n, p = A.n, A.p
    acc = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = (kernels.matmul(acc, A.a, p) + c * eye) % p
    return FpMatrix._wrap(acc, p)


def minimal_polynomial(A: FpMatrix) -> FpPoly:
    """Monic generator of the annihilator ideal of ``A``.

    lcm of the Krylov minimal polynomials of the standard basis vectors,
    short-circuiting at degree n.
    """
    polys, degs, count = kernels.local_minpolys(A.a, A.p)
    result = FpPoly.one(A.p)
    for i in range(count):
        local = FpPoly._raw(tuple(int(c) for c in polys[i, :degs[i] + 1]), A.p)
        result = poly_lcm(result, local)
        if result.degree == A.n:
            break
    return result


def relative_trace_matrix(A: FpMatrix, ell: int, k: int) -> FpMatrix:
    """``A + A^q + ... + A^(q^(ell/k - 1))`` with ``q = p^k``."""
    if k <= 0 or ell <= 0 or ell % k:
        raise NonDivisor(f"{k} does not divide {ell}")
    q = A.p ** k
    term = A
    total = A.a.copy()
    for _ in range(ell // k - 1):
        term = mat_pow(term, q)
        total = (total + term.a) % A.p
    return FpMatrix._wrap(total, A.p)


def span_membership(A: FpMatrix, basis):
    """Coordinates of ``A`` in the span of ``basis``, or ``None``.

    When the basis is linearly dependent any valid coordinate vector may be
    returned (free variables are set to zero).
    """
    basis = list(basis)
    for B in basis:
        A._compat(B)
    p = A.p
    k = len(basis)
    if k == 0:
        return [] if A.is_zero() else None
    cols = [B.a.reshape(-1) for B in basis] + [A.a.reshape(-1)]
    aug = np.stack(cols, axis=1)
    R, pivots, rank = kernels.rref(aug, p)
    pivots = [int(c) for c in pivots[:rank]]
    if pivots and pivots[-1] == k:
        return None
    coords = [0] * k
    for row, c in enumerate(pivots):
        coords[c] = int(R[row, k])
    return coords


def combine(coeffs, mats) -> FpMatrix:
    """F_p-linear combination of matrices."""
    mats = list(mats)
    p = mats[0].p
    acc = np.zeros_like(mats[0].a)
    for c, M in zip(coeffs, mats):
        acc = (acc + (int(c) % p) * M.a) % p
    return FpMatrix._wrap(acc, p)


# -- rational canonical form ------------------------------------------------

@dataclass(frozen=True)
class RcfForm:
    """Invariant factors ``f_1 | f_2 | ... | f_r`` (non-constant, monic)."""

    invariant_factors: tuple

    @property
    def n(self) -> int:
        return sum(f.degree for f in self.invariant_factors)

    @property
    def minimal_polynomial(self) -> FpPoly:
        return self.invariant_factors[-1]

    def sort_key(self):
        return (tuple(f.degree for f in self.invariant_factors),
                tuple(f.coeffs for f in self.invariant_factors))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def to_text(self) -> str:
        return "[" + ";".join(",".join(map(str, f.coeffs)) for f in self.invariant_factors) + "]"

    def to_matrix(self) -> FpMatrix:
        """Block-diagonal companion representative of the class."""
        p = self.invariant_factors[0].p
        n = self.n
        M = np.zeros((n, n), dtype=np.int64)
        off = 0
        for f in self.invariant_factors:
            d = f.degree
            M[off:off + d, off:off + d] = FpMatrix.companion(f).a
            off += d
        return FpMatrix._wrap(M, p)


def _smith_diagonal(M, p):
    """Diagonal of the Smith form of a square matrix over F_p[x].

    ``M`` is a list of rows of raw coefficient lists and is consumed.
    """
    n = len(M)
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                row = M[i]
                for j in range(t, n):
                    e = row[j]
                    if e and (best is None or len(e) < best[0]):
                        best = (len(e), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return [M[i][i] for i in range(n)]
            _, bi, bj = best
            if bi != t:
                M[t], M[bi] = M[bi], M[t]
            if bj != t:
                for row in M:
                    row[t], row[bj] = row[bj], row[t]
            piv = M[t][t]
            clean = True
            for i in range(t + 1, n):
                e = M[i][t]
                if not e:
                    continue
                q, r = _pdivmod(e, piv, p)
                rt, ri = M[t], M[i]
                for j in range(t, n):
                    if rt[j]:
                        ri[j] = _psub(ri[j], _pmul(q, rt[j], p), p)
                if r:
                    clean = False
            for j in range(t + 1, n):
                e = M[t][j]
                if not e:
                    continue
                q, r = _pdivmod(e, piv, p)
                for i in range(t, n):
                    if M[i][t]:
                        M[i][j] = _psub(M[i][j], _pmul(q, M[i][t], p), p)
                if r:
                    clean = False
            if not clean:
                continue
            bad = None
            if len(piv) > 1:
                for i in range(t + 1, n):
                    for j in range(t + 1, n):
                        e = M[i][j]
                        if e and _pdivmod(e, piv, p)[1]:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            rt, rb = M[t], M[bad]
            for j in range(t, n):
                if rb[j]:
                    rt[j] = _padd(rt[j], rb[j], p)
    return [M[i][i] for i in range(n)]


def rcf(A: FpMatrix) -> RcfForm:
    """Invariant factors of ``A`` from the Smith form of ``xI - A``."""
    p, n = A.p, A.n
    a = A.a.tolist()
    M = []
    for i in range(n):
        row = []
        for j in range(n):
            c = (-a[i][j]) % p
            if i == j:
                row.append([c, 1])
            else:
                row.append([c] if c else [])
        M.append(row)
    diag = _smith_diagonal(M, p)
    factors = [FpPoly._raw(tuple(_pmonic(d, p)), p) for d in diag if len(d) > 1]
    factors.sort(key=lambda f: f.degree)
    return RcfForm(tuple(factors))


def similar(A: FpMatrix, B: FpMatrix) -> bool:
    A._compat(B)
    return rcf(A) == rcf(B)
