"""Explicit model of F_{p^n} = F_p[x]/(f) in the polynomial basis 1, x, ..., x^(n-1).

Elements are coordinate vectors over that basis.  Besides scalar
arithmetic the context offers vectorised helpers (``mul_many``,
``frobenius_many``) used by enumeration code.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import kernels
from .errors import ModulusMismatch, ZeroInversion
from .fp import FpPoly, find_irreducible, is_irreducible, prime_modulus
from .matrix import FpMatrix, mat_pow


class ExtFieldCtx:
    """F_{p^n} with a fixed monic irreducible modulus.

    If ``modulus`` is omitted, :func:`find_irreducible` picks one.
    """

    def __init__(self, p: int, n: int, modulus: FpPoly | None = None):
        p = prime_modulus(p)
        if n < 1:
            raise ValueError("extension degree must be positive")
        if modulus is None:
            modulus = find_irreducible(p, n)
        if modulus.p != p:
            raise ModulusMismatch("modulus is over a different prime field")
        if modulus.degree != n or not modulus.is_monic():
            raise ValueError(f"modulus must be monic of degree {n}")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus} is reducible")
        self.p = p
        self.n = n
        self.modulus = modulus
        self.order = p ** n
        # coordinates of x^j for j = 0 .. 2n-2
        red = np.zeros((2 * n - 1, n), dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        cur[0] = 1
        low = np.array([(-c) % p for c in modulus.coeffs[:n]], dtype=np.int64)
        for j in range(2 * n - 1):
            red[j] = cur
            top = cur[-1]
            cur = np.concatenate([[0], cur[:-1]])
            cur = (cur + top * low) % p
        self._red = red
        self._frob = self._build_frobenius()
        self._frob_pows = {0: FpMatrix.identity(n, p), 1: self._frob}

    def __eq__(self, other):
        return (isinstance(other, ExtFieldCtx) and self.p == other.p
                and self.n == other.n and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"ExtFieldCtx(p={self.p}, n={self.n}, modulus={self.modulus})"

    # -- elements --------------------------------------------------------

    def elem(self, coords) -> ExtElem:
        c = np.zeros(self.n, dtype=np.int64)
        coords = np.asarray(coords, dtype=np.int64).reshape(-1)
        if coords.shape[0] > self.n:
            raise ValueError("too many coordinates")
        c[:coords.shape[0]] = coords
        return ExtElem(self, c % self.p)

    def scalar(self, c: int) -> ExtElem:
        return self.elem([c % self.p])

    def zero(self) -> ExtElem:
        return self.elem([])

    def one(self) -> ExtElem:
        return self.scalar(1)

    def gen(self) -> ExtElem:
        """The class of x."""
        if self.n == 1:
            return self.scalar(-self.modulus.coeffs[0])
        return self.elem([0, 1])

    def from_int(self, k: int) -> ExtElem:
        """Element whose base-p digits (constant first) are the coordinates."""
        c = []
        for _ in range(self.n):
            k, r = divmod(k, self.p)
            c.append(r)
        return self.elem(c)

    def all_coords(self) -> np.ndarray:
        """All p^n coordinate vectors, row i = digits of i (constant first)."""
        idx = np.arange(self.order, dtype=np.int64)
        out = np.zeros((self.order, self.n), dtype=np.int64)
        for j in range(self.n):
            out[:, j] = idx % self.p
            idx //= self.p
        return out

    def to_index(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        w = self.p ** np.arange(self.n, dtype=np.int64)
        return coords @ w

    def elements(self):
        for k in range(self.order):
            yield self.from_int(k)

    def projective_coords(self) -> np.ndarray:
        """One representative per line F_p^* alpha: leading nonzero coordinate
        (highest index) equal to 1.  In ``from_int`` order."""
        c = self.all_coords()[1:]
        nz = c != 0
        last = self.n - 1 - np.argmax(nz[:, ::-1], axis=1)
        return c[c[np.arange(len(c)), last] == 1]

    def random(self, rng, nonzero=False) -> ExtElem:
        while True:
            e = self.elem(rng.integers(0, self.p, size=self.n))
            if not nonzero or not e.is_zero():
                return e

    # -- arithmetic on coordinate arrays --------------------------------

    def mul_many(self, A, B) -> np.ndarray:
        """Row-wise products of two (N, n) coordinate arrays."""
        A = np.asarray(A, dtype=np.int64) % self.p
        B = np.asarray(B, dtype=np.int64) % self.p
        A, B = np.broadcast_arrays(A, B)
        N = A.shape[0]
        n, p = self.n, self.p
        conv = np.zeros((N, 2 * n - 1), dtype=np.int64)
        for i in range(n):
            conv[:, i:i + n] = (conv[:, i:i + n] + A[:, i:i + 1] * B) % p
        return kernels.matmul(conv, self._red, p) if N else np.zeros((0, n), dtype=np.int64)

    def _mul(self, a, b):
        return self.mul_many(a[None, :], b[None, :])[0]

    def frobenius_matrix(self, k: int = 1) -> FpMatrix:
        """Matrix of y -> y^(p^k) in the polynomial basis."""
        k %= self.n
        if k not in self._frob_pows:
            self._frob_pows[k] = mat_pow(self._frob, k)
        return self._frob_pows[k]

    def frobenius_many(self, A, k: int = 1) -> np.ndarray:
        F = self.frobenius_matrix(k)
        return kernels.matmul(np.asarray(A, dtype=np.int64), F.a.T.copy(), self.p)

    def _build_frobenius(self):
        # column j = coordinates of (x^j)^p, by square-and-multiply in the field
        n, p = self.n, self.p
        xp = np.zeros(n, dtype=np.int64)
        xp[0] = 1
        base = self.gen().coords.copy()
        e = p
        while e:
            if e & 1:
                xp = self._mul(xp, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        cols = np.zeros((n, n), dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        cur[0] = 1
        for j in range(n):
            cols[:, j] = cur
            cur = self._mul(cur, xp)
        return FpMatrix._wrap(cols, p)

    def mult_matrix(self, beta: ExtElem) -> FpMatrix:
        """T_beta: column i holds the coordinates of beta * x^i."""
        basis = np.eye(self.n, dtype=np.int64)
        cols = self.mul_many(np.broadcast_to(beta.coords, (self.n, self.n)), basis)
        return FpMatrix._wrap(cols.T.copy(), self.p)

    def x_matrix(self) -> FpMatrix:
        """T_x, which is the companion matrix of the modulus."""
        return FpMatrix.companion(self.modulus)

    def basis_change(self, other: ExtFieldCtx) -> FpMatrix:
        """Matrix P with T'_{phi(b)} = P T_b P^-1 for the isomorphism phi
        sending x to a root of this modulus in ``other``."""
        if other.p != self.p or other.n != self.n:
            raise ValueError("contexts must have the same p and n")
        f = self.modulus
        for k in range(1, other.order):
            r = other.from_int(k)
            if f_eval(f, r).is_zero():
                break
        else:  # pragma: no cover - irreducible of degree n always has a root
            raise AssertionError("no root found")
        cols = []
        cur = other.one()
        for _ in range(self.n):
            cols.append(cur.coords)
            cur = cur * r
        return FpMatrix(np.stack(cols, axis=1), self.p)


def f_eval(f: FpPoly, y: ExtElem) -> ExtElem:
    """Evaluate an F_p-polynomial at a field element."""
    acc = y.ctx.zero()
    for c in reversed(f.coeffs):
        acc = acc * y + y.ctx.scalar(c)
    return acc


class ExtElem:
    """Immutable element of an :class:`ExtFieldCtx`."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: ExtFieldCtx, coords: np.ndarray):
        coords = np.ascontiguousarray(coords, dtype=np.int64)
        coords.flags.writeable = False
        self.ctx = ctx
        self.coords = coords

    def _lift(self, other):
        if isinstance(other, ExtElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ModulusMismatch("elements from different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx.scalar(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ExtElem(self.ctx, (self.coords + other.coords) % self.ctx.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ExtElem(self.ctx, (self.coords - other.coords) % self.ctx.p)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return ExtElem(self.ctx, (-self.coords) % self.ctx.p)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ExtElem(self.ctx, self.ctx._mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> ExtElem:
        if self.is_zero():
            raise ZeroInversion("zero has no inverse in the field")
        return self ** (self.ctx.order - 2)

    def frobenius(self, k: int = 1) -> ExtElem:
        """self^(p^k)."""
        F = self.ctx.frobenius_matrix(k)
        return ExtElem(self.ctx, F.apply(self.coords))

    def is_zero(self) -> bool:
        return not self.coords.any()

    def degree(self) -> int:
        """[F_p(self) : F_p], the length of the Frobenius orbit."""
        cur = self
        for k in range(1, self.ctx.n + 1):
            cur = cur.frobenius(1)
            if cur == self:
                return k
        raise AssertionError("unreachable")  # pragma: no cover

    def in_subfield(self, d: int) -> bool:
        """Whether self lies in F_{p^d} (d must divide n for the usual meaning)."""
        return self.frobenius(d) == self

    def to_int(self) -> int:
        return int(self.ctx.to_index(self.coords))

    def tolist(self):
        return self.coords.tolist()

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.ctx.scalar(int(other))
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.ctx == other.ctx and bool(np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.coords.tobytes()))

    def __repr__(self):
        return f"ExtElem({self.coords.tolist()})"


def ext_add(a: ExtElem, b: ExtElem) -> ExtElem:
    return a + b


def ext_mul(a: ExtElem, b: ExtElem) -> ExtElem:
    return a * b


def ext_inv(a: ExtElem) -> ExtElem:
    return a.inverse()


def frobenius(a: ExtElem, k: int) -> ExtElem:
    return a.frobenius(k)


def mult_matrix(beta: ExtElem) -> FpMatrix:
    return beta.ctx.mult_matrix(beta)


def iter_coords(p, n):
    """All coordinate tuples in ``from_int`` order."""
    for t in itertools.product(range(p), repeat=n):
        yield t[::-1]
