"""Linearized and Dembowski-Ostrom polynomials over F_{p^n}.

Everything is reduced modulo x^(p^n) - x, so Frobenius indices live in
Z/n.  A linearized polynomial ``sum u_i x^(p^i)`` is stored as an (n, n)
array whose row i holds the coordinates of ``u_i``; its matrix is
``sum_i T_{u_i} F^i`` with F the Frobenius matrix of the context.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import EvenCharacteristic, NotAPermutation
from .extfield import ExtElem, ExtFieldCtx
from .matrix import FpMatrix


class LinearizedPoly:
    """``sum_{i<n} u_i x^(p^i)`` over a fixed context."""

    __slots__ = ("ctx", "u")

    def __init__(self, ctx: ExtFieldCtx, u):
        u = np.array(u, dtype=np.int64).reshape(ctx.n, ctx.n) % ctx.p
        u.flags.writeable = False
        self.ctx = ctx
        self.u = u

    @classmethod
    def from_coeffs(cls, ctx, coeffs):
        """From a sequence of :class:`ExtElem` (term i multiplies x^(p^i));
        indices beyond n-1 wrap around."""
        u = np.zeros((ctx.n, ctx.n), dtype=np.int64)
        for i, c in enumerate(coeffs):
            u[i % ctx.n] = (u[i % ctx.n] + c.coords) % ctx.p
        return cls(ctx, u)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, np.zeros((ctx.n, ctx.n), dtype=np.int64))

    @classmethod
    def monomial(cls, ctx, i, coeff=None):
        """``coeff * x^(p^i)``."""
        coeff = ctx.one() if coeff is None else coeff
        u = np.zeros((ctx.n, ctx.n), dtype=np.int64)
        u[i % ctx.n] = coeff.coords
        return cls(ctx, u)

    @classmethod
    def identity(cls, ctx):
        return cls.monomial(ctx, 0)

    @classmethod
    def scaling(cls, beta: ExtElem):
        """``beta * x``."""
        return cls.monomial(beta.ctx, 0, beta)

    def coeff(self, i) -> ExtElem:
        return self.ctx.elem(self.u[i % self.ctx.n])

    def coeffs(self):
        return [self.coeff(i) for i in range(self.ctx.n)]

    def is_zero(self):
        return not self.u.any()

    def __add__(self, other):
        return LinearizedPoly(self.ctx, (self.u + other.u) % self.ctx.p)

    def __sub__(self, other):
        return LinearizedPoly(self.ctx, (self.u - other.u) % self.ctx.p)

    def __neg__(self):
        return LinearizedPoly(self.ctx, (-self.u) % self.ctx.p)

    def scale(self, c: ExtElem) -> LinearizedPoly:
        """``c * L(x)``."""
        ctx = self.ctx
        return LinearizedPoly(ctx, ctx.mul_many(self.u, c.coords[None, :]))

    def __matmul__(self, other):
        return symbolic_product(self, other)

    def __call__(self, y: ExtElem) -> ExtElem:
        return self.ctx.elem(self.evaluate_many(y.coords[None, :])[0])

    def evaluate_many(self, Y) -> np.ndarray:
        """L(y) for each row of an (N, n) coordinate array, by evaluation."""
        ctx = self.ctx
        Y = np.asarray(Y, dtype=np.int64)
        acc = np.zeros_like(Y)
        for i in range(ctx.n):
            if not self.u[i].any():
                continue
            acc = (acc + ctx.mul_many(ctx.frobenius_many(Y, i), self.u[i][None, :])) % ctx.p
        return acc

    def __eq__(self, other):
        return (isinstance(other, LinearizedPoly) and self.ctx == other.ctx
                and bool(np.array_equal(self.u, other.u)))

    def __hash__(self):
        return hash(self.u.tobytes())

    def __repr__(self):
        terms = [f"{self.u[i].tolist()}*x^(p^{i})" for i in range(self.ctx.n) if self.u[i].any()]
        return "LinearizedPoly(" + (" + ".join(terms) or "0") + ")"


def symbolic_product(L: LinearizedPoly, M: LinearizedPoly) -> LinearizedPoly:
    """Composition ``L(M(x))`` reduced mod x^(p^n) - x.

    The coefficient of x^(p^s) is ``sum_{i+j = s mod n} u_i * v_j^(p^i)``.
    """
    ctx = L.ctx
    n, p = ctx.n, ctx.p
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        if not L.u[i].any():
            continue
        vi = ctx.frobenius_many(M.u, i)  # row j = v_j^(p^i)
        terms = ctx.mul_many(vi, L.u[i][None, :])
        out = (out + np.roll(terms, i, axis=0)) % p
    return LinearizedPoly(ctx, out)


def matrix_of_linearized(L: LinearizedPoly) -> FpMatrix:
    """Matrix whose column j is the coordinate vector of L(x^j)."""
    ctx = L.ctx
    n, p = ctx.n, ctx.p
    acc = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        if not L.u[i].any():
            continue
        T = ctx.mult_matrix(ctx.elem(L.u[i]))
        acc = (acc + kernels.matmul(T.a, ctx.frobenius_matrix(i).a, p)) % p
    return FpMatrix._wrap(acc, p)


def matrix_by_evaluation(L: LinearizedPoly) -> FpMatrix:
    """Same matrix as :func:`matrix_of_linearized`, built by evaluating L on
    the basis directly."""
    cols = L.evaluate_many(np.eye(L.ctx.n, dtype=np.int64))
    return FpMatrix(cols.T, L.ctx.p)


def linearized_from_matrix(ctx: ExtFieldCtx, M: FpMatrix) -> LinearizedPoly:
    """Inverse of :func:`matrix_of_linearized`.

    Solves ``sum_i T_{u_i} F^i = M`` for the coefficients; the map is a
    bijection between linearized polynomials mod x^(p^n) - x and matrices.
    """
    n, p = ctx.n, ctx.p
    cols = []
    for i in range(n):
        Fi = ctx.frobenius_matrix(i).a
        for t in range(n):
            e = np.zeros(n, dtype=np.int64)
            e[t] = 1
            T = ctx.mult_matrix(ctx.elem(e)).a
            cols.append(kernels.matmul(T, Fi, p).reshape(-1))
    A = np.stack(cols + [M.a.reshape(-1)], axis=1)
    R, pivots, rank = kernels.rref(A, p)
    sol = np.zeros(n * n, dtype=np.int64)
    for row in range(rank):
        c = int(pivots[row])
        if c == n * n:
            raise ValueError("matrix not representable")  # pragma: no cover
        sol[c] = R[row, n * n]
    return LinearizedPoly(ctx, sol.reshape(n, n))


class DOPoly:
    """Dembowski-Ostrom polynomial ``sum_{i<=j} u_{i,j} x^(p^i + p^j)``.

    Keys are normalised to ``0 <= i <= j < n``; zero coefficients are
    dropped.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: ExtFieldCtx, terms=None):
        acc = {}
        for (i, j), u in (terms or {}).items():
            i, j = sorted((i % ctx.n, j % ctx.n))
            if not isinstance(u, ExtElem):
                u = ctx.elem(u)
            acc[(i, j)] = acc[(i, j)] + u if (i, j) in acc else u
        self.ctx = ctx
        self.terms = {k: v for k, v in sorted(acc.items()) if not v.is_zero()}

    @classmethod
    def x_squared(cls, ctx):
        return cls(ctx, {(0, 0): ctx.one()})

    @classmethod
    def twisted(cls, ctx, k):
        """``x^(p^k + 1)``; k = 0 mod n gives x^2."""
        return cls(ctx, {(0, k): ctx.one()})

    def __call__(self, y: ExtElem) -> ExtElem:
        return self.ctx.elem(self.evaluate_many(y.coords[None, :])[0])

    def evaluate_many(self, Y) -> np.ndarray:
        ctx = self.ctx
        Y = np.asarray(Y, dtype=np.int64)
        frob = {}
        acc = np.zeros_like(Y)
        for (i, j), u in self.terms.items():
            for k in (i, j):
                if k not in frob:
                    frob[k] = ctx.frobenius_many(Y, k)
            prod = ctx.mul_many(frob[i], frob[j])
            acc = (acc + ctx.mul_many(prod, u.coords[None, :])) % ctx.p
        return acc

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return DOPoly(self.ctx, t)

    def __eq__(self, other):
        return isinstance(other, DOPoly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(tuple((k, v) for k, v in self.terms.items()))

    def __repr__(self):
        body = " + ".join(f"{v.tolist()}*x^(p^{i}+p^{j})" for (i, j), v in self.terms.items())
        return f"DOPoly({body or '0'})"


def linearized_derivative(g: DOPoly, alpha: ExtElem) -> LinearizedPoly:
    """``g(x + alpha) - g(x) - g(alpha)``.

    ``u x^(p^i + p^j)`` contributes ``u alpha^(p^j)`` to the x^(p^i)
    coefficient and ``u alpha^(p^i)`` to the x^(p^j) coefficient.
    """
    ctx = g.ctx
    u = np.zeros((ctx.n, ctx.n), dtype=np.int64)
    for (i, j), c in g.terms.items():
        u[i] = (u[i] + (c * alpha.frobenius(j)).coords) % ctx.p
        u[j] = (u[j] + (c * alpha.frobenius(i)).coords) % ctx.p
    return LinearizedPoly(ctx, u)


def derivative_matrix(g: DOPoly, alpha: ExtElem) -> FpMatrix:
    """M_{g,alpha}."""
    return matrix_of_linearized(linearized_derivative(g, alpha))


class SpreadBasis:
    """The matrices M_{g, x^i} for the context basis; M_{g,alpha} is the
    combination with alpha's coordinates."""

    __slots__ = ("g", "ctx", "mats")

    def __init__(self, g: DOPoly, mats):
        self.g = g
        self.ctx = g.ctx
        mats = np.array(mats, dtype=np.int64)
        mats.flags.writeable = False
        self.mats = mats

    def __getitem__(self, i) -> FpMatrix:
        return FpMatrix._wrap(self.mats[i], self.ctx.p)

    def __len__(self):
        return self.ctx.n

    def __iter__(self):
        return (self[i] for i in range(self.ctx.n))

    @property
    def direction_basis(self):
        return [self.ctx.elem(row) for row in np.eye(self.ctx.n, dtype=np.int64)]

    def matrix_at(self, alpha: ExtElem) -> FpMatrix:
        return FpMatrix._wrap(self.matrices_for(alpha.coords[None, :])[0], self.ctx.p)

    def matrices_for(self, coords) -> np.ndarray:
        """(N, n, n) stack of M_{g,alpha} for each coordinate row."""
        n, p = self.ctx.n, self.ctx.p
        coords = np.asarray(coords, dtype=np.int64)
        flat = kernels.matmul(coords, self.mats.reshape(n, n * n), p)
        return flat.reshape(-1, n, n)


def spread_basis(g: DOPoly) -> SpreadBasis:
    ctx = g.ctx
    mats = []
    for i in range(ctx.n):
        e = np.zeros(ctx.n, dtype=np.int64)
        e[i] = 1
        mats.append(derivative_matrix(g, ctx.elem(e)).a)
    return SpreadBasis(g, np.stack(mats))


def _require_odd(ctx):
    if ctx.p == 2:
        raise EvenCharacteristic("planarity needs odd characteristic")


def is_planar(g: DOPoly) -> bool:
    """Every M_{g,alpha}, alpha != 0, is invertible.

    One alpha per F_p^*-line suffices since M_{g,c alpha} = c M_{g,alpha}.
    """
    _require_odd(g.ctx)
    sb = spread_basis(g)
    D = sb.matrices_for(g.ctx.projective_coords())
    _, ok = kernels.batch_inverse(D, g.ctx.p)
    return bool(ok.all())


def apply_linear_equivalence(g: DOPoly, L: LinearizedPoly, L2: LinearizedPoly) -> DOPoly:
    """``L2(g(L(x)))`` mod x^(p^n) - x, in normalised DO form."""
    ctx = g.ctx
    n = ctx.n
    for name, T in (("L", L), ("L'", L2)):
        if not matrix_of_linearized(T).is_invertible():
            raise NotAPermutation(f"{name} is not a permutation polynomial")
    Lc = L.coeffs()
    # g(L(x)): u_ij * L(x)^(p^i) * L(x)^(p^j)
    inner = {}
    for (i, j), u in g.terms.items():
        li = [c.frobenius(i) for c in Lc]  # coefficient of x^(p^(a+i))
        lj = li if i == j else [c.frobenius(j) for c in Lc]
        for a in range(n):
            if li[a].is_zero():
                continue
            ua = u * li[a]
            for b in range(n):
                if lj[b].is_zero():
                    continue
                key = ((a + i) % n, (b + j) % n)
                term = ua * lj[b]
                inner[key] = inner[key] + term if key in inner else term
    h = DOPoly(ctx, inner)
    # L2(h(x)) = sum_c l'_c * h(x)^(p^c)
    outer = {}
    for c, lc in enumerate(L2.coeffs()):
        if lc.is_zero():
            continue
        for (s, t), v in h.terms.items():
            key = ((s + c) % n, (t + c) % n)
            term = lc * v.frobenius(c)
            outer[key] = outer[key] + term if key in outer else term
    return DOPoly(ctx, outer)


def presemifield_mult(g: DOPoly, a: ExtElem, b: ExtElem) -> ExtElem:
    """``a * b := Delta_{g,a}(b)``."""
    return linearized_derivative(g, a)(b)


def random_linearized(ctx, rng) -> LinearizedPoly:
    return LinearizedPoly(ctx, rng.integers(0, ctx.p, size=(ctx.n, ctx.n)))


def random_permutation(ctx, rng) -> LinearizedPoly:
    """Uniform-ish random linearized permutation polynomial (rejection)."""
    while True:
        L = random_linearized(ctx, rng)
        if matrix_of_linearized(L).is_invertible():
            return L


def random_do(ctx, rng, n_terms=None) -> DOPoly:
    n = ctx.n
    keys = [(i, j) for i in range(n) for j in range(i, n)]
    if n_terms is None:
        n_terms = int(rng.integers(1, len(keys) + 1))
    chosen = rng.choice(len(keys), size=min(n_terms, len(keys)), replace=False)
    return DOPoly(ctx, {keys[c]: ctx.random(rng, nonzero=True) for c in chosen})
