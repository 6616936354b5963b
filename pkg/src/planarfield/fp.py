"""Arithmetic in F_p and in F_p[x].

Polynomials are stored as tuples of residues, constant term first, with
trailing zeros stripped; the zero polynomial is the empty tuple.  The
module-level ``_p*`` helpers work on plain lists and are used directly by
hot loops (Smith normal form); :class:`FpPoly` wraps them.
"""

from __future__ import annotations

import itertools
import re
from functools import total_ordering

from .errors import DivisionByZeroPoly, ZeroInversion, ZeroPolynomial, ModulusMismatch

MAX_PRIME = 2**31 - 1


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_modulus(p) -> int:
    """Validate ``p`` as a word-sized prime and return it as ``int``."""
    p = int(p)
    if p > MAX_PRIME:
        raise ValueError(f"prime {p} exceeds the supported bound {MAX_PRIME}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def fp_inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInversion(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


# -- raw list helpers -------------------------------------------------------

def _strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, x in enumerate(b):
        r[i] = (r[i] + x) % p
    return _strip(r)


def _psub(a, b, p):
    r = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        r[i] = (r[i] - x) % p
    return _strip(r)


def _pscale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [(x * c) % p for x in a]


def _pmul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return _strip([v % p for v in r])


def _pdivmod(a, b, p):
    if not b:
        raise DivisionByZeroPoly("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = (r[k + db] * inv) % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return _strip(q), _strip(r[:db])


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pmonic(a, p):
    if not a:
        return []
    return _pscale(a, pow(a[-1], -1, p), p)


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return _pmonic(a, p)


def _ppowmod(base, e, mod, p):
    result = [1] if len(mod) > 1 else []
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), mod, p)
    return result


# -- polynomial type --------------------------------------------------------

@total_ordering
class FpPoly:
    """Immutable univariate polynomial over F_p."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(_strip([int(c) % p for c in coeffs])))

    def __setattr__(self, name, value):
        raise AttributeError("FpPoly is immutable")

    @classmethod
    def _raw(cls, coeffs, p):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        return obj

    @classmethod
    def x(cls, p):
        return cls._raw((0, 1), p)

    @classmethod
    def one(cls, p):
        return cls._raw((1,), p)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> FpPoly:
        return FpPoly._raw(_pmonic(self.coeffs, self.p), self.p)

    def _check(self, other):
        if isinstance(other, int):
            return FpPoly([other], self.p)
        if not isinstance(other, FpPoly):
            return NotImplemented
        if other.p != self.p:
            raise ModulusMismatch(f"polynomials over F_{self.p} and F_{other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FpPoly._raw(_padd(self.coeffs, other.coeffs, self.p), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FpPoly._raw(_psub(self.coeffs, other.coeffs, self.p), self.p)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return FpPoly._raw(_pscale(self.coeffs, -1, self.p), self.p)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FpPoly._raw(_pmul(self.coeffs, other.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        q, r = _pdivmod(self.coeffs, other.coeffs, self.p)
        return FpPoly._raw(q, self.p), FpPoly._raw(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        result = FpPoly.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __eq__(self, other):
        if isinstance(other, FpPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __lt__(self, other):
        if not isinstance(other, FpPoly):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"FpPoly({list(self.coeffs)}, p={self.p})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i and c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms)

    def to_text(self) -> str:
        return f"p:{self.p} coeffs:{','.join(str(c) for c in self.coeffs)}"

    @classmethod
    def from_text(cls, text: str) -> FpPoly:
        m = re.fullmatch(r"\s*p:(\d+)\s+coeffs:([\d,\s]*)", text)
        if not m:
            raise ValueError(f"malformed polynomial text: {text!r}")
        p = prime_modulus(int(m.group(1)))
        body = m.group(2).strip()
        coeffs = [int(c) for c in body.split(",") if c.strip()] if body else []
        return cls(coeffs, p)


def poly_gcd(f: FpPoly, g: FpPoly) -> FpPoly:
    """Monic gcd; ``gcd(0, 0)`` is the zero polynomial."""
    f._check(g)
    return FpPoly._raw(_pgcd(f.coeffs, g.coeffs, f.p), f.p)


def poly_lcm(f: FpPoly, g: FpPoly) -> FpPoly:
    if f.is_zero() or g.is_zero():
        return FpPoly._raw((), f.p)
    return ((f * g) // poly_gcd(f, g)).monic()


def poly_powmod(base: FpPoly, e: int, mod: FpPoly) -> FpPoly:
    """``base**e mod mod`` by repeated squaring."""
    base._check(mod)
    if mod.is_zero():
        raise DivisionByZeroPoly("modulus is zero")
    return FpPoly._raw(_ppowmod(base.coeffs, e, mod.coeffs, base.p), base.p)


def _prime_factors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _frobenius_iterates(f, p, count):
    """x^(p^i) mod f for i = 0..count."""
    xs = [_pmod([0, 1], f, p)]
    cur = xs[0]
    for _ in range(count):
        cur = _ppowmod(cur, p, f, p)
        xs.append(cur)
    return xs


def is_irreducible(f: FpPoly) -> bool:
    """Rabin test: x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1."""
    if f.is_zero():
        raise ZeroPolynomial("irreducibility of the zero polynomial")
    d = f.degree
    if d < 1:
        raise ZeroPolynomial("constant polynomial has no irreducibility")
    if d == 1:
        return True
    p = f.p
    mod = _pmonic(f.coeffs, p)
    xs = _frobenius_iterates(mod, p, d)
    x = _pmod([0, 1], mod, p)
    if _strip(list(xs[d])) != x:
        return False
    for q in _prime_factors(d):
        h = _psub(xs[d // q], [0, 1], p)
        if len(_pgcd(mod, h, p)) != 1:
            return False
    return True


def find_irreducible(p: int, n: int) -> FpPoly:
    """Smallest monic irreducible of degree ``n``.

    Candidates ``c_0 + c_1 x + ... + c_{n-1} x^{n-1} + x^n`` are scanned in
    increasing order of the integer ``c_0 + c_1 p + ... + c_{n-1} p^(n-1)``,
    i.e. lexicographically with ``c_{n-1}`` most significant.
    """
    p = prime_modulus(p)
    if n < 1:
        raise ValueError("degree must be positive")
    for tail in itertools.product(range(p), repeat=n):
        f = FpPoly._raw(tail[::-1] + (1,), p)
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")
