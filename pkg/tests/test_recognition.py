import pytest

from planarfield.errors import DimensionMismatch, EmptyInput, ModulusMismatch, NotInvertible
from planarfield.extfield import ExtFieldCtx
from planarfield.matrix import FpMatrix, mat_inverse, minimal_polynomial, span_membership
from planarfield.oracle import brute_force_field_check
from planarfield.recognition import (NoGenerator, OutsideSpan, ReducibleMinPoly,
                                     compute_generator, factor_small_integer,
                                     finite_field_decide, reconstruct)


def element_of_degree(ctx, d, rng):
    """Random element whose Frobenius orbit has length exactly d (d | n)."""
    e = (ctx.order - 1) // (ctx.p ** d - 1)
    while True:
        x = ctx.random(rng, nonzero=True) ** e
        if x.degree() == d:
            return x


def in_algebra(c, M):
    mu = minimal_polynomial(c)
    powers = [FpMatrix.identity(c.n, c.p)]
    for _ in range(1, mu.degree):
        powers.append(powers[-1] @ c)
    return span_membership(M, powers) is not None


def test_factor_small_integer():
    assert factor_small_integer(1) == []
    assert factor_small_integer(360) == [(2, 3), (3, 2), (5, 1)]
    assert factor_small_integer(97) == [(97, 1)]


def test_identity_is_prime_field():
    d = finite_field_decide([FpMatrix.identity(3, 5)])
    assert d.is_field and d.degree == 1
    assert d.certificates == ((1,),)


def test_single_t_beta(f27, rng):
    b = f27.gen()
    d = finite_field_decide([f27.mult_matrix(b)])
    assert d and d.degree == 3 and d.min_poly == f27.modulus


def test_errors():
    with pytest.raises(EmptyInput):
        finite_field_decide([])
    with pytest.raises(NotInvertible):
        finite_field_decide([FpMatrix.diag([1, 0], 3)])
    with pytest.raises(ModulusMismatch):
        finite_field_decide([FpMatrix.identity(2, 3), FpMatrix.identity(2, 5)])
    with pytest.raises(DimensionMismatch):
        finite_field_decide([FpMatrix.identity(2, 3), FpMatrix.identity(3, 3)])
    with pytest.raises(NotInvertible):
        compute_generator(FpMatrix.identity(2, 3), FpMatrix.zero(2, 3))


def test_reducible_witness():
    d = finite_field_decide([FpMatrix.diag([1, 2], 3)])
    assert not d.is_field
    assert isinstance(d.witness, ReducibleMinPoly)
    assert d.witness.min_poly.degree == 2


def test_noncommuting_pair_outside_span():
    A = FpMatrix([[1, 1], [0, 1]], 3)
    B = FpMatrix([[1, 0], [1, 1]], 3)
    d = finite_field_decide([A, B])
    assert not d.is_field
    assert isinstance(d.witness, (ReducibleMinPoly, OutsideSpan, NoGenerator))


def test_compositum_of_coprime_degrees(rng):
    ctx = ExtFieldCtx(3, 6)
    a = ctx.mult_matrix(element_of_degree(ctx, 2, rng))
    b = ctx.mult_matrix(element_of_degree(ctx, 3, rng))
    c = compute_generator(a, b)
    assert c == a @ b
    assert minimal_polynomial(c).degree == 6


def test_compositum_via_traces(rng):
    # degrees 4 and 6 inside F_{3^12}: gcd 2 forces the trace search
    ctx = ExtFieldCtx(3, 12)
    a = ctx.mult_matrix(element_of_degree(ctx, 4, rng))
    b = ctx.mult_matrix(element_of_degree(ctx, 6, rng))
    c = compute_generator(a, b)
    assert c is not None
    assert minimal_polynomial(c).degree == 12
    assert in_algebra(c, a) and in_algebra(c, b)
    d = finite_field_decide([a, b])
    assert d.is_field and d.degree == 12


def test_nested_degrees_short_circuit(rng):
    ctx = ExtFieldCtx(3, 4)
    a = ctx.mult_matrix(element_of_degree(ctx, 2, rng))
    b = ctx.mult_matrix(element_of_degree(ctx, 4, rng))
    assert compute_generator(a, b) == b
    assert compute_generator(b, a) == b


def test_certificates_reconstruct(f27, rng):
    S = [f27.mult_matrix(f27.random(rng, nonzero=True)) for _ in range(3)]
    d = finite_field_decide(S)
    assert d.is_field
    for i, M in enumerate(S):
        assert reconstruct(d, i) == M


def test_conjugated_field_is_field(f27, rng):
    while True:
        P = FpMatrix(rng.integers(0, 3, size=(3, 3)), 3)
        if P.is_invertible():
            break
    S = [P @ f27.mult_matrix(f27.random(rng, nonzero=True)) @ mat_inverse(P) for _ in range(2)]
    assert finite_field_decide(S).is_field


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2)])
def test_random_sets_match_oracle(rng, p, n):
    for _ in range(25):
        S = []
        while len(S) < int(rng.integers(1, 4)):
            M = FpMatrix(rng.integers(0, p, size=(n, n)), p)
            if M.is_invertible():
                S.append(M)
        fast = finite_field_decide(S)
        slow = brute_force_field_check(S)
        assert (fast.is_field, fast.degree) == (slow.is_field, slow.degree)
