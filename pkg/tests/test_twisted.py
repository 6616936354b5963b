import pytest

from planarfield.errors import NotInvertible, NotInvertibleParameters, SizeGuard, ZeroDirection
from planarfield.extfield import ExtFieldCtx
from planarfield.linearized import DOPoly, LinearizedPoly, matrix_of_linearized
from planarfield.matrix import mat_inverse
from planarfield.quot import quot_set
from planarfield.twisted import (phi, phi_inverse, verify_conjugation_identities,
                                 verify_twisted_structure)

F243 = ExtFieldCtx(3, 5)


def test_phi_is_derivative_of_monomial(f27, rng):
    from planarfield.linearized import linearized_derivative

    a = f27.random(rng)
    assert phi(a, 1) == linearized_derivative(DOPoly.twisted(f27, 1), a)


@pytest.mark.parametrize("ctx,k", [(ExtFieldCtx(3, 3), 1), (ExtFieldCtx(3, 3), 2),
                                   (F243, 1), (F243, 2), (ExtFieldCtx(5, 3), 1)])
def test_phi_inverse_matches_gauss(ctx, k, rng):
    for _ in range(10):
        a = ctx.random(rng, nonzero=True)
        inv = matrix_of_linearized(phi_inverse(a, k))
        assert inv == mat_inverse(matrix_of_linearized(phi(a, k)))
        b = ctx.random(rng)
        assert phi_inverse(a, k)(phi(a, k)(b)) == b


def test_phi_inverse_trivial_twist(f27, rng):
    a = f27.random(rng, nonzero=True)
    assert phi_inverse(a, 0) == LinearizedPoly.scaling((a * 2).inverse())
    assert phi_inverse(a, 3) == phi_inverse(a, 0)


def test_phi_inverse_errors(f27):
    with pytest.raises(ZeroDirection):
        phi_inverse(f27.zero(), 1)
    with pytest.raises(NotInvertibleParameters):
        phi_inverse(ExtFieldCtx(3, 4).one(), 1)


def test_twisted_structure_examples(f27):
    g = DOPoly.twisted(f27, 1)
    q = quot_set(g)
    one = f27.one()
    r = verify_twisted_structure(g, one, one, quot=q)
    assert r.ok and r.degree == 1
    r = verify_twisted_structure(g, one, f27.gen(), quot=q)
    assert r.ok and r.degree == 3 and r.span_size == 27
    a = f27.gen() + 1
    r = verify_twisted_structure(g, a, a * 2, quot=q)
    assert r.ok and r.degree == 1


def test_twisted_structure_on_x_squared(f9, rng):
    g = DOPoly.x_squared(f9)
    for _ in range(5):
        a, b = f9.random(rng, nonzero=True), f9.random(rng)
        assert verify_twisted_structure(g, a, b).ok


def test_twisted_structure_detects_missing_member(f27):
    g = DOPoly.twisted(f27, 1)
    q = quot_set(DOPoly.x_squared(f27))
    r = verify_twisted_structure(g, f27.one(), f27.gen(), quot=q)
    assert not r.ok and r.failing_element is not None


def test_twisted_structure_errors(f27):
    g = DOPoly.twisted(f27, 1)
    with pytest.raises(ZeroDirection):
        verify_twisted_structure(g, f27.zero(), f27.one())
    with pytest.raises(NotInvertible):
        verify_twisted_structure(DOPoly(f27, {}), f27.one(), f27.one())
    with pytest.raises(SizeGuard):
        verify_twisted_structure(g, f27.one(), f27.gen(), limit=10)


@pytest.mark.parametrize("ctx,k", [(ExtFieldCtx(3, 3), 1), (ExtFieldCtx(3, 3), 2),
                                   (F243, 1), (F243, 3)])
def test_conjugation_identities_random(ctx, k, rng):
    for _ in range(10):
        a, b = ctx.random(rng, nonzero=True), ctx.random(rng)
        r = verify_conjugation_identities(ctx, k, a, b, rng=rng)
        assert r.ok, r


def test_conjugation_identity_edge_cases(f27, rng):
    a = f27.random(rng, nonzero=True)
    r = verify_conjugation_identities(f27, 1, a, f27.zero())
    assert r.ok and r.subfield_degenerate
    r = verify_conjugation_identities(f27, 1, a, a)
    assert r.ok and r.subfield_degenerate
    b = a * f27.gen()
    r = verify_conjugation_identities(f27, 1, a, b)
    assert r.ok and not r.subfield_degenerate


def test_subfield_case_in_composite_degree(rng):
    # n = 9, k = 3: gcd 3, so alpha^-1 beta in F_27 is the degenerate branch
    ctx = ExtFieldCtx(3, 9)
    e = (ctx.order - 1) // 26
    a = ctx.random(rng, nonzero=True)
    c = ctx.random(rng, nonzero=True) ** e
    r = verify_conjugation_identities(ctx, 3, a, a * c, rng=rng)
    assert r.ok and r.subfield_degenerate
    r = verify_conjugation_identities(ctx, 3, a, a * ctx.gen(), rng=rng)
    assert r.ok and not r.subfield_degenerate


def test_conjugation_identities_errors(f27):
    with pytest.raises(ZeroDirection):
        verify_conjugation_identities(f27, 1, f27.zero(), f27.one())
    with pytest.raises(NotInvertibleParameters):
        verify_conjugation_identities(ExtFieldCtx(3, 2), 1, ExtFieldCtx(3, 2).one(),
                                      ExtFieldCtx(3, 2).one())
