import numpy as np
import pytest

from planarfield.errors import ModulusMismatch, ZeroInversion
from planarfield.extfield import ExtFieldCtx, f_eval, iter_coords
from planarfield.fp import FpPoly
from planarfield.matrix import FpMatrix, mat_inverse
from planarfield.recognition import finite_field_decide


def test_context_validation():
    with pytest.raises(ValueError):
        ExtFieldCtx(3, 2, FpPoly([1, 0, 1], 5))
    with pytest.raises(ValueError):
        ExtFieldCtx(5, 2, FpPoly([1, 0, 1], 5))  # x^2 + 1 splits mod 5
    with pytest.raises(ValueError):
        ExtFieldCtx(3, 0)


def test_field_axioms(f27, rng):
    one = f27.one()
    for _ in range(30):
        a, b, c = (f27.random(rng) for _ in range(3))
        assert a * one == a
        assert a * (b + c) == a * b + a * c
        assert a.frobenius(3) == a
        assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
        if not b.is_zero():
            assert b * b.inverse() == one
    with pytest.raises(ZeroInversion):
        f27.zero().inverse()


def test_frobenius_is_pth_power(f27, rng):
    for _ in range(10):
        a = f27.random(rng)
        assert a.frobenius(1) == a ** 3
        assert a.frobenius(2) == a ** 9


def test_multiplicative_group_order(f27):
    g = f27.gen()
    assert g ** 26 == f27.one()
    assert f_eval(f27.modulus, g).is_zero()


def test_mult_matrix(f27, rng):
    assert f27.mult_matrix(f27.one()) == FpMatrix.identity(3, 3)
    assert f27.mult_matrix(f27.zero()).is_zero()
    assert f27.mult_matrix(f27.gen()) == f27.x_matrix()
    for _ in range(10):
        b, c = f27.random(rng), f27.random(rng)
        assert f27.mult_matrix(b) @ f27.mult_matrix(c) == f27.mult_matrix(b * c)
        assert FpMatrix(f27.mult_matrix(b).a, 3).apply(c.coords).tolist() == (b * c).tolist()


def test_elements_enumeration(f9):
    elems = list(f9.elements())
    assert len(set(elems)) == 9
    assert [e.to_int() for e in elems] == list(range(9))
    assert [tuple(c) for c in f9.all_coords()] == list(iter_coords(3, 2))


def test_projective_representatives(f27):
    reps = f27.projective_coords()
    assert len(reps) == (27 - 1) // 2
    lines = set()
    for r in reps:
        line = frozenset(tuple((c * r) % 3) for c in (1, 2))
        lines.add(line)
        assert r[np.nonzero(r)[0][-1]] == 1
    assert len(lines) == len(reps)


def test_degree_and_subfields():
    ctx = ExtFieldCtx(3, 4)
    assert ctx.one().degree() == 1
    assert ctx.gen().degree() == 4
    squares = {(ctx.gen() ** 10 * k).degree() for k in range(1, 3)}
    assert squares == {2}  # x^10 generates F_9^* inside F_81^*
    assert (ctx.gen() ** 10).in_subfield(2)


def test_mixed_fields_rejected(f9, f27):
    with pytest.raises(ModulusMismatch):
        f9.one() + f27.one()


def test_tbeta_generates_field(f27, rng):
    for _ in range(5):
        b = f27.random(rng, nonzero=True)
        d = finite_field_decide([f27.mult_matrix(b)])
        assert d.is_field and d.degree == b.degree()


def test_conjugate_algebras_across_moduli(rng):
    # two moduli of the same degree give conjugate multiplication algebras
    a = ExtFieldCtx(3, 3)
    b = ExtFieldCtx(3, 3, FpPoly([2, 2, 0, 1], 3))
    P = a.basis_change(b)
    Pinv = mat_inverse(P)
    for k in range(1, 27):
        e = a.from_int(k)
        image = b.zero()
        for i, c in enumerate(e.coords):
            image = image + b.elem(P.a[:, i]) * int(c)
        assert P @ a.mult_matrix(e) @ Pinv == b.mult_matrix(image)
