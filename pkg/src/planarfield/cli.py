"""Command-line front end.

Every subcommand reads one JSON document (a path, or ``-`` for stdin) and
prints one JSON document.  Exit codes: 0 positive verdict or success,
1 negative verdict, 2 malformed input, 3 size-guard refusal.
"""

from __future__ import annotations

import json
import sys

import click

from . import oracle, serialize
from .errors import PlanarFieldError, SizeGuard
from .linearized import is_planar, spread_basis
from .quot import decide_x2, quot_set, quot_upper_bound, rcf_multiset
from .recognition import compute_generator, finite_field_decide
from .twisted import verify_conjugation_identities, verify_twisted_structure

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

DEFAULT_ELEMENTS_LIMIT = 100_000
DEFAULT_RCF_LIMIT = 200_000
DEFAULT_PAIR_LIMIT = 10_000_000


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load(stream):
    try:
        return json.load(stream)
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_INPUT, f"invalid JSON: {exc}") from None


def _emit(obj):
    click.echo(serialize.dumps(obj))


def _guard_pairs(ctx, limit):
    reps = (ctx.order - 1) // (ctx.p - 1)
    if reps * (reps + 1) > limit:
        raise SizeGuard(reps * (reps + 1), limit)


def _run(fn, *args):
    try:
        code = fn(*args)
    except _Fail as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.code)
    except SizeGuard as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_GUARD)
    except (PlanarFieldError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    sys.exit(code or EXIT_OK)


input_arg = click.argument("source", type=click.File("r"), default="-")
oracle_opt = click.option("--oracle", "use_oracle", is_flag=True, hidden=True,
                          help="Cross-check against brute-force enumeration.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes for parallelisable steps.")
@click.pass_context
def main(ctx, jobs):
    """Finite-field recognition and planar DO polynomial tools."""
    ctx.obj = {"jobs": jobs}


@main.command("ff-decide")
@input_arg
@oracle_opt
def ff_decide(source, use_oracle):
    """Decide whether a matrix list generates a finite field."""
    def go():
        mats = serialize.matrices_from_json(_load(source))
        d = finite_field_decide(mats)
        out = serialize.decision_to_json(d)
        if use_oracle:
            o = oracle.brute_force_field_check(mats)
            out["oracle"] = {"field": o.is_field, "degree": o.degree,
                             "agree": (o.is_field, o.degree) == (d.is_field, d.degree)}
        _emit(out)
        return EXIT_OK if d.is_field else EXIT_NO
    _run(go)


@main.command()
@input_arg
def gen(source):
    """Generator of the compositum of two matrix fields."""
    def go():
        mats = serialize.matrices_from_json(_load(source))
        if len(mats) != 2:
            raise _Fail(EXIT_INPUT, f"gen expects exactly two matrices, got {len(mats)}")
        c = compute_generator(*mats)
        _emit({"generator": c.tolist()} if c is not None else "no_generator")
        return EXIT_OK if c is not None else EXIT_NO
    _run(go)


@main.command()
@input_arg
@oracle_opt
def planar(source, use_oracle):
    """Decide planarity of a DO polynomial."""
    def go():
        g = serialize.dopoly_from_json(_load(source))
        verdict = is_planar(g)
        if use_oracle:
            o = oracle.exhaustive_planarity(g)
            _emit({"planar": verdict, "oracle": o, "agree": o == verdict})
        else:
            _emit(verdict)
        return EXIT_OK if verdict else EXIT_NO
    _run(go)


@main.command()
@input_arg
def spread(source):
    """Print the matrices M_{g,x^i} for the polynomial basis."""
    def go():
        g = serialize.dopoly_from_json(_load(source))
        sb = spread_basis(g)
        _emit(serialize.matrices_to_json(list(sb), g.ctx.p, g.ctx.n))
    _run(go)


@main.command()
@input_arg
@click.option("--elements", is_flag=True, help="Also list the elements.")
@click.option("--limit", type=int, default=DEFAULT_ELEMENTS_LIMIT, show_default=True,
              help="Refuse --elements above this many matrices.")
@oracle_opt
def quot(source, elements, limit, use_oracle):
    """Size of Quot(D_g) with its a-priori bounds."""
    def go():
        g = serialize.dopoly_from_json(_load(source))
        ctx = g.ctx
        _guard_pairs(ctx, DEFAULT_PAIR_LIMIT)
        q = quot_set(g)
        out = {"size": len(q), "lower": ctx.order, "upper": quot_upper_bound(ctx.p, ctx.n)}
        if use_oracle:
            out["oracle_agrees"] = oracle.exhaustive_quot(g) == q
        if elements:
            if len(q) > limit:
                raise SizeGuard(len(q), limit)
            out["elements"] = serialize.quot_elements_to_json(q)
        _emit(out)
    _run(go)


@main.command()
@input_arg
@click.option("--full", is_flag=True, help="Include the sorted class list.")
@click.option("--limit", type=int, default=DEFAULT_RCF_LIMIT, show_default=True,
              help="Refuse when Quot has more elements than this.")
@click.pass_context
def invariant(cctx, source, full, limit):
    """rcf-multiset invariant of Quot(D_g)."""
    def go():
        g = serialize.dopoly_from_json(_load(source))
        _guard_pairs(g.ctx, DEFAULT_PAIR_LIMIT)
        q = quot_set(g)
        if len(q) > limit:
            raise SizeGuard(len(q), limit)
        if q.is_empty():
            _emit({"p": g.ctx.p, "n": g.ctx.n, "size": 0, "classes": 0, "digest": None})
            return EXIT_OK
        m = rcf_multiset(q, jobs=cctx.obj["jobs"])
        _emit(serialize.rcf_multiset_to_json(m, full=full))
    _run(go)


@main.command("x2-equiv")
@input_arg
def x2_equiv(source):
    """Decide linear equivalence to x^2."""
    def go():
        g = serialize.dopoly_from_json(_load(source))
        c = decide_x2(g)
        _emit(serialize.x2_to_json(c))
        return EXIT_OK if c.verdict else EXIT_NO
    _run(go)


def _monomial_k(g):
    if len(g.terms) != 1:
        return None
    (i, j), _ = next(iter(g.terms.items()))
    return j - i if i == 0 else None


@main.command("twisted-check")
@input_arg
@click.option("--alpha", required=True, help="Coordinates of alpha, e.g. 1,0,0.")
@click.option("--beta", required=True, help="Coordinates of beta.")
@click.option("--gamma", default=None, help="Coordinates of gamma (default: fixed random).")
@click.option("--k", "k", type=int, default=None,
              help="Twist exponent; inferred when g is x^(p^k+1).")
def twisted_check(source, alpha, beta, gamma, k):
    """Twisted-field structure and conjugation identities."""
    def parse(text):
        try:
            return [int(t) for t in text.split(",") if t.strip()]
        except ValueError:
            raise _Fail(EXIT_INPUT, f"bad coordinate list {text!r}") from None

    def go():
        g = serialize.dopoly_from_json(_load(source))
        ctx = g.ctx
        a = serialize.element_from_json(ctx, parse(alpha))
        b = serialize.element_from_json(ctx, parse(beta))
        c = serialize.element_from_json(ctx, parse(gamma)) if gamma else None
        _guard_pairs(ctx, DEFAULT_PAIR_LIMIT)
        ts = verify_twisted_structure(g, a, b)
        out = {"structure": {
            "ok": ts.ok, "irreducible": ts.irreducible, "degree": ts.degree,
            "expected_degree": ts.expected_degree, "span_size": ts.span_size,
            "span_in_quot": ts.span_in_quot,
            "failing_element": ts.failing_element.tolist() if ts.failing_element is not None else None,
        }}
        kk = k if k is not None else _monomial_k(g)
        ok = ts.ok
        if kk is None or kk % ctx.n == 0:
            out["identities"] = None
        else:
            r = verify_conjugation_identities(ctx, kk, a, b, gamma=c)
            out["identities"] = {
                "ok": r.ok, "k": kk, "phi_inverse": r.phi_inverse_matches,
                "composition": r.composition_identity, "conjugation": r.conjugation_identity,
                "scaling": r.scaling_identity, "subfield_degenerate": r.subfield_degenerate,
                "gamma": r.details["gamma"],
            }
            ok = ok and r.ok
        _emit(out)
        return EXIT_OK if ok else EXIT_NO
    _run(go)


if __name__ == "__main__":  # pragma: no cover
    main()
