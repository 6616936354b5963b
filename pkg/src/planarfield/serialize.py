"""JSON encodings for matrices, DO polynomials and decision results.

Schemas::

    matrix       {"p": 3, "n": 2, "rows": [[1, 0], [0, 1]]}
    matrix list  {"p": 3, "n": 2, "matrices": [[[1, 0], [0, 1]], ...]}
    DO poly      {"p": 3, "n": 3, "modulus": [1, 2, 0, 1],
                  "terms": [{"i": 0, "j": 1, "u": [1, 0, 0]}]}

Polynomials over F_p are coefficient lists, constant term first.  The DO
``modulus`` may be omitted, in which case the default modulus is used.
"""

from __future__ import annotations

import json

import numpy as np

from .extfield import ExtFieldCtx
from .fp import FpPoly, prime_modulus
from .linearized import DOPoly, LinearizedPoly
from .matrix import FpMatrix, RcfForm
from .quot import QuotSet, RcfMultiset, X2Certificate
from .recognition import FieldDecision


class SchemaError(ValueError):
    """Input does not match the documented JSON schema."""


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{what} must be an integer, got {v!r}")
    return v


def _header(obj):
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    for key in ("p", "n"):
        if key not in obj:
            raise SchemaError(f"missing field {key!r}")
    try:
        p = prime_modulus(_int(obj["p"], "p"))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    n = _int(obj["n"], "n")
    if n < 1:
        raise SchemaError("n must be positive")
    return p, n


def _rows(rows, p, n):
    if not isinstance(rows, list) or len(rows) != n:
        raise SchemaError(f"expected {n} rows")
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise SchemaError(f"expected rows of length {n}")
        for v in r:
            _int(v, "matrix entry")
    return FpMatrix(rows, p)


def _coeffs(v, what):
    if not isinstance(v, list):
        raise SchemaError(f"{what} must be a list of integers")
    return [_int(c, what) for c in v]


def poly_to_json(f: FpPoly):
    return list(f.coeffs)


def matrix_to_json(M: FpMatrix):
    return {"p": M.p, "n": M.n, "rows": M.tolist()}


def matrix_from_json(obj) -> FpMatrix:
    p, n = _header(obj)
    if "rows" not in obj:
        raise SchemaError("missing field 'rows'")
    return _rows(obj["rows"], p, n)


def matrices_to_json(mats, p, n):
    return {"p": p, "n": n, "matrices": [M.tolist() for M in mats]}


def matrices_from_json(obj) -> list[FpMatrix]:
    p, n = _header(obj)
    mats = obj.get("matrices")
    if not isinstance(mats, list):
        raise SchemaError("missing list field 'matrices'")
    return [_rows(m, p, n) for m in mats]


def dopoly_to_json(g: DOPoly):
    ctx = g.ctx
    return {
        "p": ctx.p,
        "n": ctx.n,
        "modulus": poly_to_json(ctx.modulus),
        "terms": [{"i": i, "j": j, "u": u.tolist()} for (i, j), u in g.terms.items()],
    }


def context_from_json(obj) -> ExtFieldCtx:
    p, n = _header(obj)
    modulus = None
    if obj.get("modulus") is not None:
        modulus = FpPoly(_coeffs(obj["modulus"], "modulus"), p)
    try:
        return ExtFieldCtx(p, n, modulus)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def element_from_json(ctx, v):
    c = _coeffs(v, "field element")
    if len(c) > ctx.n:
        raise SchemaError(f"field element has more than {ctx.n} coordinates")
    return ctx.elem(c)


def dopoly_from_json(obj) -> DOPoly:
    ctx = context_from_json(obj)
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise SchemaError("missing list field 'terms'")
    acc = {}
    for t in terms:
        if not isinstance(t, dict) or not {"i", "j", "u"} <= t.keys():
            raise SchemaError("each term needs 'i', 'j' and 'u'")
        i, j = _int(t["i"], "i"), _int(t["j"], "j")
        if i < 0 or j < 0:
            raise SchemaError("term indices must be non-negative")
        key = tuple(sorted((i % ctx.n, j % ctx.n)))
        u = element_from_json(ctx, t["u"])
        acc[key] = acc[key] + u if key in acc else u
    return DOPoly(ctx, acc)


def linearized_to_json(L: LinearizedPoly):
    return {"p": L.ctx.p, "n": L.ctx.n, "coeffs": L.u.tolist()}


# -- results ----------------------------------------------------------------

def witness_to_json(w):
    if w is None:
        return None
    if isinstance(w, FpMatrix):
        return {"kind": "zero_divisor", "element": w.tolist()}
    out = {"kind": w.kind}
    for name in getattr(w, "__dataclass_fields__", {}):
        v = getattr(w, name)
        if isinstance(v, FpMatrix):
            v = v.tolist()
        elif isinstance(v, FpPoly):
            v = poly_to_json(v)
        out[name] = v
    return out


def decision_to_json(d: FieldDecision):
    if d.is_field:
        out = {"field": True, "degree": d.degree, "generator": d.generator.tolist(),
               "min_poly": poly_to_json(d.min_poly)}
        if d.certificates:
            out["certificates"] = [list(c) for c in d.certificates]
        return out
    return {"field": False, "witness": witness_to_json(d.witness)}


def x2_to_json(c: X2Certificate):
    out = {"verdict": c.verdict, "stage": c.stage}
    if c.degree is not None:
        out["degree"] = c.degree
    if c.generator is not None:
        out["generator"] = c.generator.tolist()
        out["min_poly"] = poly_to_json(c.min_poly)
    if c.witness is not None:
        w = c.witness
        if isinstance(w, FieldDecision):
            w = decision_to_json(w)
        elif isinstance(w, int):
            w = {"kind": "singular_y", "rank": w}
        else:
            w = witness_to_json(w)
        out["witness"] = w
    return out


def quot_elements_to_json(q: QuotSet):
    return [M.tolist() for M in q]


def quot_elements_from_json(obj, p, n) -> QuotSet:
    mats = [_rows(m, p, n).a for m in obj]
    return QuotSet.from_arrays(np.array(mats, dtype=np.int64).reshape(-1, n, n), p, n)


def rcf_multiset_to_json(m: RcfMultiset, full=False):
    out = {"p": m.p, "n": m.n, "size": m.size, "classes": len(m.classes), "digest": m.digest}
    if full:
        out["class_list"] = [
            {"invariant_factors": [poly_to_json(f) for f in form.invariant_factors],
             "multiplicity": mult}
            for form, mult in m.classes
        ]
        out["text"] = m.text()
    return out


def rcf_multiset_from_json(obj) -> RcfMultiset:
    p, n = obj["p"], obj["n"]
    classes = tuple(
        (RcfForm(tuple(FpPoly(f, p) for f in c["invariant_factors"])), c["multiplicity"])
        for c in obj["class_list"]
    )
    return RcfMultiset(p, n, classes)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))
