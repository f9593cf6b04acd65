"""Canonical JSON shapes for fields, elements, forms, and outcomes.

Polynomials serialize as sparse term lists [[exponent vector, coeff]]
sorted by graded lex descending; fractions as {num, den}; extension
elements as coordinate lists over the level below.  Deterministic
ordering keeps serialized reports byte-stable for golden tests.
"""

from __future__ import annotations

from dataclasses import fields as dc_fields, is_dataclass

from .errors import DegreeCapExceeded
from .fields import (DEFAULT_LIMITS, ExtensionField, FieldElement,
                     RationalField, extend, rational_field)
from .forms import BilinearForm, QuadraticForm
from .frobenius import SquareSubspace
from .outcomes import Outcome
from .polys import Frac, MPoly, _grlex_key


def poly_obj(p: MPoly):
    terms = sorted(p.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
    return [[list(e), c] for e, c in terms]


def frac_obj(f: Frac):
    return {"num": poly_obj(f.num), "den": poly_obj(f.den)}


def rep_obj(field, rep):
    if isinstance(field, RationalField):
        return frac_obj(rep)
    return [rep_obj(field.below, comp.rep) for comp in rep]


def element_obj(x: FieldElement):
    return {"repr": repr(x), "rep": rep_obj(x.field, x.rep)}


def field_obj(field):
    chain = field.chain()
    bottom = chain[0]
    steps = []
    for lvl in chain[1:]:
        steps.append({
            "var": lvl.name,
            "kind": lvl.kind,
            "coeffs": [rep_obj(lvl.below, c.rep) for c in lvl.minpoly],
            "certificate": lvl.certificate,
        })
    return {"p": bottom.gf.p, "k": bottom.gf.k,
            "modulus": list(bottom.gf.modulus),
            "names": list(bottom.names), "steps": steps}


def rep_from_obj(field, obj):
    if isinstance(field, RationalField):
        ring = field.ring

        def poly(terms):
            return MPoly(ring, {tuple(e): c for e, c in terms if c})

        return Frac(poly(obj["num"]), poly(obj["den"]))
    comps = [FieldElement(field.below, rep_from_obj(field.below, o)) for o in obj]
    return tuple(comps)


def element_from_obj(field, obj):
    return FieldElement(field, rep_from_obj(field, obj["rep"]))


def build_tower(descriptor, limits=DEFAULT_LIMITS, rng=None):
    """Construct a tower from its serialized descriptor.

    Steps carrying certificate {"kind": "trusted"} skip re-certification;
    everything else goes through the usual irreducibility checks.
    """
    field = rational_field(descriptor.get("p", 2), descriptor.get("k", 1),
                           tuple(descriptor.get("names", ())),
                           modulus=descriptor.get("modulus"), limits=limits)
    for step in descriptor.get("steps", []):
        coeffs = [FieldElement(field, rep_from_obj(field, o))
                  for o in step["coeffs"]]
        trusted = (step.get("certificate") or {}).get("kind") == "trusted"
        field = extend(field, step["var"], coeffs, trusted=trusted,
                       rng=rng, limits=limits)
    return field


def form_obj(form):
    if isinstance(form, BilinearForm):
        return {"kind": "bilinear", "dim": form.dim,
                "gram": [[element_obj(c) for c in row] for row in form.gram]}
    return {"kind": "quadratic", "dim": form.dim,
            "coeffs": [[element_obj(c) for c in row] for row in form.coeffs]}


def subspace_obj(S: SquareSubspace):
    field = S.field
    return {"pbasis": [repr(b) for b in field.pbasis()],
            "dim": S.dim,
            "rows": [[element_obj(c) for c in row] for row in S.rows]}


def generic_obj(value):
    """Best-effort canonical JSON for outcomes, certificates, reports."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, FieldElement):
        return element_obj(value)
    if isinstance(value, (BilinearForm, QuadraticForm)):
        return form_obj(value)
    if isinstance(value, SquareSubspace):
        return subspace_obj(value)
    if isinstance(value, Outcome):
        return {"verdict": value.verdict, "note": value.note,
                "certificate": generic_obj(value.certificate)}
    if is_dataclass(value):
        out = {"kind": getattr(value, "kind", type(value).__name__)}
        for f in dc_fields(value):
            if f.name == "kind":
                continue
            out[f.name] = generic_obj(getattr(value, f.name))
        return out
    if isinstance(value, dict):
        return {str(k): generic_obj(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [generic_obj(v) for v in value]
    return repr(value)
