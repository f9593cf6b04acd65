"""Independent re-validation of yes/no certificates.

The checker recomputes every claim from the certificate payload with
direct field arithmetic and its own small elimination routine (run on a
shuffled row order), without calling back into the decision procedures.
Chain certificates name the decision rule and are validated by
recursively validating every component.
"""

from __future__ import annotations

import random

from .gf import poly_deg, poly_divmod
from .outcomes import (ApRoot, Chain, Exhausted, IndependenceWitness,
                       InvariantMismatch, IsometryWitness, NonzeroTrace,
                       OddValuation, Outcome, PowerCombination,
                       RankObstruction, SubspaceEquality, WittSplit)


def _shuffled_rank(field, elements, rng):
    """Rank of the p-th-root coordinate rows, by a local elimination."""
    rows = [field.power_coords(x) for x in elements]
    rng.shuffle(rows)
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        piv = None
        for i in range(rank, len(rows)):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _mat_is_invertible(field, T):
    n = len(T)
    M = [list(r) for r in T]
    for c in range(n):
        piv = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if piv is None:
            return False
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inv()
        for i in range(c + 1, n):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return True


def _quad_apply(field, coeffs, T):
    """Coefficient matrix of x -> q(T x) for upper-triangular coeffs."""
    n = len(coeffs)
    Tt = [[T[i][j] for i in range(n)] for j in range(n)]
    M = [[sum((Tt[i][k] * coeffs[k][j] for k in range(n)), field.zero_elt())
          for j in range(n)] for i in range(n)]
    N = [[sum((M[i][k] * T[k][j] for k in range(n)), field.zero_elt())
          for j in range(n)] for i in range(n)]
    out = [[field.zero_elt()] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = N[i][i]
        for j in range(i + 1, n):
            out[i][j] = N[i][j] + N[j][i]
    return out


def _bil_apply(field, gram, T):
    n = len(gram)
    Tt = [[T[i][j] for i in range(n)] for j in range(n)]
    M = [[sum((Tt[i][k] * gram[k][j] for k in range(n)), field.zero_elt())
          for j in range(n)] for i in range(n)]
    return [[sum((M[i][k] * T[k][j] for k in range(n)), field.zero_elt())
             for j in range(n)] for i in range(n)]


def _field_of(cert):
    for attr in ("target", "c", "w"):
        v = getattr(cert, attr, None)
        if v is not None and hasattr(v, "field"):
            return v.field
    if getattr(cert, "elements", None):
        return cert.elements[0].field
    if getattr(cert, "gens", None):
        return cert.gens[0].field
    if getattr(cert, "element", None) is not None:
        return cert.element.field
    return None


def verify_certificate(cert, rng=None) -> bool:
    """True iff the certificate's claims re-validate."""
    rng = rng or random.Random(0xA0D17)
    if cert is None:
        return False
    if isinstance(cert, Outcome):
        return verify_outcome(cert, rng)
    if isinstance(cert, ApRoot):
        return cert.w * cert.w + cert.w == cert.c
    if isinstance(cert, PowerCombination):
        field = cert.target.field
        acc = field.zero_elt()
        for s, g in zip(cert.coeffs, cert.gens):
            acc = acc + s ** field.p * g
        return acc == cert.target
    if isinstance(cert, IndependenceWitness):
        if not cert.elements:
            return True
        field = cert.elements[0].field
        return _shuffled_rank(field, list(cert.elements), rng) == len(cert.elements)
    if isinstance(cert, RankObstruction):
        field = cert.element.field
        base = [g for g in cert.gens]
        r0 = _shuffled_rank(field, base, rng) if base else 0
        r1 = _shuffled_rank(field, base + [cert.element], rng)
        return r1 == r0 + 1
    if isinstance(cert, SubspaceEquality):
        return all(verify_certificate(c, rng) for c in
                   list(cert.left_in_right) + list(cert.right_in_left))
    if isinstance(cert, IsometryWitness):
        T = [list(r) for r in cert.transform]
        if not T:
            return cert.src == cert.dst
        field = T[0][0].field
        if not _mat_is_invertible(field, T):
            return False
        if cert.form_kind == "bilinear":
            got = _bil_apply(field, [list(r) for r in cert.src], T)
        else:
            got = _quad_apply(field, [list(r) for r in cert.src], T)
        want = [list(r) for r in cert.dst]
        return all(a == b for r1, r2 in zip(got, want) for a, b in zip(r1, r2))
    if isinstance(cert, WittSplit):
        T = [list(r) for r in cert.transform]
        n = len(T)
        if n == 0:
            return len(cert.plane_scalars) == 0 and len(cert.anisotropic_gram) == 0
        field = T[0][0].field
        if not _mat_is_invertible(field, T):
            return False
        got = _bil_apply(field, [list(r) for r in cert.gram], T)
        m = len(cert.plane_scalars)
        for k, a in enumerate(cert.plane_scalars):
            i = 2 * k
            if not (got[i][i].is_zero() and got[i][i + 1] == field.one_elt()
                    and got[i + 1][i] == field.one_elt() and got[i + 1][i + 1] == a):
                return False
        for i in range(n):
            for j in range(n):
                in_same_plane = i < 2 * m and j < 2 * m and i // 2 == j // 2
                in_tail = i >= 2 * m and j >= 2 * m
                if in_same_plane or in_tail:
                    continue
                if not got[i][j].is_zero():
                    return False
        an = [row[2 * m:] for row in got[2 * m:]]
        want = [list(r) for r in cert.anisotropic_gram]
        if not all(a == b for r1, r2 in zip(an, want) for a, b in zip(r1, r2)):
            return False
        if an:
            diag = [an[i][i] for i in range(len(an))]
            if _shuffled_rank(field, diag, rng) != len(diag):
                return False
        return True
    if isinstance(cert, InvariantMismatch):
        return cert.left != cert.right
    if isinstance(cert, OddValuation):
        return _verify_odd_valuation(cert)
    if isinstance(cert, NonzeroTrace):
        field = cert.c.field
        if cert.original is not None and cert.shift is not None:
            if cert.shift * cert.shift + cert.shift + cert.c != cert.original:
                return False
        val = cert.c.rep.num.const_value()
        return cert.c.rep.num.is_const() and field.gf.trace(val) != 0
    if isinstance(cert, Exhausted):
        return True  # unknowns carry no claim beyond the spent budget
    if isinstance(cert, Chain):
        for part in cert.parts.values():
            if isinstance(part, (Outcome, Chain)) or hasattr(part, "kind"):
                if not verify_certificate(part, rng):
                    return False
        return True
    return False


def _verify_odd_valuation(cert: OddValuation) -> bool:
    c = cert.c
    field = c.field
    if cert.original is not None and cert.shift is not None:
        if cert.shift * cert.shift + cert.shift + c != cert.original:
            return False
    gf = field.gf

    def dense(p):
        out = [0] * (p.total_degree() + 1) if not p.is_zero() else []
        for e, cc in p.terms.items():
            out[e[0]] = cc
        return out

    num, den = dense(c.rep.num), dense(c.rep.den)
    if cert.place == "infinity":
        d = poly_deg(num) - poly_deg(den)
        return d == cert.order and d % 2 == 1
    q = dense(cert.place.rep.num)
    mult = 0
    rest = den
    while True:
        quo, rem = poly_divmod(gf, rest, q)
        if rem:
            break
        mult += 1
        rest = quo
    nmult = 0
    rest = num
    while rest:
        quo, rem = poly_divmod(gf, rest, q)
        if rem:
            break
        nmult += 1
        rest = quo
    order = mult - nmult
    return order == cert.order and order % 2 == 1


def verify_outcome(outcome: Outcome, rng=None) -> bool:
    """Yes/no outcomes must carry a valid certificate; unknowns pass."""
    rng = rng or random.Random(0xA0D17)
    if outcome.is_unknown():
        return True
    if outcome.certificate is None:
        return False
    return verify_certificate(outcome.certificate, rng)
