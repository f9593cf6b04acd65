"""Brute-force oracles: exhaustive searches used to cross-validate the
exact decision procedures.

Finite-field matrix work runs on raw int Gram matrices (the GF element
encoding) for speed; results are exact either way.  Enumeration orders
are deterministic.
"""

from __future__ import annotations

import itertools

from .errors import BoundExceeded
from .forms import BilinearForm
from .polys import Frac, MPoly


def _gf_congruent(gf, T, G):
    """T^t G T over a finite field, int matrices."""
    n = len(G)
    TG = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                if T[k][i]:
                    acc = gf.add(acc, gf.mul(T[k][i], G[k][j]))
            TG[i][j] = acc
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                if TG[i][k] and T[k][j]:
                    acc = gf.add(acc, gf.mul(TG[i][k], T[k][j]))
            out[i][j] = acc
    return out


def _gf_invertible(gf, T):
    n = len(T)
    M = [row[:] for row in T]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return False
        M[c], M[piv] = M[piv], M[c]
        inv = gf.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = gf.mul(M[i][c], inv)
                M[i] = [gf.sub(a, gf.mul(f, b)) for a, b in zip(M[i], M[c])]
    return True


def all_invertible_ints(gf, dim, cap=600000):
    """Every invertible dim x dim int matrix over GF(q), or None over cap."""
    if gf.order ** (dim * dim) > cap:
        return None
    out = []
    for flat in itertools.product(range(gf.order), repeat=dim * dim):
        T = [list(flat[i * dim:(i + 1) * dim]) for i in range(dim)]
        if _gf_invertible(gf, T):
            out.append(T)
    return out


def _int_gram(beta: BilinearForm):
    return [[c.rep.num.const_value() for c in row] for row in beta.gram]


def congruence_orbit_ints(gf, gram, cap=200000):
    """Full congruence class of an int Gram matrix via closure under
    elementary congruences; exhaustive for the class."""
    dim = len(gram)
    gens = []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            for c in range(1, gf.order):
                E = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
                E[i][j] = c
                gens.append(E)
    for i in range(dim):
        for c in range(2, gf.order):
            E = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
            E[i][i] = c
            gens.append(E)
    key = tuple(map(tuple, gram))
    seen = {key}
    frontier = [gram]
    while frontier:
        if len(seen) > cap:
            raise BoundExceeded("congruence orbit exceeded the cap")
        nxt = []
        for G in frontier:
            for T in gens:
                H = _gf_congruent(gf, T, G)
                k = tuple(map(tuple, H))
                if k not in seen:
                    seen.add(k)
                    nxt.append(H)
        frontier = nxt
    return seen


def oracle_bil_congruent(alpha: BilinearForm, beta: BilinearForm,
                         matrices=None) -> bool:
    """Exhaustive congruence test over a finite base field: either try all
    invertible matrices or enumerate the whole congruence orbit."""
    if alpha.dim != beta.dim:
        return False
    gf = alpha.field.gf
    A, B = _int_gram(alpha), _int_gram(beta)
    if matrices is not None:
        for T in matrices:
            if _gf_congruent(gf, T, A) == B:
                return True
        return False
    return tuple(map(tuple, B)) in congruence_orbit_ints(gf, A)


def _poly_elements(field, deg_bound):
    gf = field.gf
    out = []
    for packed in range(gf.order ** (deg_bound + 1)):
        digits = []
        m = packed
        for _ in range(deg_bound + 1):
            digits.append(m % gf.order)
            m //= gf.order
        out.append(field.elt(Frac.of(MPoly(field.ring,
                   {(i,): c for i, c in enumerate(digits) if c}))))
    return out


def oracle_ts_isotropy(field, entries, deg_bound):
    """Isotropic vector with polynomial coordinates of degree <= deg_bound
    for a diagonal square-form over GF(q)(t), or None."""
    coords = _poly_elements(field, deg_bound)
    n = len(entries)
    for vec in itertools.product(range(len(coords)), repeat=n):
        if all(v == 0 for v in vec):
            continue
        acc = field.zero_elt()
        for idx, e in zip(vec, entries):
            x = coords[idx]
            acc = acc + x * x * e
        if acc.is_zero():
            return [coords[i] for i in vec]
    return None


def oracle_wp(c, height):
    """Witness for w^2 + w = c among fractions f/g with deg f, deg g <= height."""
    field = c.field
    polys = _poly_elements(field, height)
    for fnum in polys:
        for gden in polys:
            if gden.is_zero():
                continue
            w = fnum / gden
            if w * w + w == c:
                return w
    return None
