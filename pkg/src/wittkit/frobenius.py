"""Frobenius-semilinear algebra: p-power spans, stabilizer fields, closures.

A SquareSubspace is a finite-dimensional K^p-subspace of a field K,
e.g. the value set sum_i a_i K^p of a totally singular form.  The
bijection x = sum_e c_e^p b^e  <->  (c_e)_e over the p-basis monomials
transports p-power spans to ordinary row spaces over K: the map is
additive and turns s^p-scaling into s-scaling, and multiplication by a
fixed element becomes an honest K-linear map.  All decisions here are
plain Gaussian elimination over K, hence exact and complete.
"""

from __future__ import annotations

from . import linalg
from .errors import TowerMismatch, ZeroSubspace
from .outcomes import (IndependenceWitness, Outcome, PowerCombination,
                       RankObstruction, no, yes)


def vec(x) -> list:
    """p-th-root coordinates of x over the p-basis monomials of its field."""
    return x.field.power_coords(x)


def unvec(field, coords):
    """Inverse of vec: sum_e coords[e]^p * b^e."""
    acc = field.zero_elt()
    p = field.p
    for e, c in zip(field.pbasis_exponents(), coords):
        if not c.is_zero():
            acc = acc + (c ** p) * field.pbasis_monomial(e)
    return acc


def mult_map(field, a):
    """Matrix of vec(c) -> vec(a*c); columns are vec(a * b^e)."""
    cols = [vec(a * field.pbasis_monomial(e)) for e in field.pbasis_exponents()]
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


class SquareSubspace:
    """K^p-span of a list of generators, in canonical reduced form."""

    def __init__(self, field, gens):
        self.field = field
        self.gens = tuple(gens)
        self._gen_vecs = [vec(g) for g in self.gens]
        self.rows, self.pivots = linalg.rref(self._gen_vecs) if self.gens else ([], [])

    @property
    def dim(self):
        return len(self.rows)

    def ambient_dim(self):
        return self.field.p ** len(self.field.pbasis())

    def basis_elements(self):
        """Canonical basis (from the reduced rows)."""
        return [unvec(self.field, r) for r in self.rows]

    def is_zero(self):
        return not self.rows

    def member(self, x) -> Outcome:
        if x.field != self.field:
            if self.field.has_subfield(x.field):
                x = self.field.lift_from(x)
            else:
                raise TowerMismatch("membership across unrelated towers")
        v = vec(x)
        if not linalg.in_rowspace(self.rows, self.pivots, v):
            return no(RankObstruction(element=x, gens=self.gens))
        if not self.gens:
            return yes(PowerCombination(target=x, gens=(), coeffs=()))
        A = [[gv[i] for gv in self._gen_vecs] for i in range(len(v))]
        coeffs = linalg.solve(A, v, self.field)
        assert coeffs is not None
        return yes(PowerCombination(target=x, gens=self.gens, coeffs=tuple(coeffs)))

    def contains(self, other) -> bool:
        return all(linalg.in_rowspace(self.rows, self.pivots, r) for r in other.rows)

    def __eq__(self, other):
        """Canonical form (RREF rows) makes equality structural."""
        if not isinstance(other, SquareSubspace):
            return NotImplemented
        if self.field != other.field or len(self.rows) != len(other.rows):
            return False
        return all(a == b for r1, r2 in zip(self.rows, other.rows)
                   for a, b in zip(r1, r2))

    def __hash__(self):
        return hash((self.field, len(self.rows)))

    def sum(self, other):
        self._check(other)
        return SquareSubspace(self.field, self.basis_elements() + other.basis_elements())

    def intersect(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return SquareSubspace(self.field, [])
        # Zassenhaus: rref of [[A | A], [B | 0]]; rows with zero left half
        # have right halves spanning the intersection
        n = self.ambient_dim()
        z = self.field.zero_elt()
        block = [list(r) + list(r) for r in self.rows]
        block += [list(r) + [z] * n for r in other.rows]
        R, _ = linalg.rref(block)
        out = []
        for row in R:
            if all(c.is_zero() for c in row[:n]):
                out.append(unvec(self.field, row[n:]))
        return SquareSubspace(self.field, out)

    def scaled(self, c):
        """The subspace c * S."""
        return SquareSubspace(self.field, [c * g for g in self.basis_elements()])

    def _check(self, other):
        if self.field != other.field:
            raise TowerMismatch("subspace operation across towers")

    def independence_certificate(self):
        return IndependenceWitness(elements=tuple(self.basis_elements()))

    def __repr__(self):
        return f"<span_p dim {self.dim} of {self.field!r}>"


def subspace(field, gens) -> SquareSubspace:
    lifted = []
    for g in gens:
        if isinstance(g, int):
            g = field.from_int(g)
        elif g.field != field:
            g = field.lift_from(g)
        lifted.append(g)
    return SquareSubspace(field, [g for g in lifted if not g.is_zero()])


def dependence(field, elements):
    """Coefficients (s_i), not all zero, with sum s_i^p * x_i = 0; or None.

    Ties break on the first zero row of the deterministic echelon
    transform, which makes split choices reproducible.
    """
    elements = list(elements)
    if not elements:
        return None
    rows = [vec(x) for x in elements]
    R, T, _ = linalg.rref_with_transform(rows, field)
    for i, row in enumerate(R):
        if all(c.is_zero() for c in row):
            return T[i]
    return None


def transporter(src: SquareSubspace, dst: SquareSubspace) -> SquareSubspace:
    """{c in K : c * src is contained in dst} as a SquareSubspace."""
    field = src.field
    if field != dst.field:
        raise TowerMismatch("transporter across towers")
    n = src.ambient_dim()
    if src.is_zero():
        return SquareSubspace(field, [field.pbasis_monomial(e)
                                      for e in field.pbasis_exponents()])
    conditions = []
    for g in src.basis_elements():
        M = mult_map(field, g)
        cols = [linalg.row_reduce_vector(dst.rows, dst.pivots,
                                         [M[i][j] for i in range(n)])
                for j in range(n)]
        for i in range(n):
            conditions.append([cols[j][i] for j in range(n)])
    ker = linalg.kernel(conditions, field, n)
    return SquareSubspace(field, [unvec(field, v) for v in ker])


def stabilizer_field(S: SquareSubspace) -> SquareSubspace:
    """{c : c*S is contained in S}; always a field between K^p and K.

    The output is re-verified: it contains 1 (hence all p-th powers),
    its basis is multiplicatively closed back into it, it stabilizes S,
    and its dimension is a power of p.
    """
    if S.is_zero():
        raise ZeroSubspace("stabilizer of the zero subspace")
    G = transporter(S, S)
    field = S.field
    assert G.member(field.one_elt()).is_yes()
    basis = G.basis_elements()
    for a in basis:
        for b in basis:
            assert G.member(a * b).is_yes(), "stabilizer not multiplicatively closed"
        for g in S.basis_elements():
            assert S.member(a * g).is_yes(), "stabilizer fails to stabilize"
    d = G.dim
    while d % field.p == 0:
        d //= field.p
    assert d == 1, f"stabilizer dimension {G.dim} is not a power of {field.p}"
    return G


def field_closure(field, gens) -> SquareSubspace:
    """Smallest p-power span containing K^p and gens that is closed under
    products; terminates since everything lives in K over K^p."""
    cur = subspace(field, [field.one_elt()] + list(gens))
    while True:
        basis = cur.basis_elements()
        extra = []
        for i, a in enumerate(basis):
            for b in basis[i:]:
                prod = a * b
                if not cur.member(prod).is_yes():
                    extra.append(prod)
        if not extra:
            return cur
        cur = subspace(field, basis + extra)


def field_generators(G: SquareSubspace) -> list:
    """Multiplicative generators g_1..g_m of a field G (p = 2: the g_i
    with G = F^2(g_1,..,g_m)), greedily extracted from the basis."""
    field = G.field
    gens = []
    span = subspace(field, [field.one_elt()])
    for b in G.basis_elements():
        if not span.member(b).is_yes():
            gens.append(b)
            span = field_closure(field, gens)
        if span.dim == G.dim:
            break
    assert span == G, "input was not multiplicatively closed"
    return gens
