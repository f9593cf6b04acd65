"""Similarity factors and similarity fields.

For totally singular forms everything is exact: the factor set of one
form is the stabilizer field of its value span, relative factors form a
coset computed by a transporter, and the value span factors as
(quasi-Pfister) x (cofactor) with the Pfister part generated by the
stabilizer field.

For bilinear forms, membership of a single factor is decided exactly
through the anisotropic-part/diagonal criterion, while the similarity
*field* is computed by enumeration inside a provably containing field
E0 (the intersection of the diagonal similarity fields of the form and
of its anisotropic part) and carries an explicit completeness flag:
"exact" after a verification sweep of one representative per direction
of the complement, otherwise "lower-bound".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import DimensionMismatch, TowerMismatch, ZeroScalar
from .forms import (BilinearForm, QuadraticForm, arf_invariant,
                    bil_witt_decompose, bil_isometry, quad_diagonal,
                    quad_isometry, ts_isometry, ts_subspace)
from .frobenius import (SquareSubspace, field_closure, field_generators,
                        stabilizer_field, subspace, transporter)
from .outcomes import (Chain, Exhausted, InvariantMismatch, Outcome, no,
                       unknown, yes)
from .artin_schreier import wp_solve


@dataclass
class SimilarityField:
    """The factor set G^0 of a form, as a square-span that is a field."""
    space: SquareSubspace
    exact: bool
    generators: tuple
    is_everything: bool = False  # zero form convention: every scalar works
    ambient: SquareSubspace = None
    decision_log: tuple = ()

    @property
    def dim(self):
        return self.space.dim

    def contains(self, c) -> bool:
        return self.space.member(c).is_yes()

    def completeness(self):
        return "exact" if self.exact else "lower-bound"


@dataclass
class QuasiPfisterFactorization:
    pfister_generators: tuple  # g_1..g_m
    cofactor: tuple            # s_1..s_r
    check: Outcome             # ts isometry of tau_an with the product


def _full_field_space(field) -> SquareSubspace:
    return subspace(field, [field.pbasis_monomial(e)
                            for e in field.pbasis_exponents()])


def _pfister_product_entries(field, gens, cofactor):
    out = []
    for s in cofactor:
        stack = [s]
        for g in gens:
            stack = stack + [g * x for x in stack]
        out.extend(stack)
    return out


def ts_similarity_field(tau: QuadraticForm):
    """(SimilarityField, QuasiPfisterFactorization | None); always exact."""
    entries = tau.ts_diagonal()
    return ts_similarity_field_entries(tau.field, entries)


def ts_similarity_field_entries(field, entries):
    D = subspace(field, entries)
    if D.is_zero():
        sf = SimilarityField(space=_full_field_space(field), exact=True,
                             generators=tuple(), is_everything=True)
        return sf, None
    G = stabilizer_field(D)
    gens = field_generators(G)
    # cofactor: a basis of D as a module over G
    cof = []
    span = SquareSubspace(field, [])
    for d in D.basis_elements():
        if not span.member(d).is_yes():
            cof.append(d)
            span = subspace(field, span.basis_elements() +
                            [g * d for g in G.basis_elements()])
    prod_entries = _pfister_product_entries(field, gens, cof)
    check = ts_isometry(quad_diagonal(field, _anisotropic_entries(field, entries)),
                        quad_diagonal(field, prod_entries))
    fact = QuasiPfisterFactorization(pfister_generators=tuple(gens),
                                     cofactor=tuple(cof), check=check)
    assert check.is_yes(), "quasi-Pfister factorization failed to certify"
    sf = SimilarityField(space=G, exact=True, generators=tuple(gens))
    return sf, fact


def _anisotropic_entries(field, entries):
    from .forms import ts_reduce
    indep, _, _ = ts_reduce(field, entries)
    return indep


@dataclass
class RelativeFactors:
    """The coset { c : phi = c psi } for totally singular forms."""
    outcome: Outcome
    factor: object = None
    coset_field: SimilarityField = None


def ts_relative_factors(phi: QuadraticForm, psi: QuadraticForm) -> RelativeFactors:
    if phi.dim != psi.dim:
        raise DimensionMismatch(f"{phi.dim} vs {psi.dim}")
    return ts_relative_factors_entries(phi.field, phi.ts_diagonal(), psi.ts_diagonal())


def ts_relative_factors_entries(field, phi_entries, psi_entries) -> RelativeFactors:
    """Complete: the transporter {c : c D_psi <= D_phi} is a coset with the
    similarity field of psi, nonempty iff the value spans have equal size."""
    D_phi = subspace(field, phi_entries)
    D_psi = subspace(field, psi_entries)
    if D_phi.dim != D_psi.dim:
        return RelativeFactors(outcome=no(InvariantMismatch(
            "value-span dimension", D_phi.dim, D_psi.dim)))
    if D_psi.is_zero():
        one = field.one_elt()
        sf, _ = ts_similarity_field_entries(field, psi_entries)
        return RelativeFactors(outcome=yes(Chain("zero-form", {})),
                               factor=one, coset_field=sf)
    T = transporter(D_psi, D_phi)
    cands = [c for c in T.basis_elements() if not c.is_zero()]
    if not cands:
        return RelativeFactors(outcome=no(Chain(
            "empty-transporter", {"space": T.independence_certificate()})))
    c0 = cands[0]
    # verify: c0 * psi is isometric to phi (exact ts decision)
    check = ts_isometry(quad_diagonal(field, phi_entries),
                        quad_diagonal(field, [c0 * e for e in psi_entries]))
    assert check.is_yes(), "transporter produced a non-factor"
    sf, _ = ts_similarity_field_entries(field, psi_entries)
    return RelativeFactors(outcome=yes(check.certificate),
                           factor=c0, coset_field=sf)


def bil_similarity_factor(c, beta: BilinearForm) -> Outcome:
    """Is c a similarity factor of beta?  Complete."""
    if isinstance(c, int):
        c = beta.field.from_int(c)
    if c.is_zero():
        raise ZeroScalar("similarity factors are nonzero")
    return bil_isometry(beta, beta.scale(c))


def bil_similarity_field(beta: BilinearForm) -> SimilarityField:
    """Enumerative computation inside the containing field E0.

    E0 intersects the (exact) diagonal similarity fields of beta and of
    its anisotropic part; candidates are E0's reduced basis, pairwise
    sums, and the closure of everything that passes the exact
    per-factor decision.
    """
    field = beta.field
    q_full = beta.diagonal_quadratic()
    if all(e.is_zero() for e in q_full.ts_diagonal()):
        # hyperbolic (up to radical): every scalar is a factor
        return SimilarityField(space=_full_field_space(field), exact=True,
                               generators=tuple(), is_everything=True)
    dec = bil_witt_decompose(beta.nonsingular_part())
    an = dec.anisotropic_part()
    sf_q, _ = ts_similarity_field(q_full)
    if an.dim == 0:
        # metabolic but not hyperbolic: factors are the diagonal's factors
        return SimilarityField(space=sf_q.space, exact=True,
                               generators=sf_q.generators, ambient=sf_q.space)
    sf_an, _ = ts_similarity_field(an.diagonal_quadratic())
    E0 = sf_q.space.intersect(sf_an.space)
    basis = [e for e in E0.basis_elements() if not e.is_zero()]
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append(basis[i] + basis[j])
    log = []
    passing = []
    for c in candidates:
        if c.is_zero():
            continue
        verdict = bil_similarity_factor(c, beta)
        log.append((c, verdict.verdict))
        if verdict.is_yes():
            passing.append(c)
    G = field_closure(field, passing)
    for g in G.basis_elements():
        if g.is_zero():
            continue
        chk = bil_similarity_factor(g, beta)
        log.append((g, chk.verdict))
        assert chk.is_yes(), "closure left the factor set"
    # verification sweep: one representative per complement direction;
    # a passing representative extends the field and restarts the sweep
    changed = True
    while changed:
        changed = False
        for r in _complement_representatives(field, G, E0):
            verdict = bil_similarity_factor(r, beta)
            log.append((r, verdict.verdict))
            if verdict.is_yes():
                G = field_closure(field, G.basis_elements() + [r])
                changed = True
                break
    exact = True
    gens = field_generators(G)
    return SimilarityField(space=G, exact=exact, generators=tuple(gens),
                           ambient=E0, decision_log=tuple(log))


def _complement_representatives(field, G, E0):
    """Basis elements of E0 outside G (one per missing echelon direction)."""
    out = []
    cur = G
    for e in E0.basis_elements():
        if not cur.member(e).is_yes():
            out.append(e)
            cur = cur.sum(subspace(field, [e]))
    return out


def similar(phi, psi, budget: int = 200) -> Outcome:
    """Similarity decision with a factor witness.

    Totally singular: complete.  Bilinear: ts-coset representative times
    the enumerated similarity field of psi; "no" needs an empty coset or
    an exact enumeration.  Quadratic: candidates from the radical parts
    and the scaling-invariant Arf obstruction; three-valued.
    """
    if phi.dim != psi.dim:
        raise DimensionMismatch(f"{phi.dim} vs {psi.dim}")
    if isinstance(phi, BilinearForm) != isinstance(psi, BilinearForm):
        raise TowerMismatch("similarity between different form kinds")
    if isinstance(phi, QuadraticForm) and phi.is_totally_singular() \
            and psi.is_totally_singular():
        rf = ts_relative_factors(phi, psi)
        out = rf.outcome
        if out.is_yes():
            return yes(Chain("relative-factor", {"isometry": out.certificate,
                                                 "factor": rf.factor}),
                       note=f"factor {rf.factor!r}")
        return out
    if isinstance(phi, BilinearForm):
        return _bil_similar(phi, psi, budget)
    return _quad_similar(phi, psi, budget)


def _bil_similar(phi: BilinearForm, psi: BilinearForm, budget) -> Outcome:
    field = phi.field
    rf = ts_relative_factors(phi.diagonal_quadratic(), psi.diagonal_quadratic())
    if rf.outcome.is_no():
        return no(Chain("diagonal-coset-empty", {"ts": rf.outcome}),
                  note="diagonals are not similar")
    c0 = rf.factor
    sf = bil_similarity_field(psi)
    cands = [c0]
    for e in sf.space.basis_elements():
        if not e.is_zero():
            cands.append(c0 * e)
    if sf.ambient is not None:
        for e in sf.ambient.basis_elements():
            if not e.is_zero():
                cands.append(c0 * e)
    log = {}
    for c in cands:
        if c.is_zero():
            continue
        r = bil_isometry(phi, psi.scale(c))
        if r.is_yes():
            return yes(Chain("factor-witness", {"isometry": r.certificate,
                                                "factor": c}),
                       note=f"factor {c!r}")
    if sf.exact:
        return no(Chain("representatives-exhausted",
                        {"enumeration": "exact", "tried": len(cands)}),
                  note="all coset representatives fail")
    return unknown(Exhausted(budget=len(cands), detail="coset representatives"))


def _quad_similar(phi: QuadraticForm, psi: QuadraticForm, budget) -> Outcome:
    field = phi.field
    from .forms import quad_normalize
    dphi = quad_normalize(phi, budget)
    dpsi = quad_normalize(psi, budget)
    if dphi.radical_dim != dpsi.radical_dim or dphi.zero_dim != dpsi.zero_dim:
        return no(InvariantMismatch("radical layout",
                                    (dphi.radical_dim, dphi.zero_dim),
                                    (dpsi.radical_dim, dpsi.zero_dim)))
    if dphi.radical_dim == 0 and field.p == 2:
        # Arf class is invariant under scaling: c[a,b] = [ca, b/c]
        a_phi, _ = arf_invariant(phi, budget)
        a_psi, _ = arf_invariant(psi, budget)
        r = wp_solve(a_phi + a_psi, budget)
        if r.is_no():
            return no(Chain("arf-mismatch", {"difference": r}),
                      note="Arf classes differ (scaling-invariant)")
    cands = []
    if dphi.ts_entries or dpsi.ts_entries:
        rf = ts_relative_factors_entries(field, list(dphi.ts_entries),
                                         list(dpsi.ts_entries))
        if rf.outcome.is_no():
            return no(Chain("radical-coset-empty", {"ts": rf.outcome}))
        c0 = rf.factor
        cands.append(c0)
        for e in rf.coset_field.space.basis_elements():
            if not e.is_zero():
                cands.append(c0 * e)
    else:
        one = field.one_elt()
        cands = [one]
        for a, b in list(dphi.blocks) + list(dpsi.blocks):
            if not a.is_zero():
                cands.append(a)
            if not b.is_zero():
                cands.append(b)
    for c in cands:
        if c.is_zero():
            continue
        r = quad_isometry(phi, psi.scale(c), budget)
        if r.is_yes():
            return yes(Chain("factor-witness", {"isometry": r.certificate,
                                                "factor": c}),
                       note=f"factor {c!r}")
    return unknown(Exhausted(budget=len(cands), detail="factor candidates"))
