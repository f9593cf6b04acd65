"""Seeded property suites for the descent and norm-principle statements.

Each suite replays deterministically from its config: instances carry
their own seed, constructive hypotheses are verified exactly before the
asserted conclusion is checked, and every verdict lands in a report as
pass / fail / unknown.  A fail would refute a proved statement, so it
is treated as an implementation bug first and ships with certificates.
"""

from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass, field as dc_field

from .artin_schreier import wp_solve
from .errors import (GenerationExhausted, IrreducibilityUnknown, WittkitError)
from .fields import char_poly, extend, functional_s, min_poly, norm, rational_field
from .forms import (BilinearForm, bil_diagonal, bil_isometry, quad_block,
                    quad_diagonal, quad_isometry, ts_isometry)
from .frobenius import dependence, stabilizer_field, subspace, transporter
from .linalg import inverse as mat_inverse
from .polys import Frac, MPoly
from .similarity import bil_similarity_factor
from .transfer import transfer_context, transfer_identity_report

FIELD_TEMPLATES = {
    "F2t": lambda: rational_field(2, 1, ("t",)),
    "F4t": lambda: rational_field(2, 2, ("t",)),
    "F2tu": lambda: rational_field(2, 1, ("t", "u")),
    "F3t": lambda: rational_field(3, 1, ("t",)),
}


@dataclass
class SuiteConfig:
    seeds: int = 200
    start_seed: int = 0
    degrees: tuple = (2, 5)
    budget: int = 200
    fields: tuple = ("F2t", "F4t")

    def to_obj(self):
        return {"seeds": self.seeds, "start_seed": self.start_seed,
                "degrees": list(self.degrees), "budget": self.budget,
                "fields": list(self.fields)}


@dataclass
class InstanceRecord:
    seed: int
    description: str
    status: str  # "pass" | "fail" | "unknown"
    detail: str = ""
    payload: tuple = ()

    def to_obj(self):
        from .serialize import generic_obj
        return {"seed": self.seed, "description": self.description,
                "status": self.status, "detail": self.detail,
                "payload": [generic_obj(p) for p in self.payload]}


@dataclass
class SuiteReport:
    suite: str
    config: SuiteConfig
    records: list = dc_field(default_factory=list)
    elapsed: float = 0.0

    def counts(self):
        c = {"pass": 0, "fail": 0, "unknown": 0}
        for r in self.records:
            c[r.status] += 1
        return c

    @property
    def ok(self):
        return self.counts()["fail"] == 0

    def unknown_rate(self):
        n = len(self.records)
        return self.counts()["unknown"] / n if n else 0.0

    def failures(self):
        return [r for r in self.records if r.status == "fail"]

    def to_obj(self):
        return {"suite": self.suite, "config": self.config.to_obj(),
                "counts": self.counts(), "ok": self.ok,
                "unknown_rate": round(self.unknown_rate(), 4),
                "records": [r.to_obj() for r in self.records],
                "elapsed_s": round(self.elapsed, 3)}

    def summary_line(self):
        c = self.counts()
        flag = "ok" if self.ok else "FAIL"
        return (f"{self.suite}: {flag} pass={c['pass']} fail={c['fail']} "
                f"unknown={c['unknown']} ({self.elapsed:.1f}s)")


# ----------------------------------------------------------------------
# generators

def _poly_entry(field, rng, deg):
    gf = field.gf
    terms = {}
    for i in range(deg + 1):
        c = gf.random(rng)
        if c:
            terms[(i,) + (0,) * (len(field.names) - 1)] = c
    return field.elt(Frac.of(MPoly(field.ring, terms)))


def gen_extension(field, rng, degree, separable=True, name="x", tries=40):
    """Certified-irreducible simple step of the requested degree.

    Families: Artin-Schreier quadratics certified by the exact solver,
    Eisenstein-at-t polynomials (separability forced through the linear
    coefficient), and trinomials under the specialization certificate.
    """
    t = field.gens()[0] if getattr(field, "names", None) else None
    one, zero = field.one_elt(), field.zero_elt()
    last = None
    for _ in range(tries):
        try:
            if not separable:
                b = field.pbasis()[0]
                return extend(field, name, [-b] + [zero] * (field.p - 1) + [one])
            style = rng.randrange(3)
            if degree == 2 and style == 0 and field.p == 2 and t is not None:
                a = field.random(rng, 2)
                if not wp_solve(a).is_no():
                    continue
                return extend(field, name, [a, one, one], trusted=True)
            if style <= 1 and t is not None:
                coeffs = [t]
                for i in range(1, degree):
                    coeffs.append(t if rng.random() < 0.4 else zero)
                coeffs.append(one)
                if degree % 2 == 0 and field.p == 2 and coeffs[1].is_zero():
                    coeffs[1] = t  # keep the derivative nonzero
                return extend(field, name, coeffs)
            coeffs = [t if t is not None else one] + [zero] * (degree - 1) + [one]
            coeffs[rng.randrange(1, degree)] = one
            return extend(field, name, coeffs, rng=rng)
        except (IrreducibilityUnknown, WittkitError) as exc:
            last = exc
            continue
    raise GenerationExhausted(f"no certified degree-{degree} step found: {last}")


def gen_tower(field, rng, shape):
    if shape == "simple-sep":
        return gen_extension(field, rng, rng.choice([2, 3, 4, 5]), name="x")
    if shape == "odd":
        return gen_extension(field, rng, rng.choice([3, 5]), name="x")
    if shape == "odd-tower":
        K = gen_extension(field, rng, 3, name="x")
        return gen_extension(K, rng, 3, name="y")
    if shape == "sep-insep":
        K = gen_extension(field, rng, rng.choice([2, 3]), name="x")
        return gen_extension(K, rng, K.p, separable=False, name="z")
    raise ValueError(shape)


def max_anisotropic_dim(field):
    """Anisotropic diagonals cannot exceed [K : K^p]."""
    return field.p ** len(field.pbasis())


def gen_ts_entries(field, rng, dim, height=1, anisotropic=False, tries=60):
    if anisotropic:
        dim = min(dim, max_anisotropic_dim(field))
    for _ in range(tries):
        ents = [field.random(rng, height) for _ in range(dim)]
        if anisotropic:
            if any(e.is_zero() for e in ents):
                continue
            if dependence(field, ents) is not None:
                continue
        return ents
    raise GenerationExhausted("no suitable diagonal found")


def gen_bilinear(field, rng, dim, height=1, anisotropic=False, tries=80):
    for _ in range(tries):
        if anisotropic:
            try:
                return bil_diagonal(field, gen_ts_entries(field, rng, dim,
                                                          height, True))
            except GenerationExhausted:
                continue
        rows = [[field.zero_elt()] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                c = field.random(rng, height)
                rows[i][j] = c
                rows[j][i] = c
        form = BilinearForm(field, rows)
        if form.nonsingular:
            return form
    raise GenerationExhausted("no nonsingular Gram found")


def random_invertible(field, rng, dim, height=1, tries=80):
    for _ in range(tries):
        T = [[field.random(rng, height) for _ in range(dim)] for _ in range(dim)]
        if mat_inverse(T, field) is not None:
            return T
    raise GenerationExhausted("no invertible matrix found")


def gen_quasi_pfister_entries(field, rng, nfold=1, cofactor_dim=1):
    """Entries of <<g_1..g_n>> times a small diagonal cofactor; the g_i
    are returned so callers can produce represented values of the round
    Pfister part."""
    gens = []
    if getattr(field, "names", None) and rng.random() < 0.75:
        gens.append(field.gens()[0])
    while len(gens) < nfold:
        gens.append(field.random_nonzero(rng, 1))
    cof = [field.one_elt()]
    for _ in range(cofactor_dim - 1):
        cof.append(field.random_nonzero(rng, 1))
    entries = []
    for s in cof:
        stack = [s]
        for g in gens:
            stack = stack + [g * x for x in stack]
        entries.extend(stack)
    return gens, entries


def _pfister_entries(field, gens):
    out = [field.one_elt()]
    for g in gens:
        out = out + [g * x for x in out]
    return out


def _nonzero_square_value(L, entries, rng, tries=40):
    """A nonzero represented value sum e_i x_i^p of the lifted entries."""
    p = L.p
    for _ in range(tries):
        acc = L.zero_elt()
        for e in entries:
            x = L.random(rng, 1)
            acc = acc + L.lift_from(e) * x ** p
        if not acc.is_zero():
            return acc
    raise GenerationExhausted("no nonzero represented value found")


# ----------------------------------------------------------------------
# suite machinery

def _run_suite(name, config, body):
    report = SuiteReport(suite=name, config=config)
    t0 = time.time()
    base = zlib.crc32(name.encode())
    for i in range(config.seeds):
        seed = config.start_seed + i
        rng = random.Random((base * 1000003 + seed) % 2 ** 63)
        try:
            rec = body(seed, rng)
        except (WittkitError, GenerationExhausted) as exc:
            rec = InstanceRecord(seed=seed, description="generation",
                                 status="unknown", detail=str(exc))
        except AssertionError as exc:
            rec = InstanceRecord(seed=seed, description="internal check",
                                 status="fail", detail=str(exc))
        report.records.append(rec)
    report.elapsed = time.time() - t0
    return report


def _pick_field(config, rng):
    return FIELD_TEMPLATES[rng.choice(list(config.fields))]()


def _pick_degree(config, rng, odd=False):
    lo, hi = config.degrees
    choices = [d for d in range(lo, hi + 1) if not odd or d % 2 == 1]
    if not choices:
        choices = [3]
    return rng.choice(choices)


def _min_poly_coeffs(lam, field):
    """(n, [a_1..a_n]) of the minimal polynomial of lam over field."""
    mp = min_poly(lam, field)
    n = len(mp) - 1
    return n, [mp[n - k] for k in range(1, n + 1)]


# ----------------------------------------------------------------------
# suites

def suite_artin_springer(config: SuiteConfig) -> SuiteReport:
    """Anisotropic diagonals stay square-independent over separable steps;
    inseparable control steps are recorded, never asserted."""
    def body(seed, rng):
        field = _pick_field(config, rng)
        dim = rng.choice([2, 3])
        ents = gen_ts_entries(field, rng, dim, anisotropic=True)
        L = gen_extension(field, rng, _pick_degree(config, rng), name="x")
        lifted = [L.lift_from(e) for e in ents]
        dep = dependence(L, lifted)
        if dep is not None:
            return InstanceRecord(seed, "anisotropy over a separable step", "fail",
                                  detail=f"dependence {[repr(s) for s in dep]}",
                                  payload=tuple(ents))
        detail = f"degree {L.degree}"
        if field.p == 2 and rng.random() < 0.3:
            Li = gen_extension(field, rng, 2, separable=False, name="z")
            dep_i = dependence(Li, [Li.lift_from(e) for e in ents])
            detail += "; inseparable control: " + \
                ("isotropic" if dep_i is not None else "anisotropic")
        return InstanceRecord(seed, "anisotropy preserved", "pass", detail=detail)
    return _run_suite("artin-springer", config, body)


def suite_isometry_descent(config: SuiteConfig, mode="ts") -> SuiteReport:
    """Isometry over an extension agrees with isometry over the base:
    complete decisions on both levels for ts/bilinear; contradiction-free
    three-valued decisions on the quadratic fragment over odd steps."""
    def body(seed, rng):
        field = _pick_field(config, rng)
        if mode == "ts":
            dim = rng.choice([2, 3])
            qa = quad_diagonal(field, gen_ts_entries(field, rng, dim))
            if rng.random() < 0.5:
                qb = qa.transform(random_invertible(field, rng, dim))
            else:
                qb = quad_diagonal(field, gen_ts_entries(field, rng, dim))
            L = gen_extension(field, rng, _pick_degree(config, rng))
            over_f = ts_isometry(qa, qb)
            over_l = ts_isometry(qa.base_change(L), qb.base_change(L))
            if over_f.verdict != over_l.verdict:
                return InstanceRecord(seed, "ts isometry descent", "fail",
                                      detail=f"F:{over_f.verdict} L:{over_l.verdict}",
                                      payload=(over_f, over_l))
            return InstanceRecord(seed, f"ts agreement ({over_f.verdict})", "pass")
        if mode == "bilinear":
            dim = rng.choice([2, 3])
            ba = gen_bilinear(field, rng, dim)
            if rng.random() < 0.5:
                bb = ba.transform(random_invertible(field, rng, dim))
            else:
                bb = gen_bilinear(field, rng, dim)
            L = gen_extension(field, rng, _pick_degree(config, rng))
            over_f = bil_isometry(ba, bb)
            over_l = bil_isometry(ba.base_change(L), bb.base_change(L))
            if over_f.verdict != over_l.verdict:
                return InstanceRecord(seed, "bilinear isometry descent", "fail",
                                      detail=f"F:{over_f.verdict} L:{over_l.verdict}",
                                      payload=(over_f, over_l))
            return InstanceRecord(seed, f"bilinear agreement ({over_f.verdict})",
                                  "pass")
        qa, qb, twins = _gen_quad_pair(field, rng)
        L = gen_extension(field, rng, _pick_degree(config, rng, odd=True))
        over_f = quad_isometry(qa, qb, config.budget)
        over_l = quad_isometry(qa.base_change(L), qb.base_change(L), config.budget)
        if (over_f.is_yes() and over_l.is_no()) or (over_f.is_no() and over_l.is_yes()):
            return InstanceRecord(seed, "quadratic isometry descent", "fail",
                                  detail=f"F:{over_f.verdict} L:{over_l.verdict}",
                                  payload=(over_f, over_l))
        if twins and (over_f.is_no() or over_l.is_no()):
            return InstanceRecord(seed, "constructed twins rejected", "fail",
                                  payload=(over_f, over_l))
        if over_f.is_unknown() or over_l.is_unknown():
            return InstanceRecord(seed, "quadratic isometry descent", "unknown",
                                  detail=f"F:{over_f.verdict} L:{over_l.verdict}")
        return InstanceRecord(seed, f"quadratic agreement ({over_f.verdict})",
                              "pass")
    return _run_suite(f"isometry-descent[{mode}]", config, body)


def _gen_quad_pair(field, rng):
    """Pairs on the decidable fragment: one binary block plus a small
    radical, scrambled by invertible base changes over the base field."""
    ts_dim = rng.choice([0, 1])
    zero_dim = rng.choice([0, 1])
    a, b = field.random_nonzero(rng, 1), field.random(rng, 1)
    base = quad_block(field, a, b)
    if ts_dim:
        base = base.perp(quad_diagonal(field,
                         gen_ts_entries(field, rng, ts_dim, anisotropic=True)))
    if zero_dim:
        base = base.perp(quad_diagonal(field, [0] * zero_dim))
    twins = rng.random() < 0.5
    qa = base.transform(random_invertible(field, rng, base.dim))
    if twins:
        qb = base.transform(random_invertible(field, rng, base.dim))
    else:
        other = quad_block(field, field.random_nonzero(rng, 1), field.random(rng, 1))
        if ts_dim:
            other = other.perp(quad_diagonal(field,
                               gen_ts_entries(field, rng, ts_dim, anisotropic=True)))
        if zero_dim:
            other = other.perp(quad_diagonal(field, [0] * zero_dim))
        qb = other.transform(random_invertible(field, rng, other.dim))
    return qa, qb, twins


def suite_similarity_descent(config: SuiteConfig, mode="ts") -> SuiteReport:
    """Constructive similarity over an extension descends with an explicit
    minimal-polynomial coefficient as the base factor."""
    def body(seed, rng):
        if mode == "pform":
            return _pform_similarity_body(config, seed, rng)
        field = _pick_field(config, rng)
        if mode in ("ts", "bilinear"):
            gens, entries = gen_quasi_pfister_entries(
                field, rng, nfold=rng.choice([1, 2]),
                cofactor_dim=rng.choice([1, 2]))
            L = gen_extension(field, rng, _pick_degree(config, rng))
            lam = _nonzero_square_value(L, _pfister_entries(field, gens), rng)
            n, coeffs = _min_poly_coeffs(lam, field)
            odd_ms = [m for m in range(1, n + 1, 2) if not coeffs[m - 1].is_zero()]
            if not odd_ms:
                return InstanceRecord(seed, "separability of the factor", "fail",
                                      detail="no odd-index coefficient")
            a_m = coeffs[odd_ms[0] - 1]
            if mode == "ts":
                lifted = [L.lift_from(e) for e in entries]
                hyp = ts_isometry(quad_diagonal(L, [lam * e for e in lifted]),
                                  quad_diagonal(L, lifted), witness=False)
                if not hyp.is_yes():
                    return InstanceRecord(seed, "roundness hypothesis", "fail",
                                          payload=(hyp,))
                G = stabilizer_field(subspace(field, entries))
                if not G.member(a_m).is_yes():
                    return InstanceRecord(seed, "descent factor membership", "fail",
                                          payload=(a_m,))
                extra = _ts_negative_direction(field, L)
                return InstanceRecord(seed, f"a_{odd_ms[0]} lands in the factor field",
                                      "pass", detail=extra)
            beta = bil_diagonal(field, entries)
            beta_L = beta.base_change(L)
            hyp = bil_isometry(beta_L, beta_L.scale(lam))
            if not hyp.is_yes():
                return InstanceRecord(seed, "bilinear roundness hypothesis", "fail",
                                      payload=(hyp,))
            chk = bil_similarity_factor(a_m, beta)
            if not chk.is_yes():
                return InstanceRecord(seed, "bilinear descent factor", "fail",
                                      payload=(chk,))
            return InstanceRecord(seed, f"a_{odd_ms[0]} is a similarity factor",
                                  "pass")
        # odd-degree quadratic: a round binary Pfister form
        c = field.random(rng, 1)
        psi = quad_block(field, 1, c)
        L = gen_extension(field, rng, _pick_degree(config, rng, odd=True))
        psi_L = psi.base_change(L)
        vec = [L.random(rng, 1), L.random(rng, 1)]
        lam = psi_L.value(vec)
        if lam.is_zero():
            return InstanceRecord(seed, "degenerate represented value", "unknown")
        hyp = quad_isometry(psi_L, psi_L.scale(lam), config.budget)
        if hyp.is_no():
            return InstanceRecord(seed, "roundness hypothesis (quadratic)", "fail",
                                  payload=(hyp,))
        n, coeffs = _min_poly_coeffs(lam, field)
        a_n = coeffs[-1]
        chk = quad_isometry(psi, psi.scale(a_n), config.budget)
        if chk.is_no():
            return InstanceRecord(seed, "quadratic descent factor", "fail",
                                  payload=(chk,))
        if chk.is_unknown() or hyp.is_unknown():
            return InstanceRecord(seed, "quadratic descent factor", "unknown",
                                  detail=f"hyp:{hyp.verdict} concl:{chk.verdict}")
        return InstanceRecord(seed, f"norm factor a_{n} works", "pass")
    return _run_suite(f"similarity-descent[{mode}]", config, body)


def _ts_negative_direction(field, L):
    """Non-similar diagonals must stay non-similar over L (exact)."""
    from .similarity import ts_relative_factors_entries
    names = getattr(field, "names", ())
    if len(names) < 2:
        return ""
    t, u = field.gens()[:2]
    one = field.one_elt()
    below = ts_relative_factors_entries(field, [one, t], [one, u])
    above = ts_relative_factors_entries(L, [L.lift_from(one), L.lift_from(t)],
                                        [L.lift_from(one), L.lift_from(u)])
    assert below.outcome.is_no() and above.outcome.is_no(), \
        "non-similar pair became similar"
    return "negative direction checked"


def _pform_similarity_body(config, seed, rng):
    field = FIELD_TEMPLATES["F3t"]()
    p = field.p
    t = field.gens()[0]
    one = field.one_elt()
    entries = [one, t, t * t]  # the p-form <<t>> for p = 3
    if rng.random() < 0.4:
        s = field.random_nonzero(rng, 1)
        entries = entries + [s * e for e in entries]
    L = gen_extension(field, rng, rng.choice([2, 3, 4]))
    lam = _nonzero_square_value(L, [one, t, t * t], rng)
    lifted = [L.lift_from(e) for e in entries]
    from .similarity import ts_relative_factors_entries
    hyp = ts_relative_factors_entries(L, [lam * e for e in lifted], lifted)
    if not hyp.outcome.is_yes():
        return InstanceRecord(seed, "p-form roundness hypothesis", "fail",
                              payload=(hyp.outcome,))
    n, coeffs = _min_poly_coeffs(lam, field)
    ms = [m for m in range(1, n + 1) if m % p != 0 and not coeffs[m - 1].is_zero()]
    if not ms:
        return InstanceRecord(seed, "p-form separability", "fail",
                              detail="no coefficient with index prime to p")
    m = ms[0]
    s_exp = next(s for s in range(1, 3 * p) if (s * m) % p == 1)
    factor = coeffs[m - 1] ** s_exp
    G = stabilizer_field(subspace(field, entries))
    if not G.member(factor).is_yes():
        return InstanceRecord(seed, "p-form factor membership", "fail",
                              payload=(factor,))
    return InstanceRecord(seed, f"a_{m}^{s_exp} lands in the factor field (p=3)",
                          "pass")


def suite_symmetric_functions(config: SuiteConfig) -> SuiteReport:
    """Minimal-polynomial coefficients and functional values s(x^m) land
    in the factor set matching the parity of m, and the transferred form
    has the predicted value span."""
    def body(seed, rng):
        field = _pick_field(config, rng)
        gens, psi_entries = gen_quasi_pfister_entries(field, rng, nfold=1,
                                                      cofactor_dim=rng.choice([1, 2]))
        c = field.random_nonzero(rng, 1)
        phi_entries = [c * e for e in psi_entries]
        K0 = gen_extension(field, rng, _pick_degree(config, rng))
        lam0 = _nonzero_square_value(K0, _pfister_entries(field, gens), rng)
        lam = c * lam0  # phi = c psi, so phi_K = lam psi_K
        mp = min_poly(lam, field)
        K = extend(field, "y", mp, trusted=True)
        x = K.gen()
        lifted_psi = [K.lift_from(e) for e in psi_entries]
        lifted_phi = [K.lift_from(e) for e in phi_entries]
        hyp = ts_isometry(quad_diagonal(K, lifted_phi),
                          quad_diagonal(K, [x * e for e in lifted_psi]),
                          witness=False)
        if not hyp.is_yes():
            return InstanceRecord(seed, "similarity hypothesis over F(lam)", "fail",
                                  payload=(hyp,))
        n = K.degree
        D_psi = subspace(field, psi_entries)
        D_phi = subspace(field, phi_entries)
        G = stabilizer_field(D_psi)
        coset = transporter(D_psi, D_phi)
        cp = char_poly(x, field)
        for m in range(1, n + 1):
            a_m = cp.coeffs[m - 1]
            target = coset if m % 2 == 1 else G
            if not target.member(a_m).is_yes():
                return InstanceRecord(seed, "coefficient membership", "fail",
                                      detail=f"a_{m}", payload=(a_m,))
        for m in range(0, 2 * n):
            sval = functional_s(x ** m, K)
            target = coset if m % 2 == 1 else G
            if not target.member(sval).is_yes():
                return InstanceRecord(seed, "functional membership", "fail",
                                      detail=f"s(x^{m})", payload=(sval,))
        from .transfer import transfer_quadratic
        ctx = transfer_context(K)
        t_phi = transfer_quadratic(ctx, quad_diagonal(K, lifted_phi))
        S_t = subspace(field, t_phi.ts_diagonal())
        if not (S_t.contains(D_phi) and D_phi.contains(S_t)):
            return InstanceRecord(seed, "transferred value span", "fail")
        return InstanceRecord(seed, f"memberships hold through degree {n}", "pass")
    return _run_suite("symmetric-functions", config, body)


def suite_norm_principle(config: SuiteConfig) -> SuiteReport:
    """Norms of verified similarity factors land in the base factor set,
    across separable, odd-tower and even-inseparable tower shapes."""
    def body(seed, rng):
        field = _pick_field(config, rng)
        shape = rng.choice(["simple-sep", "odd", "odd-tower", "sep-insep"])
        L = gen_tower(field, rng, shape)
        kind = rng.choice(["ts", "bilinear", "square"])
        gens, entries = gen_quasi_pfister_entries(field, rng, nfold=1,
                                                  cofactor_dim=rng.choice([1, 2]))
        sub_even = False
        if kind == "square":
            mu = L.random_nonzero(rng, 1)
            lam = mu * mu
        elif shape == "sep-insep" and rng.random() < 0.5:
            # factor from the separable sublevel: [L:F(lam)] is even, so the
            # norm must even be a square
            K = L.below
            lam = L.lift_from(_nonzero_square_value(K, _pfister_entries(field, gens), rng))
            sub_even = True
        else:
            lam = _nonzero_square_value(L, _pfister_entries(field, gens), rng)
        lifted = [L.lift_from(e) for e in entries]
        hyp = ts_isometry(quad_diagonal(L, [lam * e for e in lifted]),
                          quad_diagonal(L, lifted), witness=False)
        if not hyp.is_yes():
            return InstanceRecord(seed, "factor hypothesis over the tower", "fail",
                                  payload=(hyp,))
        # dichotomy behind the even-degree shortcut
        mp = min_poly(lam, field)
        d = len(mp) - 1
        deriv_zero = all((i % field.p == 0) or mp[i].is_zero()
                         for i in range(1, d + 1))
        cofactor = L.degree_over(field) // d
        if deriv_zero and cofactor % 2 == 1:
            return InstanceRecord(seed, "separable-or-even dichotomy", "fail",
                                  detail=f"inseparable factor field, [L:K]={cofactor}")
        nrm = norm(lam, field)
        if sub_even and field.pth_root(nrm) is None:
            return InstanceRecord(seed, "even-degree square shortcut", "fail",
                                  detail="norm not a square", payload=(nrm,))
        if nrm.is_zero():
            return InstanceRecord(seed, "degenerate norm", "unknown")
        if kind == "bilinear":
            chk = bil_similarity_factor(nrm, bil_diagonal(field, entries))
            if not chk.is_yes():
                return InstanceRecord(seed, "norm factor (bilinear)", "fail",
                                      payload=(chk,))
        else:
            G = stabilizer_field(subspace(field, entries))
            if not G.member(nrm).is_yes():
                return InstanceRecord(seed, "norm factor (ts)", "fail",
                                      payload=(nrm,))
        return InstanceRecord(seed, f"{shape}/{kind}: norm lands in the factor set",
                              "pass")
    return _run_suite("norm-principle", config, body)


def suite_transfer_identities(config: SuiteConfig) -> SuiteReport:
    """Entrywise Gram formulas plus the four Witt-class identities on
    certified separable steps of the configured degrees."""
    def body(seed, rng):
        field = _pick_field(config, rng)
        degree = _pick_degree(config, rng)
        K = gen_extension(field, rng, degree)
        rep = transfer_identity_report(transfer_context(K))
        payload = (rep.witt_one, rep.witt_gen, rep.witt_pfister, rep.pfister_diagonal)
        if not rep.all_pass():
            return InstanceRecord(seed, f"transfer identities (degree {degree})",
                                  "fail", payload=payload)
        return InstanceRecord(seed, f"transfer identities (degree {degree})",
                              "pass", payload=payload)
    return _run_suite("transfer-identities", config, body)


def suite_oracle_agreement(config: SuiteConfig) -> SuiteReport:
    """Exhaustive oracles agree with the exact decisions on in-bound
    instances: finite-field congruence, bounded-degree isotropy, and
    bounded-height Artin-Schreier roots."""
    from .oracles import all_invertible_ints, oracle_bil_congruent, \
        oracle_ts_isotropy, oracle_wp
    mats_cache = {}

    def body(seed, rng):
        mode = seed % 3
        if mode == 0:
            fld = rational_field(2) if rng.random() < 0.5 else rational_field(2, 2)
            dim = rng.choice([1, 2, 3] if fld.gf.order == 2 else [1, 2])
            key = (fld.gf.order, dim)
            if key not in mats_cache:
                mats_cache[key] = all_invertible_ints(fld.gf, dim)
            mats = mats_cache[key]
            pairs = 0
            for _ in range(6):
                a = gen_bilinear(fld, rng, dim, tries=300)
                b = gen_bilinear(fld, rng, dim, tries=300) \
                    if rng.random() < 0.7 else a.transform(
                        random_invertible(fld, rng, dim, tries=300))
                want = oracle_bil_congruent(a, b, mats)
                got = bil_isometry(a, b).is_yes()
                if want != got:
                    return InstanceRecord(seed, "congruence oracle", "fail",
                                          detail=f"oracle={want} decision={got}",
                                          payload=(a, b))
                pairs += 1
            return InstanceRecord(seed, f"congruence agreement "
                                        f"({pairs} pairs, dim {dim}, q={fld.gf.order})",
                                  "pass")
        if mode == 1:
            fld = rational_field(2, 1, ("t",))
            dim = rng.choice([2, 3])
            ents = [_poly_entry(fld, rng, 2) for _ in range(dim)]
            if all(e.is_zero() for e in ents):
                ents[0] = fld.one_elt()
            bound = 3
            dep = dependence(fld, ents)
            wit = oracle_ts_isotropy(fld, ents, bound)
            if wit is not None and dep is None:
                return InstanceRecord(seed, "isotropy oracle", "fail",
                                      detail="oracle witness but exact says independent",
                                      payload=tuple(ents))
            if dep is not None:
                heights = [max(s.rep.num.total_degree(), s.rep.den.total_degree())
                           for s in dep]
                den_free = all(s.rep.den.is_one() for s in dep)
                if den_free and max(heights) <= bound and wit is None:
                    return InstanceRecord(seed, "isotropy oracle", "fail",
                                          detail="in-bound dependence missed by oracle",
                                          payload=tuple(ents))
            return InstanceRecord(seed, "bounded isotropy agreement", "pass")
        fld = rational_field(2, 1, ("t",))
        c = fld.random(rng, 2)
        bound = 3
        wit = oracle_wp(c, bound)
        exact = wp_solve(c)
        if wit is not None and not exact.is_yes():
            return InstanceRecord(seed, "wp oracle", "fail",
                                  detail="oracle found a root the solver rejected",
                                  payload=(c, wit))
        if wit is None and exact.is_yes():
            w = exact.certificate.w
            h = max(w.rep.num.total_degree(), w.rep.den.total_degree())
            if h <= bound:
                return InstanceRecord(seed, "wp oracle", "fail",
                                      detail="in-bound root missed by the oracle",
                                      payload=(c, w))
        return InstanceRecord(seed, "wp agreement", "pass")
    return _run_suite("oracle-agreement", config, body)


def _merge(*reports):
    merged = SuiteReport(suite="+".join(r.suite for r in reports),
                         config=reports[0].config)
    for r in reports:
        merged.records.extend(r.records)
        merged.elapsed += r.elapsed
    return merged


SUITES = {
    "artin-springer": suite_artin_springer,
    "isometry-descent": lambda cfg: _merge(
        suite_isometry_descent(cfg, "ts"),
        suite_isometry_descent(cfg, "bilinear"),
        suite_isometry_descent(cfg, "quadratic-odd")),
    "similarity-descent": lambda cfg: _merge(
        suite_similarity_descent(cfg, "ts"),
        suite_similarity_descent(cfg, "bilinear"),
        suite_similarity_descent(cfg, "quadratic-odd"),
        suite_similarity_descent(cfg, "pform")),
    "symmetric-functions": suite_symmetric_functions,
    "norm-principle": suite_norm_principle,
    "transfer-identities": suite_transfer_identities,
    "oracle-agreement": suite_oracle_agreement,
}


def run_suite(name, config: SuiteConfig) -> SuiteReport:
    if name not in SUITES:
        raise WittkitError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    return SUITES[name](config)
