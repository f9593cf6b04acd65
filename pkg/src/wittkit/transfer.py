"""Scharlau transfer along a simple step via the coefficient functional.

The functional s picks the coefficient of 1 on the power basis
1, x, ..., x^{n-1} of a step K = F(x): s(1) = 1, s(x^i) = 0 for
0 < i < n.  Transfers materialize explicit Gram / coefficient matrices
over F (index order: form basis major, power minor), so every
downstream identity check works on concrete matrices.

The classical Witt-class values of the transfers of <1>_b and <x>_b
are exercised with the norm constant a_n = N(x): the transfer of <1>_b
is <1>_b for odd n and <1, a_n>_b for even n; the transfer of <x>_b is
<a_n>_b for odd n and metabolic for even n.  (Direct Hankel-determinant
computation pins the even case to a_n.)
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InseparableContext, NotSimpleStep, TowerMismatch
from .fields import CharPolyData, ExtensionField, char_poly, functional_s
from .forms import (BilinearForm, QuadraticForm, bil_diagonal, quad_diagonal,
                    ts_isometry, witt_equivalent_bilinear)
from .outcomes import Outcome, no, yes


@dataclass
class TransferContext:
    step: ExtensionField
    n: int
    power_table: tuple           # s(x^0) .. s(x^(2n-1)), elements of F
    char_data: CharPolyData      # of multiplication by x over F
    odd_index: int | None        # odd k with a_k != 0 (None if none exists)

    @property
    def base(self):
        return self.step.below

    @property
    def norm_coefficient(self):
        """a_n = N(x)."""
        return self.char_data.coeffs[-1]

    @property
    def odd_coefficient(self):
        if self.odd_index is None:
            raise InseparableContext("no odd-index nonzero coefficient")
        return self.char_data.coeffs[self.odd_index - 1]

    def s(self, x) -> "FieldElement":
        return functional_s(x, self.step)


def transfer_context(step: ExtensionField) -> TransferContext:
    if not isinstance(step, ExtensionField):
        raise NotSimpleStep("transfer needs a simple extension step")
    n = step.degree
    table = tuple(functional_s(step.gen_power(m), step) for m in range(2 * n))
    cp = char_poly(step.gen(), step.below)
    odd_index = None
    if n % 2 == 1:
        odd_index = n
    else:
        for k in range(1, n + 1, 2):
            if not cp.coeffs[k - 1].is_zero():
                odd_index = k
                break
    return TransferContext(step=step, n=n, power_table=table, char_data=cp,
                           odd_index=odd_index)


def transfer_bilinear(ctx: TransferContext, beta: BilinearForm) -> BilinearForm:
    """Gram over F with entries s(x^(i+j) * beta(e_k, e_l))."""
    K = ctx.step
    if beta.field != K:
        raise TowerMismatch("form must live on the transfer step")
    n, d = ctx.n, beta.dim
    F = ctx.base
    N = n * d
    rows = [[None] * N for _ in range(N)]
    for k in range(d):
        for l in range(d):
            g = beta.gram[k][l]
            for i in range(n):
                for j in range(n):
                    val = ctx.s(K.gen_power(i + j) * g)
                    rows[k * n + i][l * n + j] = val
    return BilinearForm(F, rows)


def transfer_quadratic(ctx: TransferContext, q: QuadraticForm) -> QuadraticForm:
    """Expand q(sum x_{ki} x^i e_k) and push s through each coefficient."""
    K = ctx.step
    if q.field != K:
        raise TowerMismatch("form must live on the transfer step")
    n, d = ctx.n, q.dim
    F = ctx.base
    N = n * d
    P = q.polar_gram()
    z = F.zero_elt()
    out = [[z] * N for _ in range(N)]
    for k in range(d):
        for i in range(n):
            u = k * n + i
            out[u][u] = ctx.s(K.gen_power(2 * i) * q.coeffs[k][k])
            for l in range(d):
                for j in range(n):
                    v = l * n + j
                    if v <= u:
                        continue
                    pol = P[k][l]
                    if not pol.is_zero():
                        out[u][v] = ctx.s(K.gen_power(i + j) * pol)
    return QuadraticForm(F, out)


def hankel_gram(ctx: TransferContext, shift: int):
    """The matrix (s(x^(i+j+shift)))_{i,j}: shift 0 for <1>_b, 1 for <x>_b."""
    n = ctx.n
    return [[ctx.power_table[i + j + shift] for j in range(n)] for i in range(n)]


def tensor_bilinear_quadratic(b: BilinearForm, q: QuadraticForm) -> QuadraticForm:
    """The quadratic form b (x) q on basis pairs (s, u), s major."""
    if b.field != q.field:
        raise TowerMismatch("tensor across towers")
    field = b.field
    m, r = b.dim, q.dim
    P = q.polar_gram()
    z = field.zero_elt()
    N = m * r
    out = [[z] * N for _ in range(N)]
    for s in range(m):
        for u in range(r):
            i = s * r + u
            out[i][i] = b.gram[s][s] * q.coeffs[u][u]
            for s2 in range(m):
                for u2 in range(r):
                    j = s2 * r + u2
                    if j <= i:
                        continue
                    if s == s2:
                        if u2 > u:
                            out[i][j] = b.gram[s][s] * q.coeffs[u][u2]
                    else:
                        out[i][j] = b.gram[s][s2] * P[u][u2]
    return QuadraticForm(field, out)


@dataclass
class TransferIdentityReport:
    context_degree: int
    gram_one_entrywise: bool
    gram_gen_entrywise: bool
    witt_one: Outcome
    witt_gen: Outcome
    witt_pfister: Outcome
    pfister_diagonal: Outcome

    def all_pass(self):
        return (self.gram_one_entrywise and self.gram_gen_entrywise
                and self.witt_one.is_yes() and self.witt_gen.is_yes()
                and self.witt_pfister.is_yes() and self.pfister_diagonal.is_yes())


def transfer_identity_report(ctx: TransferContext) -> TransferIdentityReport:
    """Check the Gram formulas entrywise and the four Witt-class values,
    plus the transfer of the two-dimensional Pfister form <1, x>_b."""
    if ctx.step.kind != "separable":
        raise InseparableContext("identity checks need a separable step")
    K = ctx.step
    F = ctx.base
    one_K = bil_diagonal(K, [1])
    gen_K = bil_diagonal(K, [K.gen()])
    t_one = transfer_bilinear(ctx, one_K)
    t_gen = transfer_bilinear(ctx, gen_K)
    gram_one_ok = [list(r) for r in t_one.gram] == hankel_gram(ctx, 0)
    gram_gen_ok = [list(r) for r in t_gen.gram] == hankel_gram(ctx, 1)
    a_n = ctx.norm_coefficient
    if ctx.n % 2 == 1:
        exp_one = bil_diagonal(F, [1])
        exp_gen = bil_diagonal(F, [a_n])
    else:
        exp_one = bil_diagonal(F, [1, a_n])
        exp_gen = BilinearForm(F, [])
    witt_one = witt_equivalent_bilinear(t_one, exp_one)
    witt_gen = witt_equivalent_bilinear(t_gen, exp_gen)
    pf_K = bil_diagonal(K, [1, K.gen()])
    t_pf = transfer_bilinear(ctx, pf_K)
    witt_pf = witt_equivalent_bilinear(t_pf, bil_diagonal(F, [1, a_n]))
    diag_expected = quad_diagonal(F, [F.one_elt()] + list(ctx.power_table[1:]))
    diag = ts_isometry(t_pf.diagonal_quadratic(), diag_expected)
    return TransferIdentityReport(context_degree=ctx.n,
                                  gram_one_entrywise=gram_one_ok,
                                  gram_gen_entrywise=gram_gen_ok,
                                  witt_one=witt_one, witt_gen=witt_gen,
                                  witt_pfister=witt_pf, pfister_diagonal=diag)


@dataclass
class ReciprocityReport:
    bilinear_side: Outcome   # s_*(b (x) q_K) vs s_*(b) (x) q, as quadratic forms
    note: str = ""


def frobenius_reciprocity_check(ctx: TransferContext, b: BilinearForm,
                                q: QuadraticForm, budget: int = 200) -> ReciprocityReport:
    """Compare s_*(b (x) q_K) with s_*(b) (x) q where decisions allow."""
    from .forms import quad_isometry
    K = ctx.step
    qK = q.base_change(K)
    lhs = transfer_quadratic(ctx, tensor_bilinear_quadratic(b, qK))
    rhs = tensor_bilinear_quadratic(transfer_bilinear(ctx, b), q)
    if lhs.is_totally_singular() and rhs.is_totally_singular():
        return ReciprocityReport(bilinear_side=ts_isometry(lhs, rhs),
                                 note="totally singular comparison")
    return ReciprocityReport(bilinear_side=quad_isometry(lhs, rhs, budget),
                             note="quadratic comparison")
