"""Field towers GF(p^k)(t_1..t_n)[x_1][x_2]... with exact element arithmetic.

A tower is a chain: a rational function field over GF(p^k) at the
bottom (possibly with zero transcendentals, i.e. the finite field
itself) and simple algebraic extension steps above it.  Each step
carries a monic minimal polynomial over the level below, a
separability classification (formal derivative test) and an
irreducibility certificate.

Element representations:
  * rational level: a normalized Frac (see polys);
  * extension level of degree d: a tuple of d elements of the level
    below (coordinates on 1, x, ..., x^{d-1}).

FieldElement wraps (field, rep) and provides operators.  Elements of a
lower level coerce upward automatically; mixing unrelated towers raises
TowerMismatch.

The p-basis machinery lives here as well: every level tracks elements
b_1..b_r whose restricted monomials form a basis of K over K^p, and
power_coords(x) returns the unique c_e with x = sum_e c_e^p b^e.  This
is the coordinate system for everything Frobenius-semilinear.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg
from .errors import (DegreeCapExceeded, DivisionByZero, IrreducibilityUnknown,
                     NotSimpleStep, TowerMismatch, UnsupportedInseparableStep)
from .gf import GF, QuotientField, poly_is_irreducible, poly_random_irreducible
from .polys import Frac, MPoly, PolyRing


@dataclass(frozen=True)
class Limits:
    """Configurable size caps and budgets (defaults per the shipped profile)."""
    max_total_degree: int = 16
    max_transcendentals: int = 4
    spec_tries: int = 32
    spec_ext_degree: int = 3
    spec_max_ext_degree: int = 12
    search_budget: int = 400


DEFAULT_LIMITS = Limits()


class FieldElement:
    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, int):
            return self, self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented, None
        if other.field == self.field:
            return self, other
        if self.field.has_subfield(other.field):
            return self, self.field.lift_from(other)
        if other.field.has_subfield(self.field):
            return other.field.lift_from(self), other
        raise TowerMismatch(f"elements of {self.field} and {other.field}")

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field._add(a.rep, b.rep))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.rep))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field._add(a.rep, a.field._neg(b.rep)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElement(a.field, a.field._mul(a.rep, b.rep))

    __rmul__ = __mul__

    def inv(self):
        return FieldElement(self.field, self.field._inv(self.rep))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * FieldElement(a.field, a.field._inv(b.rep))

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = self.field.one_elt()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def is_zero(self):
        return self.field._is_zero(self.rep)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        try:
            a, b = self._coerce(other)
        except TowerMismatch:
            return False
        return a.rep == b.rep

    def __hash__(self):
        return hash((self.field, self.rep))

    def __repr__(self):
        return self.field.elt_str(self.rep)


class _Ops:
    """Adapter exposing a tower level through the gf.poly_* interface."""

    def __init__(self, field):
        self.field = field
        self.zero = field.zero_elt()
        self.one = field.one_elt()
        self.p = field.p

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inv()

    def pth_root(self, a):
        r = self.field.pth_root(a)
        if r is None:
            raise ValueError("not a p-th power")
        return r


class Field:
    """Common behaviour of tower levels."""

    # subclasses set: p, below (or None), and the representation methods

    def elt(self, rep) -> FieldElement:
        return FieldElement(self, rep)

    def zero_elt(self):
        return self.elt(self._zero())

    def one_elt(self):
        return self.elt(self._one())

    def chain(self):
        out = []
        f = self
        while f is not None:
            out.append(f)
            f = f.below
        out.reverse()
        return out

    def has_subfield(self, other) -> bool:
        f = self
        while f is not None:
            if f == other:
                return True
            f = f.below
        return False

    def lift_from(self, x: FieldElement) -> FieldElement:
        if x.field == self:
            return x
        if self.below is None:
            raise TowerMismatch(f"{x.field} is not below {self}")
        y = self.below.lift_from(x)
        rep = (y,) + tuple(self.below.zero_elt() for _ in range(self.degree - 1))
        return self.elt(rep)

    def common_with(self, other):
        if self.has_subfield(other):
            return self
        if other.has_subfield(self):
            return other
        raise TowerMismatch(f"{self} and {other} share no tower")

    # -- degrees and bases over a subfield

    def degree_over(self, base) -> int:
        if self == base:
            return 1
        if self.below is None:
            raise TowerMismatch(f"{base} is not below {self}")
        return self.degree * self.below.degree_over(base)

    def absolute_degree(self) -> int:
        return self.degree_over(self.bottom())

    def bottom(self):
        f = self
        while f.below is not None:
            f = f.below
        return f

    def basis_over(self, base) -> list[FieldElement]:
        if self == base:
            return [self.one_elt()]
        sub = self.below.basis_over(base)
        out = []
        for i in range(self.degree):
            xi = self.gen_power(i)
            for v in sub:
                out.append(xi * self.lift_from(v))
        return out

    def coords_over(self, x: FieldElement, base) -> list[FieldElement]:
        assert x.field == self
        if self == base:
            return [x]
        out = []
        for comp in x.rep:
            out.extend(self.below.coords_over(comp, base))
        return out

    def from_coords(self, coords, base) -> FieldElement:
        basis = self.basis_over(base)
        acc = self.zero_elt()
        for c, v in zip(coords, basis):
            acc = acc + self.lift_from(c) * v
        return acc

    def mult_matrix_over(self, x: FieldElement, base):
        basis = self.basis_over(base)
        cols = [self.coords_over(x * v, base) for v in basis]
        return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]

    # -- p-basis / Frobenius coordinates

    def pbasis_exponents(self):
        r = len(self.pbasis())
        return list(itertools.product(range(self.p), repeat=r))

    def pbasis_monomial(self, e) -> FieldElement:
        acc = self.one_elt()
        for b, k in zip(self.pbasis(), e):
            acc = acc * b ** k
        return acc

    def pth_root(self, x: FieldElement):
        """y with y^p = x, or None."""
        coords = self.power_coords(x)
        root = None
        for e, c in zip(self.pbasis_exponents(), coords):
            if any(e):
                if not c.is_zero():
                    return None
            else:
                root = c
        return root

    def random(self, rng: random.Random, height: int = 2) -> FieldElement:
        raise NotImplementedError

    def random_nonzero(self, rng, height=2):
        while True:
            x = self.random(rng, height)
            if not x.is_zero():
                return x


class RationalField(Field):
    """GF(p^k)(t_1..t_n); n = 0 gives the finite field itself."""

    below = None
    degree = None  # infinite over the prime field; not used

    def __init__(self, gf: GF, names: tuple[str, ...] = ()):
        self.gf = gf
        self.p = gf.p
        self.names = tuple(names)
        self.ring = PolyRing(gf, self.names)

    def __eq__(self, other):
        return (isinstance(other, RationalField) and self.gf == other.gf
                and self.names == other.names)

    def __hash__(self):
        return hash((self.gf, self.names))

    def __repr__(self):
        base = repr(self.gf)
        return base + (f"({','.join(self.names)})" if self.names else "")

    def _zero(self):
        return Frac.of(self.ring.zero)

    def _one(self):
        return Frac.of(self.ring.one)

    def _is_zero(self, rep):
        return rep.is_zero()

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        return a.inv()

    def from_int(self, n: int) -> FieldElement:
        return self.elt(Frac.of(self.ring.from_int(n)))

    def gens(self) -> list[FieldElement]:
        return [self.elt(Frac.of(self.ring.var(i))) for i in range(len(self.names))]

    def var(self, name: str) -> FieldElement:
        return self.gens()[self.names.index(name)]

    def elt_str(self, rep):
        return repr(rep)

    def is_finite(self):
        return not self.names

    def pbasis(self):
        return self.gens()

    def power_coords(self, x: FieldElement) -> list[FieldElement]:
        assert x.field == self
        p = self.p
        if not self.names:
            return [self.elt(Frac.of(self.ring.const(self.gf.pth_root(x.rep.num.const_value()))))]
        num, den = x.rep.num, x.rep.den
        h = num * den ** (p - 1)
        buckets: dict[tuple, dict] = {}
        for e, c in h.terms.items():
            res = tuple(k % p for k in e)
            root_e = tuple((k - r) // p for k, r in zip(e, res))
            buckets.setdefault(res, {})[root_e] = self.gf.pth_root(c)
        out = []
        for e in self.pbasis_exponents():
            terms = buckets.get(e, {})
            out.append(self.elt(Frac(MPoly(self.ring, terms), den)))
        return out

    def random(self, rng, height=2):
        def rpoly(allow_zero):
            while True:
                terms = {}
                for _ in range(rng.randrange(1, 4)):
                    e = tuple(rng.randrange(height + 1) for _ in self.names)
                    c = self.gf.random(rng)
                    if c:
                        terms[e] = c
                pl = MPoly(self.ring, terms)
                if allow_zero or not pl.is_zero():
                    return pl
        num = rpoly(True)
        den = rpoly(False) if self.names and rng.random() < 0.25 else self.ring.one
        return self.elt(Frac(num, den))


class ExtensionField(Field):
    """Simple algebraic step K = B(x) with monic minimal polynomial over B."""

    def __init__(self, below: Field, name: str, minpoly: tuple[FieldElement, ...],
                 kind: str, certificate=None):
        self.below = below
        self.p = below.p
        self.name = name
        self.minpoly = tuple(minpoly)  # low -> high, monic, length degree+1
        self.degree = len(minpoly) - 1
        self.kind = kind
        self.certificate = certificate
        self._gen_powers = None
        self._pc_solver = None
        self._insep_slot = None
        if kind == "inseparable":
            b = -self.minpoly[0]
            for i, pb in enumerate(below.pbasis()):
                if pb == b:
                    self._insep_slot = i
                    break

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and self.name == other.name
                and self.below == other.below and self.minpoly == other.minpoly)

    def __hash__(self):
        return hash((self.name, self.below, self.minpoly))

    def __repr__(self):
        return f"{self.below!r}[{self.name}]"

    def _zero(self):
        z = self.below.zero_elt()
        return tuple(z for _ in range(self.degree))

    def _one(self):
        return (self.below.one_elt(),) + tuple(self.below.zero_elt()
                                               for _ in range(self.degree - 1))

    def _is_zero(self, rep):
        return all(c.is_zero() for c in rep)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def gen(self) -> FieldElement:
        return self.gen_power(1)

    def gen_power(self, i: int) -> FieldElement:
        if self._gen_powers is None:
            d = self.degree
            z, o = self.below.zero_elt(), self.below.one_elt()
            pows = [tuple(o if a == j else z for a in range(d)) for j in range(d)]
            # x^d .. x^(2d-2) reduced modulo the minimal polynomial
            cur = list(pows[d - 1])
            for _ in range(d - 1):
                top = cur[-1]
                nxt = [self.below.zero_elt()] + cur[:-1]
                if not top.is_zero():
                    for a in range(d):
                        nxt[a] = nxt[a] - top * self.minpoly[a]
                cur = nxt
                pows.append(tuple(cur))
            self._gen_powers = pows
        if i < len(self._gen_powers):
            return self.elt(self._gen_powers[i])
        # the generator itself: reduced representation even for degree 1
        if self.degree == 1:
            g = self.elt((-self.minpoly[0],))
        else:
            g = self.elt(self._gen_powers[1])
        acc = self.elt(self._gen_powers[-1])
        for _ in range(i - len(self._gen_powers) + 1):
            acc = acc * g
        return acc

    def _mul(self, a, b):
        d = self.degree
        below = self.below
        z = below.zero_elt()
        prod = [z] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    prod[i + j] = prod[i + j] + ai * bj
        if d == 1:
            red = prod
        else:
            self.gen_power(0)  # ensure table
            red = list(prod[:d])
            for i in range(d, 2 * d - 1):
                c = prod[i]
                if not c.is_zero():
                    tab = self._gen_powers[i]
                    for j in range(d):
                        red[j] = red[j] + c * tab[j]
        return tuple(red)

    def _inv(self, a):
        if self._is_zero(a):
            raise DivisionByZero(f"inverse of 0 in {self}")
        from .gf import poly_invmod
        ops = _Ops(self.below)
        apoly = [c for c in a]
        while apoly and apoly[-1].is_zero():
            apoly.pop()
        m = list(self.minpoly)
        invp = poly_invmod(ops, apoly, m)
        assert invp is not None, "minimal polynomial not irreducible?"
        invp = invp + [self.below.zero_elt()] * (self.degree - len(invp))
        return tuple(invp[:self.degree])

    def from_int(self, n: int) -> FieldElement:
        return self.lift_from(self.bottom().from_int(n))

    def elt_str(self, rep):
        parts = []
        for i, c in enumerate(rep):
            if c.is_zero():
                continue
            cs = self.below.elt_str(c.rep)
            if i == 0:
                parts.append(cs)
            else:
                head = self.name if i == 1 else f"{self.name}^{i}"
                parts.append(head if cs == "1" else f"({cs})*{head}")
        return " + ".join(parts) if parts else "0"

    def is_finite(self):
        return self.below.is_finite()

    def pbasis(self):
        lifted = [self.lift_from(b) for b in self.below.pbasis()]
        if self.kind == "inseparable":
            lifted[self._insep_slot] = self.gen()
        return lifted

    def _power_solver(self):
        # coordinates beta with x = sum_j beta_j gen^(j*p), solved over `below`
        if self._pc_solver is None:
            d = self.degree
            cols = [self.gen_power(j * self.p).rep for j in range(d)]
            M = [[cols[j][i] for j in range(d)] for i in range(d)]
            Minv = linalg.inverse(M, self.below)
            assert Minv is not None, "separable step must satisfy K = B(x^p)"
            self._pc_solver = Minv
        return self._pc_solver

    def power_coords(self, x: FieldElement) -> list[FieldElement]:
        assert x.field == self
        p, d = self.p, self.degree
        if self.kind == "separable":
            beta = linalg.mat_vec(self._power_solver(), list(x.rep))
            sub = [self.below.power_coords(bj) for bj in beta]
            out = []
            for idx in range(len(self.pbasis_exponents())):
                out.append(self.elt(tuple(sub[j][idx] for j in range(d))))
            return out
        # purely inseparable step: generator replaces p-basis slot i
        i = self._insep_slot
        exps_below = self.below.pbasis_exponents()
        index_below = {e: k for k, e in enumerate(exps_below)}
        sub = [self.below.power_coords(comp) for comp in x.rep]
        out = []
        for E in self.pbasis_exponents():
            j = E[i]
            comps = []
            for ei in range(p):
                e = list(E)
                e[i] = ei
                comps.append(sub[j][index_below[tuple(e)]])
            out.append(self.elt(tuple(comps)))
        return out

    def random(self, rng, height=2):
        return self.elt(tuple(self.below.random(rng, height) for _ in range(self.degree)))


# ----------------------------------------------------------------------
# tower construction

def rational_field(p: int = 2, k: int = 1, names=(), modulus=None,
                   limits: Limits = DEFAULT_LIMITS) -> RationalField:
    if len(names) > limits.max_transcendentals:
        raise DegreeCapExceeded(f"more than {limits.max_transcendentals} transcendentals")
    return RationalField(GF(p, k, modulus), tuple(names))


def formal_derivative(coeffs: list[FieldElement], field) -> list[FieldElement]:
    out = []
    for i in range(1, len(coeffs)):
        acc = field.zero_elt()
        for _ in range(i % field.p):
            acc = acc + coeffs[i]
        out.append(acc)
    while out and out[-1].is_zero():
        out.pop()
    return out


def classify_step(coeffs, field) -> str:
    return "separable" if formal_derivative(coeffs, field) else "inseparable"


def extend(field: Field, name: str, coeffs, trusted: bool = False,
           rng: random.Random | None = None, limits: Limits = DEFAULT_LIMITS) -> ExtensionField:
    """Adjoin a root of the monic polynomial with the given coefficients (low->high)."""
    cs = []
    for c in coeffs:
        if isinstance(c, int):
            c = field.from_int(c)
        elif c.field != field:
            c = field.lift_from(c)
        cs.append(c)
    if len(cs) < 2 or cs[-1] != field.one_elt():
        raise NotSimpleStep("step polynomial must be monic of degree >= 1")
    deg = len(cs) - 1
    total = deg
    f = field
    while isinstance(f, ExtensionField):
        total *= f.degree
        f = f.below
    if total > limits.max_total_degree:
        raise DegreeCapExceeded(f"total degree {total} exceeds cap {limits.max_total_degree}")
    kind = classify_step(cs, field)
    if kind == "inseparable":
        p = field.p
        if deg != p or any(not c.is_zero() for c in cs[1:-1]):
            raise UnsupportedInseparableStep("inseparable steps must look like X^p - b")
        b = -cs[0]
        if all(b != pb for pb in field.pbasis()):
            raise UnsupportedInseparableStep("X^p - b requires b to be a current p-basis element")
        cert = {"kind": "pth-root-shape"}
    elif trusted:
        cert = {"kind": "trusted"}
    elif deg == 1:
        cert = {"kind": "linear"}
    else:
        cert = certify_irreducible(field, cs, rng=rng, limits=limits)
    return ExtensionField(field, name, tuple(cs), kind, certificate=cert)


# ----------------------------------------------------------------------
# irreducibility certificates

def _valuation_at_var(rep: Frac, i: int):
    if rep.is_zero():
        return None
    vn = min(e[i] for e in rep.num.terms)
    vd = min(e[i] for e in rep.den.terms)
    return vn - vd


def _eisenstein_cert(field, cs):
    if not isinstance(field, RationalField) or not field.names:
        return None
    deg = len(cs) - 1
    for i in range(len(field.names)):
        vals = [_valuation_at_var(c.rep, i) for c in cs[:deg]]
        if all(v is None or v >= 1 for v in vals) and vals[0] == 1:
            return {"kind": "eisenstein", "at": field.names[i]}
    return None


class _SpecFail(Exception):
    pass


class _TowerSpecializer:
    """Reduce a whole tower modulo a place t_i -> e_i into a chain of finite fields."""

    def __init__(self, bottom: RationalField, m: int, rng: random.Random):
        gf = bottom.gf
        h = poly_random_irreducible(gf, m, rng)
        self.E0 = QuotientField(gf, h)
        self.bottom = bottom
        self.point = tuple(self.E0.random(rng) for _ in bottom.names)
        self.tops = [self.E0]

    def top(self):
        return self.tops[-1]

    def _embed_up(self, val, from_idx):
        for E in self.tops[from_idx + 1:]:
            val = E.from_base(val)
        return val

    def eval(self, x: FieldElement):
        """Image of x in the top specialized field; raises _SpecFail on a bad place."""
        lvl = x.field.chain()
        idx = len(lvl) - 1
        return self._embed_up(self._eval_at(x, idx), idx)

    def _eval_at(self, x, idx):
        field = x.field
        if isinstance(field, RationalField):
            E = self.E0
            dval = x.rep.den.eval_in(E, E.from_base, self.point)
            if dval == E.zero:
                raise _SpecFail("denominator vanishes at the specialization point")
            nval = x.rep.num.eval_in(E, E.from_base, self.point)
            return E.div(nval, dval)
        E = self.tops[idx]
        acc = E.zero
        for i in reversed(range(len(x.rep))):
            acc = E.mul(acc, E.gen)
            acc = E.add(acc, E.from_base(self._eval_at(x.rep[i], idx - 1)))
        return acc

    def push_level(self, coeffs):
        """Specialize a step polynomial; extend the chain if it stays irreducible."""
        fbar = [self.eval(c) for c in coeffs]
        E = self.top()
        if not poly_is_irreducible(E, fbar):
            raise _SpecFail("specialized step polynomial is reducible")
        self.tops.append(QuotientField(E, fbar))
        return fbar


def certify_irreducible(field: Field, cs, rng=None, limits: Limits = DEFAULT_LIMITS):
    """Certificate that the monic polynomial cs is irreducible over `field`.

    Strategies: Eisenstein at a transcendental, then random specialization
    of the whole tower into finite fields (a degree-preserving irreducible
    image of a monic polynomial certifies irreducibility, since monic
    factors have coefficients in the valuation ring of the place).
    """
    cert = _eisenstein_cert(field, cs)
    if cert is not None:
        return cert
    rng = rng or random.Random(0xC0FFEE)
    bottom = field.bottom()
    if not isinstance(bottom, RationalField):
        raise IrreducibilityUnknown("unsupported bottom field")
    steps = [lvl for lvl in field.chain() if isinstance(lvl, ExtensionField)]
    if not bottom.names:
        # no transcendentals: the "specialization" is an isomorphism, so this
        # is an exact decision rather than a certificate
        try:
            sp = _TowerSpecializer(bottom, 1, rng)
            for lvl in steps:
                sp.push_level(list(lvl.minpoly))
            if poly_is_irreducible(sp.top(), [sp.eval(c) for c in cs]):
                return {"kind": "finite-field"}
        except _SpecFail:
            pass
        raise IrreducibilityUnknown("reducible (exact check over a finite tower)")
    m = limits.spec_ext_degree
    for attempt in range(limits.spec_tries):
        try:
            sp = _TowerSpecializer(bottom, m, rng)
            for lvl in steps:
                sp.push_level(list(lvl.minpoly))
            fbar = [sp.eval(c) for c in cs]
            if poly_is_irreducible(sp.top(), fbar):
                return {"kind": "specialization", "ext_degree": m, "attempt": attempt}
        except _SpecFail:
            pass
        if attempt % 4 == 3 and m < limits.spec_max_ext_degree:
            m += 1
    raise IrreducibilityUnknown(
        f"no irreducible specialization found in {limits.spec_tries} tries")


# ----------------------------------------------------------------------
# characteristic polynomials, norms, the coefficient functional

@dataclass
class CharPolyData:
    """f(X) = X^n + a_1 X^{n-1} + ... + a_n for multiplication by the element."""
    coeffs: tuple  # (a_1, ..., a_n), FieldElements of the base
    norm: FieldElement
    degree: int
    min_poly: tuple  # monic, low -> high, over the base

    def a(self, i: int):
        return self.coeffs[i - 1]


def char_poly(x: FieldElement, base) -> CharPolyData:
    """Characteristic data of multiplication-by-x on x.field over `base`."""
    K = x.field
    if not K.has_subfield(base):
        raise TowerMismatch(f"{base} is not below {K}")
    M = K.mult_matrix_over(x, base)
    lows = linalg.charpoly(M, base)  # det(XI - M) = X^n + lows[n-1] X^{n-1} + ... + lows[0]
    n = len(lows)
    coeffs = tuple(lows[n - i] for i in range(1, n + 1))
    nrm = linalg.det(M, base)
    mp = min_poly(x, base)
    return CharPolyData(coeffs=coeffs, norm=nrm, degree=n, min_poly=tuple(mp))


def min_poly(x: FieldElement, base) -> list[FieldElement]:
    """Monic minimal polynomial of x over `base` via the kernel of powers."""
    K = x.field
    n = K.degree_over(base)
    rows = [K.coords_over(K.one_elt(), base)]
    power = K.one_elt()
    for d in range(1, n + 1):
        power = power * x
        rows.append(K.coords_over(power, base))
        R, T, _ = linalg.rref_with_transform(rows, base)
        if all(c.is_zero() for c in R[-1]):
            comb = T[-1]
            lead = comb[d]
            inv = lead.inv()
            return [c * inv for c in comb]
    raise AssertionError("no dependence among powers up to the field degree")


def norm(x: FieldElement, base) -> FieldElement:
    return linalg.det(x.field.mult_matrix_over(x, base), base)


def functional_s(x: FieldElement, step: ExtensionField | None = None) -> FieldElement:
    """Coefficient of 1 in the expansion of x on 1, g, ..., g^{n-1} of its step."""
    K = step or x.field
    if not isinstance(K, ExtensionField):
        raise NotSimpleStep("the coefficient functional needs a simple step")
    if x.field != K:
        x = K.lift_from(x)
    return x.rep[0]


def sqrt(x: FieldElement):
    """y with y^p = x (p = 2: the square root), or None when x is not a p-th power."""
    return x.field.pth_root(x)
