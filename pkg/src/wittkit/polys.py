"""Multivariate polynomials and normalized fractions over GF(p^k).

A polynomial is a dict {exponent tuple: nonzero coefficient int} plus a
ring handle carrying the coefficient field and the variable names.  The
monomial order is graded lexicographic with the declared variable order;
it fixes leading terms, canonical fractions and all serialized output.

Fractions keep numerator and denominator coprime with a monic
denominator (leading coefficient 1 under grlex), so structural equality
is element equality.
"""

from __future__ import annotations

from .errors import DivisionByZero
from .gf import GF, poly_norm


def _grlex_key(exps):
    return (sum(exps), exps)


class PolyRing:
    def __init__(self, gf: GF, names: tuple[str, ...]):
        self.gf = gf
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.zero = MPoly(self, {})
        self.one = MPoly(self, {(0,) * self.nvars: 1})

    def const(self, c: int) -> "MPoly":
        if c == 0:
            return self.zero
        return MPoly(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "MPoly":
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): 1})

    def from_int(self, n: int) -> "MPoly":
        return self.const(self.gf.from_int(n))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.gf == other.gf and self.names == other.names

    def __hash__(self):
        return hash((self.gf, self.names))

    def __repr__(self):
        return f"{self.gf!r}[{','.join(self.names)}]"


class MPoly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- predicates / accessors

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.ring.nvars: 1}

    def is_const(self):
        return all(sum(e) == 0 for e in self.terms)

    def const_value(self) -> int:
        if not self.terms:
            return 0
        return self.terms[(0,) * self.ring.nvars]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def leading(self):
        """(exponent, coefficient) of the grlex-largest term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic

    def __add__(self, other):
        gf = self.ring.gf
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = gf.add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.ring, out)

    def __neg__(self):
        gf = self.ring.gf
        if gf.p == 2:
            return self
        return MPoly(self.ring, {e: gf.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        gf = self.ring.gf
        if not self.terms or not other.terms:
            return self.ring.zero
        if self.is_one():
            return other
        if other.is_one():
            return self
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = gf.add(out.get(e, 0), gf.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.ring, out)

    def scale(self, c: int):
        gf = self.ring.gf
        if c == 0:
            return self.ring.zero
        if c == 1:
            return self
        return MPoly(self.ring, {e: gf.mul(v, c) for e, v in self.terms.items()})

    def shift(self, var_index: int, amount: int):
        """Multiply by var^amount."""
        out = {}
        for e, c in self.terms.items():
            ee = list(e)
            ee[var_index] += amount
            out[tuple(ee)] = c
        return MPoly(self.ring, out)

    def __pow__(self, n):
        r = self.ring.one
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- p-th powers

    def is_pth_power(self):
        p = self.ring.gf.p
        return all(all(x % p == 0 for x in e) for e in self.terms)

    def pth_root(self):
        gf = self.ring.gf
        p = gf.p
        out = {}
        for e, c in self.terms.items():
            out[tuple(x // p for x in e)] = gf.pth_root(c)
        return MPoly(self.ring, out)

    def frobenius(self):
        gf = self.ring.gf
        p = gf.p
        return MPoly(self.ring, {tuple(x * p for x in e): gf.pow(c, p) for e, c in self.terms.items()})

    # -- evaluation into a finite field (or quotient field) E with gf embedded

    def eval_in(self, E, embed, point):
        """Evaluate at point (tuple of E elements); embed maps gf ints into E."""
        acc = E.zero
        for e, c in self.terms.items():
            t = embed(c)
            for x, k in zip(point, e):
                for _ in range(k):
                    t = E.mul(t, x)
            acc = E.add(acc, t)
        return acc

    def __repr__(self):
        return poly_str(self)


def poly_str(f: MPoly) -> str:
    if f.is_zero():
        return "0"
    gf = f.ring.gf
    parts = []
    for e, c in f.sorted_terms():
        factors = []
        if c != 1 or sum(e) == 0:
            factors.append(str(c) if gf.k == 1 else f"g{c}")
        for name, k in zip(f.ring.names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        parts.append("*".join(factors))
    return " + ".join(parts)


# ----------------------------------------------------------------------
# exact division and gcd

def _dense_in(f: MPoly, i: int):
    out = [0] * (f.degree_in(i) + 1)
    for e, c in f.terms.items():
        out[e[i]] = c
    return out


def _undense_in(ring, lst, i):
    terms = {}
    for k, c in enumerate(lst):
        if c:
            e = [0] * ring.nvars
            e[i] = k
            terms[tuple(e)] = c
    return MPoly(ring, terms)


def exact_div(a: MPoly, b: MPoly) -> MPoly:
    """a / b when the division is exact; raises ValueError otherwise."""
    if b.is_zero():
        raise DivisionByZero("exact_div by zero polynomial")
    if a.is_zero():
        return a.ring.zero
    gf = a.ring.gf
    if b.is_const():
        return a.scale(gf.inv(b.const_value()))
    i = _main_var(a, b)
    if i is not None and _univar_in(a, i) and _univar_in(b, i):
        # dense synthetic division
        x, y = _dense_in(a, i), _dense_in(b, i)
        inv = gf.inv(y[-1])
        dy = len(y) - 1
        q = [0] * (len(x) - dy)
        for top in range(len(x) - 1, dy - 1, -1):
            c = x[top]
            if c:
                c = gf.mul(c, inv)
                q[top - dy] = c
                for k in range(dy + 1):
                    x[top - dy + k] = gf.sub(x[top - dy + k], gf.mul(c, y[k]))
        if any(x):
            raise ValueError("division not exact")
        return _undense_in(a.ring, q, i)
    out = {}
    rem = dict(a.terms)
    eb, cb = b.leading()
    cb_inv = gf.inv(cb)
    while rem:
        ea = max(rem, key=_grlex_key)
        ca = rem[ea]
        e = tuple(x - y for x, y in zip(ea, eb))
        if any(x < 0 for x in e):
            raise ValueError("division not exact")
        c = gf.mul(ca, cb_inv)
        out[e] = c
        for e2, c2 in b.terms.items():
            ee = tuple(x + y for x, y in zip(e, e2))
            s = gf.sub(rem.get(ee, 0), gf.mul(c, c2))
            if s:
                rem[ee] = s
            else:
                rem.pop(ee, None)
    return MPoly(a.ring, out)


def _univar_in(f: MPoly, i: int) -> bool:
    return all(all(x == 0 for j, x in enumerate(e) if j != i) for e in f.terms)


def _main_var(a: MPoly, b: MPoly):
    for i in reversed(range(a.ring.nvars)):
        if a.degree_in(i) > 0 or b.degree_in(i) > 0:
            return i
    return None


def _to_univar(f: MPoly, i: int) -> list[MPoly]:
    """Coefficient list of f viewed as a univariate poly in variable i."""
    d = f.degree_in(i)
    coeffs = [dict() for _ in range(d + 1)]
    for e, c in f.terms.items():
        ee = list(e)
        k = ee[i]
        ee[i] = 0
        coeffs[k][tuple(ee)] = c
    return [MPoly(f.ring, t) for t in coeffs]


def _from_univar(ring, coeffs, i):
    out = {}
    for k, c in enumerate(coeffs):
        for e, v in c.terms.items():
            ee = list(e)
            ee[i] = k
            out[tuple(ee)] = v
    return MPoly(ring, out)


def _content(coeffs: list[MPoly]) -> MPoly:
    g = coeffs[0].ring.zero
    for c in coeffs:
        g = mgcd(g, c)
        if g.is_one():
            break
    return g


def _uni_norm(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _pseudo_rem(ring, A, B):
    """Pseudo-remainder of univariate-with-MPoly-coefficient lists."""
    A = list(A)
    db = len(B) - 1
    lb = B[-1]
    while len(A) - 1 >= db and A:
        la = A[-1]
        shift = len(A) - 1 - db
        A = [c * lb for c in A]
        for j in range(db + 1):
            A[shift + j] = A[shift + j] - la * B[j]
        A = _uni_norm(A)
    return A


def _normalize_gcd(g: MPoly) -> MPoly:
    if g.is_zero():
        return g
    _, c = g.leading()
    return g.scale(g.ring.gf.inv(c))


def mgcd(a: MPoly, b: MPoly) -> MPoly:
    """Monic gcd; primitive PRS in the highest active variable."""
    if a.is_zero():
        return _normalize_gcd(b)
    if b.is_zero():
        return _normalize_gcd(a)
    if a.is_const() or b.is_const():
        return a.ring.one
    i = _main_var(a, b)
    if i is None:
        return a.ring.one
    if _univar_in(a, i) and _univar_in(b, i):
        # plain Euclid on dense lists over gf
        return _euclid_univar(a, b, i)
    A, B = _to_univar(a, i), _to_univar(b, i)
    ca, cb = _content(A), _content(B)
    A = [exact_div(c, ca) for c in A]
    B = [exact_div(c, cb) for c in B]
    cont = mgcd(ca, cb)
    if len(A) < len(B):
        A, B = B, A
    while True:
        if not B:
            cA = _content(A)
            prim = [exact_div(c, cA) for c in A]
            g = _from_univar(a.ring, prim, i)
            break
        if len(B) == 1:
            g = a.ring.one
            break
        R = _pseudo_rem(a.ring, A, B)
        if R:
            cR = _content(R)
            R = [exact_div(c, cR) for c in R]
        A, B = B, R
    return _normalize_gcd(g * cont)


def _euclid_univar(a: MPoly, b: MPoly, i: int) -> MPoly:
    gf = a.ring.gf
    mul, sub, inv_of = gf.mul, gf.sub, gf.inv
    x, y = _dense_in(a, i), _dense_in(b, i)
    while True:
        while y and not y[-1]:
            y.pop()
        if not y:
            break
        inv = inv_of(y[-1])
        dy = len(y) - 1
        # remainder of x by y, in place
        while len(x) - 1 >= dy:
            if not x[-1]:
                x.pop()
                continue
            c = mul(x[-1], inv)
            shift = len(x) - 1 - dy
            for j, cy in enumerate(y):
                if cy:
                    x[shift + j] = sub(x[shift + j], mul(c, cy))
            x.pop()
        x, y = y, x
    while x and not x[-1]:
        x.pop()
    if not x:
        return a.ring.zero
    inv = inv_of(x[-1])
    return _undense_in(a.ring, [mul(c, inv) for c in x], i)


# ----------------------------------------------------------------------
# normalized fractions

class Frac:
    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly, reduce=True):
        if den.is_zero():
            raise DivisionByZero("fraction with zero denominator")
        if reduce:
            if num.is_zero():
                den = num.ring.one
            else:
                g = mgcd(num, den)
                if not g.is_one():
                    num = exact_div(num, g)
                    den = exact_div(den, g)
            _, lc = den.leading()
            if lc != 1:
                inv = num.ring.gf.inv(lc)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @staticmethod
    def of(p: MPoly):
        return Frac(p, p.ring.one, reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __add__(self, other):
        # keep gcd inputs small: with reduced operands, only the common
        # denominator part can cancel against the combined numerator
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        if self.den.is_one():
            return Frac(self.num * other.den + other.num, other.den, reduce=False)
        if other.den.is_one():
            return Frac(self.num + other.num * self.den, self.den, reduce=False)
        g = mgcd(self.den, other.den)
        if g.is_one():
            return Frac(self.num * other.den + other.num * self.den,
                        self.den * other.den, reduce=False)
        da, db = exact_div(self.den, g), exact_div(other.den, g)
        num = self.num * db + other.num * da
        g2 = mgcd(num, g)
        if g2.is_one():
            return Frac(num, da * other.den, reduce=False)
        return Frac(exact_div(num, g2), da * exact_div(other.den, g2), reduce=False)

    def __neg__(self):
        return Frac(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # cross-cancel so the products of reduced fractions stay reduced
        if self.is_zero() or other.is_zero():
            return Frac(self.num.ring.zero, self.num.ring.one, reduce=False)
        a_num, a_den = self.num, self.den
        b_num, b_den = other.num, other.den
        if not b_den.is_one():
            g = mgcd(a_num, b_den)
            if not g.is_one():
                a_num, b_den = exact_div(a_num, g), exact_div(b_den, g)
        if not a_den.is_one():
            g = mgcd(b_num, a_den)
            if not g.is_one():
                b_num, a_den = exact_div(b_num, g), exact_div(a_den, g)
        den = a_den * b_den
        _, lc = den.leading()
        num = a_num * b_num
        if lc != 1:
            inv = num.ring.gf.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return Frac(num, den, reduce=False)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero fraction")
        return Frac(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def __eq__(self, other):
        return isinstance(other, Frac) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"
