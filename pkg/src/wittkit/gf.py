"""Finite field arithmetic and univariate polynomial machinery.

Elements of GF(p^k) are plain ints in [0, p^k): the base-p digits of an
int are the coefficients of a polynomial over GF(p), reduced modulo a
monic irreducible modulus of degree k.  Zero and one are always 0 and 1,
and for k = 1 the encoding is just the integer mod p.

Univariate polynomials over a finite field (or a quotient field built on
one) are lists of field elements, low degree first, with no trailing
zeros ([] is the zero polynomial).  All poly_* functions take the
coefficient field as their first argument, so the same code serves
GF(p^k) and the quotient fields used by irreducibility certificates.
"""

from __future__ import annotations

import random

from .errors import DivisionByZero

_MAX_TABLE_ORDER = 1 << 16  # build exp/log tables below this size


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(n % p)
        n //= p
    return out


def _undigits(ds, p: int) -> int:
    n = 0
    for d in reversed(ds):
        n = n * p + d
    return n


# ----------------------------------------------------------------------
# polynomials over GF(p) with int coefficients (only used to build moduli)

def _gfp_pmul(p, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _gfp_pmod(p, a, m):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _gfp_irreducible(p, m):
    """Trial-division irreducibility for a monic poly over GF(p) (small degrees)."""
    d = len(m) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    # no roots
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(m)) % p == 0:
            return False
    # divide by every monic poly of degree 2..d//2
    for deg in range(2, d // 2 + 1):
        for idx in range(p ** deg):
            q = _digits(idx, p, deg) + [1]
            if not _gfp_pmod(p, m, q):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p)."""
    if k == 1:
        return (0, 1)
    for idx in range(p ** k):
        m = _digits(idx, p, k) + [1]
        if _gfp_irreducible(p, m):
            return tuple(m)
    raise RuntimeError("no irreducible modulus found")  # unreachable


class GF:
    """The field GF(p^k); elements are ints in [0, p^k)."""

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = tuple(modulus) if modulus is not None else default_modulus(p, k)
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        self.zero = 0
        self.one = 1
        self._exp = None
        self._log = None
        if 2 < self.order <= _MAX_TABLE_ORDER:
            self._build_tables()
        if p == 2:
            # hot path: additive structure is xor, negation is identity
            self.add = lambda a, b: a ^ b
            self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
            if self._exp is not None:
                exp, log, n = self._exp, self._log, self.order - 1
                self.mul = lambda a, b: exp[(log[a] + log[b]) % n] if a and b else 0
                self.inv = self._inv_table

    # -- construction helpers

    def from_int(self, n: int) -> int:
        """Image of the integer n (i.e. n * 1)."""
        return n % self.p

    def elements(self):
        return range(self.order)

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return (isinstance(other, GF) and self.p == other.p and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))

    # -- arithmetic

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        da, db = _digits(a, p, self.k), _digits(b, p, self.k)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return _undigits([(-x) % self.p for x in _digits(a, self.p, self.k)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = _digits(a, p, k), _digits(b, p, k)
        prod = _gfp_pmul(p, da, db)
        prod = _gfp_pmod(p, prod, list(self.modulus))
        return _undigits(prod, p)

    def _build_tables(self):
        n = self.order - 1
        # factor the (tiny) group order once
        fac, m = [], n
        d = 2
        while d * d <= m:
            if m % d == 0:
                fac.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            fac.append(m)
        gen = None
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, n // q) != 1 for q in fac):
                gen = cand
                break
        assert gen is not None
        exp = [1] * n
        log = [0] * self.order
        v = 1
        for i in range(n):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, gen)
        self._exp, self._log = exp, log

    def _pow_raw(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(self._log[a] + self._log[b]) % n]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in " + repr(self))
        if a == 1:
            return 1
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        return self._pow_raw(a, self.order - 2)

    def _inv_table(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in " + repr(self))
        n = self.order - 1
        return self._exp[(n - self._log[a]) % n]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def pth_root(self, a: int) -> int:
        """Inverse Frobenius; total since GF(p^k) is perfect."""
        return self.pow(a, self.p ** (self.k - 1))

    def trace(self, a: int) -> int:
        """Absolute trace into GF(p), returned as an int in [0, p)."""
        t, x = 0, a
        for _ in range(self.k):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        assert t < self.p
        return t

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.order)


class QuotientField:
    """base[X]/(m) for a monic irreducible m over a finite field `base`.

    Elements are tuples of base elements of length deg(m).  Used by the
    specialization-based irreducibility certificates, where towers get
    collapsed into chains of these.
    """

    def __init__(self, base, modpoly):
        self.base = base
        self.mod = list(modpoly)
        self.deg = len(self.mod) - 1
        assert self.deg >= 1 and self.mod[-1] == base.one
        self.p = base.p
        self.order = base.order ** self.deg
        self.zero = tuple([base.zero] * self.deg)
        self.one = tuple([base.one] + [base.zero] * (self.deg - 1))
        self.gen = tuple([base.zero, base.one] + [base.zero] * (self.deg - 2)) \
            if self.deg >= 2 else tuple([base.neg(self.mod[0])])

    def from_base(self, c):
        return tuple([c] + [self.base.zero] * (self.deg - 1))

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def add(self, a, b):
        bs = self.base
        return tuple(bs.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        bs = self.base
        return tuple(bs.neg(x) for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        bs = self.base
        prod = [bs.zero] * (2 * self.deg - 1)
        for i, ai in enumerate(a):
            if ai != bs.zero:
                for j, bj in enumerate(b):
                    if bj != bs.zero:
                        prod[i + j] = bs.add(prod[i + j], bs.mul(ai, bj))
        # reduce modulo the monic modulus
        for i in range(len(prod) - 1, self.deg - 1, -1):
            c = prod[i]
            if c != bs.zero:
                for j in range(self.deg):
                    prod[i - self.deg + j] = bs.sub(prod[i - self.deg + j],
                                                    bs.mul(c, self.mod[j]))
            prod[i] = bs.zero
        return tuple(prod[:self.deg])

    def pow(self, a, e):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZero("inverse of 0 in quotient field")
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pth_root(self, a):
        return self.pow(a, self.order // self.p)

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.deg))

    def __repr__(self):
        return f"{self.base!r}[x]/(deg {self.deg})"


# ----------------------------------------------------------------------
# generic dense univariate polynomials over a finite field object `fld`

def poly_norm(fld, a):
    a = list(a)
    while a and a[-1] == fld.zero:
        a.pop()
    return a


def poly_deg(a):
    return len(a) - 1  # -1 for the zero polynomial


def poly_add(fld, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = fld.add(out[i], c)
    return poly_norm(fld, out)


def poly_neg(fld, a):
    return [fld.neg(c) for c in a]


def poly_sub(fld, a, b):
    return poly_add(fld, a, poly_neg(fld, b))


def poly_scale(fld, a, c):
    if c == fld.zero:
        return []
    return poly_norm(fld, [fld.mul(x, c) for x in a])


def poly_mul(fld, a, b):
    if not a or not b:
        return []
    out = [fld.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != fld.zero:
            for j, bj in enumerate(b):
                if bj != fld.zero:
                    out[i + j] = fld.add(out[i + j], fld.mul(ai, bj))
    return poly_norm(fld, out)


def poly_divmod(fld, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db, lead = poly_deg(b), b[-1]
    inv_lead = fld.inv(lead)
    q = [fld.zero] * max(0, len(a) - db)
    while poly_deg(a) >= db:
        c = fld.mul(a[-1], inv_lead)
        shift = poly_deg(a) - db
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = fld.sub(a[shift + i], fld.mul(c, bi))
        a = poly_norm(fld, a)
        if not a:
            break
    return poly_norm(fld, q), poly_norm(fld, a)


def poly_mod(fld, a, b):
    return poly_divmod(fld, a, b)[1]


def poly_monic(fld, a):
    if not a:
        return []
    return poly_scale(fld, a, fld.inv(a[-1]))


def poly_gcd(fld, a, b):
    a, b = poly_norm(fld, a), poly_norm(fld, b)
    while b:
        a, b = b, poly_mod(fld, a, b)
    return poly_monic(fld, a)


def poly_extgcd(fld, a, b):
    """Return (g, u, v) with u*a + v*b = g monic."""
    r0, r1 = poly_norm(fld, a), poly_norm(fld, b)
    s0, s1 = [fld.one], []
    t0, t1 = [], [fld.one]
    while r1:
        q, r = poly_divmod(fld, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(fld, s0, poly_mul(fld, q, s1))
        t0, t1 = t1, poly_sub(fld, t0, poly_mul(fld, q, t1))
    if not r0:
        return [], s0, t0
    c = fld.inv(r0[-1])
    return poly_scale(fld, r0, c), poly_scale(fld, s0, c), poly_scale(fld, t0, c)


def poly_invmod(fld, a, m):
    g, u, _ = poly_extgcd(fld, a, m)
    if poly_deg(g) != 0:
        return None
    return poly_mod(fld, u, m)


def poly_powmod(fld, a, e, m):
    r = [fld.one]
    a = poly_mod(fld, a, m)
    while e:
        if e & 1:
            r = poly_mod(fld, poly_mul(fld, r, a), m)
        a = poly_mod(fld, poly_mul(fld, a, a), m)
        e >>= 1
    return r


def poly_deriv(fld, a):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        r = fld.zero
        for _ in range(i % fld.p):
            r = fld.add(r, c)
        out.append(r)
    return poly_norm(fld, out)


def poly_eval(fld, a, x):
    r = fld.zero
    for c in reversed(a):
        r = fld.add(fld.mul(r, x), c)
    return r


def poly_is_irreducible(fld, f) -> bool:
    """Rabin's test over a finite field of order fld.order."""
    f = poly_monic(fld, f)
    n = poly_deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    q = fld.order
    x = [fld.zero, fld.one]
    # x^(q^n) == x mod f
    xp = x
    for _ in range(n):
        xp = poly_powmod(fld, xp, q, f)
    if poly_norm(fld, poly_sub(fld, xp, x)):
        return False
    # gcd(x^(q^(n/l)) - x, f) == 1 for each prime l | n
    primes, m, d = [], n, 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    for l in primes:
        xp = x
        for _ in range(n // l):
            xp = poly_powmod(fld, xp, q, f)
        if poly_deg(poly_gcd(fld, poly_sub(fld, xp, x), f)) > 0:
            return False
    return True


def _poly_pth_root(fld, f):
    # f in fld[X^p]: take p-th roots of coefficients and divide exponents by p
    p = fld.p
    out = [fld.zero] * (poly_deg(f) // p + 1)
    for i, c in enumerate(f):
        if c != fld.zero:
            assert i % p == 0
            out[i // p] = fld.pth_root(c)
    return poly_norm(fld, out)


def poly_squarefree_part(fld, f):
    """Monic list of (squarefree factor, multiplicity) pairs (Yun, char p)."""
    f = poly_monic(fld, f)
    out = []
    e = 1
    while poly_deg(f) > 0:
        fp = poly_deriv(fld, f)
        if not fp:
            f = _poly_pth_root(fld, f)
            e *= fld.p
            continue
        g = poly_gcd(fld, f, fp)
        w = poly_divmod(fld, f, g)[0]
        i = 1
        while poly_deg(w) > 0:
            y = poly_gcd(fld, w, g)
            z = poly_divmod(fld, w, y)[0]
            if poly_deg(z) > 0:
                out.append((z, i * e))
            w = y
            g = poly_divmod(fld, g, y)[0]
            i += 1
        f = g
        if poly_deg(f) > 0:
            f = _poly_pth_root(fld, f)
            e *= fld.p
    return out


def _equal_degree_split(fld, f, d, rng):
    """One Cantor-Zassenhaus split of a squarefree f whose factors all have degree d."""
    n = poly_deg(f)
    q = fld.order
    while True:
        g = [fld.random(rng) for _ in range(n)]
        g = poly_norm(fld, g)
        if poly_deg(g) < 1:
            continue
        h = poly_gcd(fld, g, f)
        if 0 < poly_deg(h) < n:
            return h
        if fld.p == 2:
            # trace map sum_{i<k*d} g^(2^i)
            t, acc = [], poly_mod(fld, g, f)
            k = 0
            qq = q
            while qq > 1:
                qq //= 2
                k += 1
            t = [fld.zero]
            for _ in range(k * d):
                t = poly_mod(fld, poly_add(fld, t, acc), f)
                acc = poly_mod(fld, poly_mul(fld, acc, acc), f)
        else:
            t = poly_sub(fld, poly_powmod(fld, g, (q ** d - 1) // 2, f), [fld.one])
        h = poly_gcd(fld, t, f)
        if 0 < poly_deg(h) < n:
            return h


def poly_factor(fld, f, seed=0):
    """Full factorization into monic irreducibles: list of (factor, multiplicity)."""
    rng = random.Random(seed ^ 0x5eed)
    lead = f[-1]
    out = []
    for sf, mult in poly_squarefree_part(fld, f):
        # distinct-degree
        h = [fld.zero, fld.one]
        v = list(sf)
        d = 0
        while poly_deg(v) > 0:
            d += 1
            if poly_deg(v) < 2 * d:
                out.append((poly_monic(fld, v), mult))
                break
            h = poly_powmod(fld, h, fld.order, v)
            g = poly_gcd(fld, poly_sub(fld, h, [fld.zero, fld.one]), v)
            if poly_deg(g) > 0:
                # split g into its degree-d irreducible factors
                stack = [g]
                while stack:
                    w = stack.pop()
                    if poly_deg(w) == d:
                        out.append((poly_monic(fld, w), mult))
                    else:
                        piece = _equal_degree_split(fld, w, d, rng)
                        stack.append(piece)
                        stack.append(poly_divmod(fld, w, piece)[0])
                v = poly_divmod(fld, v, g)[0]
                h = poly_mod(fld, h, v)
    out.sort(key=lambda fm: (poly_deg(fm[0]), fm[0]))
    return lead, out


def poly_random_irreducible(fld, degree, rng):
    while True:
        f = [fld.random(rng) for _ in range(degree)] + [fld.one]
        if poly_is_irreducible(fld, f):
            return f
