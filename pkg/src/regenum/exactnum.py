"""Exact scalar arithmetic: integers, rationals, dense univariate
polynomials, and normalized rational functions over Q.

Python's ``int`` supplies the arbitrary-precision integers and
``fractions.Fraction`` the rationals.  The polynomial layer is our own
because the rest of the pipeline needs tight control over normalization
(primitive parts, canonical denominators) and over where gcds happen:
every gcd in the hot paths runs on primitive integer polynomials via a
primitive pseudo-remainder sequence, never on floating point and never
through modular images.

All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

Rat = Fraction
BigInt = int

#: Degree of the zero polynomial.
NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# Raw integer-coefficient polynomial helpers.
#
# Polynomials are tuples/lists of ints, ascending powers, no trailing zeros.
# These back RatFunc and the fraction-free elimination; they avoid object
# overhead in the inner loops.
# ---------------------------------------------------------------------------

def ztrim(cs: list) -> list:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def zadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return ztrim(out)


def zsub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return ztrim(out)


def zneg(a):
    return [-c for c in a]


def zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return ztrim(out)


def zscale(a, c):
    if not c:
        return []
    return [x * c for x in a]


def zcontent(a) -> int:
    """Positive gcd of the coefficients; 0 for the zero polynomial."""
    g = 0
    for c in a:
        if c:
            g = _igcd(g, c)
            if g == 1:
                return 1
    return g


def zdivscalar(a, c):
    return [x // c for x in a]


def zprim(a):
    """Primitive part with positive leading coefficient, plus the signed
    content, so that ``a == content * primitive``."""
    if not a:
        return 0, []
    g = zcontent(a)
    if g == 1:
        if a[-1] > 0:
            return 1, list(a)
        return -1, [-x for x in a]
    if a[-1] < 0:
        g = -g
    return g, [x // g for x in a]


def zprem(a, b):
    """Pseudo-remainder of a by b (b non-zero, deg a >= deg b); the scaling
    power is whatever the elimination steps needed, which suffices for a
    content-stripping PRS."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lead = r[-1]
        r = [c * lb for c in r[:-1]]
        shift = dr - db
        for i, c in enumerate(b[:-1]):
            r[shift + i] -= lead * c
        ztrim(r)
    return r


def zgcd(a, b):
    """Gcd in Z[t] (contents included), positive leading coefficient.

    Primitive PRS: content is stripped after every pseudo-remainder, which
    keeps intermediate coefficients minimal; integer gcds are cheap next to
    carrying subresultant-sized coefficients through the eliminations.
    """
    if not a:
        return zprim(b)[1] if b else []
    if not b:
        return zprim(a)[1]
    ca, pa = zprim(a)
    cb, pb = zprim(b)
    gc = _igcd(ca, cb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = zprem(pa, pb)
        pa, pb = pb, zprim(r)[1]
    if gc != 1:
        pa = [c * gc for c in pa]
    return pa


def zdivexact(a, b):
    """Quotient a // b assuming exact divisibility in Z[t]."""
    if not a:
        return []
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    for i in range(len(q) - 1, -1, -1):
        if len(r) - 1 == i + len(b) - 1 and r:
            c = r[-1]
            qc = c // lb
            if qc * lb != c:
                raise ArithmeticError("inexact polynomial division")
            q[i] = qc
            if qc:
                for j, cb in enumerate(b):
                    r[i + j] -= qc * cb
            ztrim(r)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def zeval(a, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def zshift_arg(a, s):
    """Compose with a shifted argument: returns a(t + s) for integer s."""
    out = []
    for c in reversed(a):
        out = zadd(zmul(out, [s, 1]), [c] if c else [])
    return out


class UniPoly:
    """Dense univariate polynomial, ascending coefficients (int or Rat).

    The variable is written ``t`` by convention; recurrence coefficients
    reuse the class with the variable read as ``n``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        norm = []
        for c in cs:
            if isinstance(c, Fraction):
                norm.append(int(c) if c.denominator == 1 else c)
            else:
                norm.append(c)
        self.coeffs = tuple(norm)

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def var(cls):
        return cls((0, 1))

    @classmethod
    def monomial(cls, c, n):
        return cls((0,) * n + (c,))

    # -- structure ----------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other):
        out = list(self.coeffs) + [0] * (len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return UniPoly(out)

    def scale(self, c):
        if not c:
            return UniPoly()
        return UniPoly([x * c for x in self.coeffs])

    def __pow__(self, n: int):
        out = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other):
        """Exact field division with remainder (coefficients become Rat)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = [Fraction(c) for c in self.coeffs]
        lb = Fraction(other.coeffs[-1])
        db = len(other.coeffs) - 1
        while len(r) > db:
            c = r[-1] / lb
            i = len(r) - 1 - db
            q[i] = c
            for j, cb in enumerate(other.coeffs):
                r[i + j] -= c * cb
            while r and not r[-1]:
                r.pop()
            if len(r) <= db:
                break
        return UniPoly(q), UniPoly(r)

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shift_arg(self, s):
        """a(t + s) by Horner recomposition."""
        out = UniPoly()
        lin = UniPoly((s, 1))
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly((c,))
        return out

    # -- integer form -------------------------------------------------
    def as_integer_primitive(self):
        """Split into ``(content, primitive)`` with an integer primitive
        part of positive leading coefficient; content is a signed Rat."""
        if not self.coeffs:
            return Fraction(0), UniPoly()
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // _igcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g, prim = zprim(ints)
        return Fraction(g, den), UniPoly(prim)

    def int_coeffs(self):
        if any(isinstance(c, Fraction) for c in self.coeffs):
            raise ValueError("polynomial has non-integer coefficients")
        return list(self.coeffs)

    # -- printing -----------------------------------------------------
    def __str__(self):
        return self.to_str("t")

    def __repr__(self):
        return f"UniPoly({self.to_str('t')!r})"

    def to_str(self, var: str) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if n == 0:
                body = _coef_str(c)
            else:
                v = var if n == 1 else f"{var}^{n}"
                body = v if c == 1 else f"{_coef_str(c)}*{v}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coef_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


UP_ZERO = UniPoly()
UP_ONE = UniPoly((1,))
UP_T = UniPoly((0, 1))


def unipoly_gcd_content(a: UniPoly, b: UniPoly) -> UniPoly:
    """Primitive gcd with positive leading coefficient.

    Rational coefficients are admitted; the gcd is computed on the integer
    primitive parts, so content is stripped from the result.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    ia = a.as_integer_primitive()[1].int_coeffs()
    ib = b.as_integer_primitive()[1].int_coeffs()
    return UniPoly(zgcd(ia, ib))


class RatFunc:
    """Element of Q(t) in canonical form.

    Stored as ``c * np/dp`` where ``c`` is a signed Rat and ``np``, ``dp``
    are coprime primitive integer polynomials with positive leading
    coefficients.  The split keeps rational rescaling O(1) and keeps every
    polynomial gcd on integer-primitive operands.  Equality is structural.
    """

    __slots__ = ("c", "np", "dp")

    def __init__(self, c, np, dp):
        # Trusted constructor: arguments must already be canonical.
        self.c = c
        self.np = np
        self.dp = dp

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rat(cls, x) -> "RatFunc":
        x = Fraction(x)
        if not x:
            return RF_ZERO
        return cls(x, (1,), (1,))

    @classmethod
    def of(cls, num, den=None) -> "RatFunc":
        """Build from UniPoly/int/Rat numerator and denominator."""
        if not isinstance(num, UniPoly):
            num = UniPoly.const(Fraction(num))
        if den is None:
            den = UP_ONE
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(Fraction(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        cn, pn = num.as_integer_primitive()
        cd, pd = den.as_integer_primitive()
        if not cn:
            return RF_ZERO
        return cls._reduced(cn / cd, pn.int_coeffs(), pd.int_coeffs())

    @classmethod
    def _reduced(cls, c, np, dp):
        """Canonicalize a scalar and two integer polys (np may share factors
        with dp; signs/contents may be off)."""
        if not c or not np:
            return RF_ZERO
        g, np = zprim(np)
        h, dp = zprim(dp)
        c = c * Fraction(g, h)
        w = zgcd(np, dp)
        if len(w) > 1:
            # Gauss: quotients of primitives by their primitive gcd stay
            # primitive with positive leading coefficients.
            np = zdivexact(np, w)
            dp = zdivexact(dp, w)
        return cls(c, tuple(np), tuple(dp))

    # -- structure ----------------------------------------------------
    @property
    def num(self) -> UniPoly:
        return UniPoly([x * self.c for x in self.np]) if self.c else UP_ZERO

    @property
    def den(self) -> UniPoly:
        return UniPoly(self.dp)

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == 1 and self.np == (1,) and self.dp == (1,)

    def is_constant(self) -> bool:
        return self.np == (1,) and self.dp == (1,)

    def as_rational(self) -> Fraction:
        if not self.c:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.c == other.c and self.np == other.np and self.dp == other.dp
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.np, self.dp))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not other.c:
            return self
        if not self.c:
            return other
        n1, d1, n2, d2 = self.np, self.dp, other.np, other.dp
        a1, b1 = self.c.numerator, self.c.denominator
        a2, b2 = other.c.numerator, other.c.denominator
        bb = b1 * b2 // _igcd(b1, b2)
        if d1 == d2:
            g, e1, e2 = list(d1), [1], [1]
        else:
            g = zgcd(list(d1), list(d2))
            e1 = zdivexact(list(d1), g)
            e2 = zdivexact(list(d2), g)
        nn = zadd(
            zscale(zmul(list(n1), e2), a1 * (bb // b1)),
            zscale(zmul(list(n2), e1), a2 * (bb // b2)),
        )
        if not nn:
            return RF_ZERO
        w = zgcd(nn, g)
        if len(w) > 1:
            nn = zdivexact(nn, w)
            g = zdivexact(g, w)
        ct, nn = zprim(nn)
        dd = zmul(zmul(g, e1), e2)
        return RatFunc(Fraction(ct, bb), tuple(nn), tuple(dd))

    def __neg__(self):
        if not self.c:
            return self
        return RatFunc(-self.c, self.np, self.dp)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.c or not other.c:
            return RF_ZERO
        n1, d1, n2, d2 = self.np, self.dp, other.np, other.dp
        c = self.c * other.c
        if d2 != (1,) and n1 != (1,):
            w = zgcd(list(n1), list(d2))
            if len(w) > 1:
                n1 = zdivexact(list(n1), w)
                d2 = zdivexact(list(d2), w)
        if d1 != (1,) and n2 != (1,):
            w = zgcd(list(n2), list(d1))
            if len(w) > 1:
                n2 = zdivexact(list(n2), w)
                d1 = zdivexact(list(d1), w)
        return RatFunc(c, tuple(zmul(list(n1), list(n2))), tuple(zmul(list(d1), list(d2))))

    def inverse(self):
        if not self.c:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(1 / self.c, self.dp, self.np)

    def __truediv__(self, other):
        return self * other.inverse()

    def scale_rat(self, x) -> "RatFunc":
        """Multiply by a rational scalar; O(1)."""
        if not x or not self.c:
            return RF_ZERO
        return RatFunc(self.c * x, self.np, self.dp)

    def derivative(self) -> "RatFunc":
        if not self.c or (self.np == (1,) and self.dp == (1,)):
            return RF_ZERO
        n, d = list(self.np), list(self.dp)
        dn = ztrim([i * c for i, c in enumerate(n)][1:])
        if d == [1]:
            return RatFunc._reduced(self.c, dn, [1]) if dn else RF_ZERO
        dd = ztrim([i * c for i, c in enumerate(d)][1:])
        u = zsub(zmul(dn, d), zmul(n, dd))
        if not u:
            return RF_ZERO
        return RatFunc._reduced(self.c, u, zmul(d, d))

    def evaluate(self, x):
        if not self.c:
            return Fraction(0)
        d = zeval(self.dp, x)
        if not d:
            raise ZeroDivisionError("pole of rational function")
        return self.c * Fraction(zeval(self.np, x), 1) / d

    # -- printing -----------------------------------------------------
    def _display_pair(self):
        """Numerator/denominator as integer polynomials for printing."""
        num = UniPoly(zscale(list(self.np), self.c.numerator))
        den = UniPoly(zscale(list(self.dp), self.c.denominator))
        return num, den

    def __str__(self):
        if not self.c:
            return "0"
        num, den = self._display_pair()
        if den == UP_ONE:
            return str(num)
        ns = str(num) if len([c for c in num.coeffs if c]) == 1 else f"({num})"
        ds = str(den) if len([c for c in den.coeffs if c]) == 1 and den.degree <= 0 else f"({den})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({self})"


RF_ZERO = RatFunc(Fraction(0), (1,), (1,))
RF_ONE = RatFunc(Fraction(1), (1,), (1,))
RF_T = RatFunc(Fraction(1), (0, 1), (1,))


def rf(x) -> RatFunc:
    """Coerce an int/Rat/UniPoly into RatFunc."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, UniPoly):
        return RatFunc.of(x)
    return RatFunc.from_rat(x)
