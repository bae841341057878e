"""Multivariate polynomials in p_1..p_k over Q(t), monomial orderings, and
the stairs machinery for zero-dimensional monomial ideals.

Monomials are exponent tuples of fixed length k.  Three orderings are used
downstream:

* ``GRADED_P``  - total degree on the p_i, ties by grevlex with the
  precedence p_k > ... > p_1, so high-index variables are eliminated first
  and reduced normal forms concentrate on p_1, p_2, ...;
* ``ELIM_P_OVER_D`` - on pairs (alpha, beta) of p- and d-exponents: the
  p-part decides first (so every p_i sits lexicographically above every
  power product of the d_j), with the d-part compared by graded grevlex;
* ``MODULE`` - on (position, p-exponent) pairs for the free module with
  basis eta1 and the d^beta eta0: eta1 above everything, eta0 positions by
  graded grevlex on beta, ties within a position by GRADED_P.
"""

from __future__ import annotations

from enum import Enum
from itertools import product

from .exactnum import RF_ONE, RF_ZERO, Fraction, RatFunc, rf

Exponent = tuple  # tuple[int, ...] of fixed length k


class MonomialOrder(Enum):
    GRADED_P = "graded_p"
    ELIM_P_OVER_D = "elim_p_over_d"
    MODULE = "module"


def grevlex_key(e: Exponent):
    # grevlex over the variable list (p_k, ..., p_1): reversing the listed
    # order makes the key simply the negated exponent tuple
    return (sum(e), tuple(-x for x in e))


def pd_key(m):
    alpha, beta = m
    return (grevlex_key(alpha), grevlex_key(beta))


def module_key(m):
    pos, e = m
    if pos is None:  # the eta1 position eliminates everything else
        pk = (1, ())
    else:
        pk = (0, grevlex_key(pos))
    return (pk, grevlex_key(e))


_KEYS = {
    MonomialOrder.GRADED_P: grevlex_key,
    MonomialOrder.ELIM_P_OVER_D: pd_key,
    MonomialOrder.MODULE: module_key,
}


def order_key(order: MonomialOrder):
    return _KEYS[order]


def order_cmp(m1, m2, order: MonomialOrder) -> int:
    """-1, 0, or 1 as m1 <, =, > m2 under the given order."""
    k1, k2 = _KEYS[order](m1), _KEYS[order](m2)
    return (k1 > k2) - (k1 < k2)


def exp_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class MPoly:
    """Sparse polynomial in p_1..p_k over Q(t): a map exponent -> RatFunc.

    Zero coefficients are never stored; the zero polynomial is the empty
    map.  Instances are treated as immutable.  The weight convention
    (p_i carries weight i) is exposed for the series oracles.
    """

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms=None):
        self.k = k
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, k):
        return cls(k)

    @classmethod
    def const(cls, k, c):
        c = rf(c)
        return cls(k, {(0,) * k: c} if c else {})

    @classmethod
    def gen(cls, k, i):
        """The variable p_{i+1} (0-based index i)."""
        e = [0] * k
        e[i] = 1
        return cls(k, {tuple(e): RF_ONE})

    @classmethod
    def term(cls, k, exp, c):
        c = rf(c)
        return cls(k, {tuple(exp): c} if c else {})

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.k == other.k and self.terms == other.terms
        return NotImplemented

    def coeff(self, exp) -> RatFunc:
        return self.terms.get(tuple(exp), RF_ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self) -> int:
        """Max of sum (i+1)*e_i: the grading where p_i has weight i."""
        return max((sum((i + 1) * x for i, x in enumerate(e)) for e in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other):
        if self.k != other.k:
            raise ValueError("ambient dimension mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return MPoly(self.k, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = -c if s is None else s - c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return MPoly(self.k, out)

    def __neg__(self):
        return MPoly(self.k, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return MPoly(self.k, out)

    def scale(self, c) -> "MPoly":
        c = rf(c)
        if not c:
            return MPoly(self.k)
        return MPoly(self.k, {e: x * c for e, x in self.terms.items()})

    def scale_rat(self, x) -> "MPoly":
        x = Fraction(x)
        if not x:
            return MPoly(self.k)
        return MPoly(self.k, {e: c.scale_rat(x) for e, c in self.terms.items()})

    def mul_term(self, exp, c: RatFunc) -> "MPoly":
        if not c:
            return MPoly(self.k)
        exp = tuple(exp)
        return MPoly(self.k, {exp_mul(e, exp): x * c for e, x in self.terms.items()})

    def derivative(self, i: int) -> "MPoly":
        """d/dp_{i+1} (0-based i)."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c.scale_rat(e[i])
        return MPoly(self.k, out)

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly(self.k, {e: v for e, c in self.terms.items() if (v := fn(c))})

    # -- order-dependent views -----------------------------------------
    def sorted_terms(self, order=MonomialOrder.GRADED_P, reverse=True):
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    def __str__(self):
        from .weyl import mpoly_to_str

        return mpoly_to_str(self)

    def __repr__(self):
        return f"MPoly({self})"


def leading_term(a: MPoly, order: MonomialOrder = MonomialOrder.GRADED_P):
    """Maximal monomial with its coefficient; error on the zero polynomial."""
    if a.is_zero():
        raise ValueError("leading term of zero polynomial")
    key = order_key(order)
    e = max(a.terms, key=key)
    return e, a.terms[e]


def stairs_and_dim(lead_monomials):
    """Monomials under the stairs of the monomial ideal, or None.

    Returns the complete ascending (GRADED_P) list of monomials divisible
    by no input monomial when the ideal is zero-dimensional, and None when
    some variable has no pure power among the leading monomials (positive
    dimension).
    """
    leads = [tuple(m) for m in lead_monomials]
    if not leads:
        raise ValueError("empty leading-monomial list")
    k = len(leads[0])
    bounds = []
    for i in range(k):
        ds = [m[i] for m in leads if sum(m) == m[i]]
        if not ds:
            return None
        bounds.append(min(ds))
    stairs = []
    for e in product(*(range(b) for b in bounds)):
        if not any(exp_divides(m, e) for m in leads):
            stairs.append(e)
    stairs.sort(key=grevlex_key)
    return stairs
