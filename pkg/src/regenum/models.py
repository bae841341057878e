"""Model definitions and the symmetric-function layer.

A graph model is a triple (edge rule, loop rule, allowed degree set):
edges are simple ('se') or arbitrary multiplicity ('me'); loops are
forbidden ('ll'), allowed counting 2 toward the degree ('la'), or allowed
counting 1 ('lh').  The generating function of a model is the pairing of
exp(f) against exp(t g) in the power-sum basis, with f the model's
truncated edge/loop encoding and g the sum of complete homogeneous
functions over the degree set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polyring import MPoly
from .weyl import WeylOp, twist

EDGE_RULES = ("se", "me")
LOOP_RULES = ("ll", "la", "lh")


@dataclass(frozen=True)
class ModelSpec:
    edges: str
    loops: str
    degrees: frozenset

    def __post_init__(self):
        if self.edges not in EDGE_RULES:
            raise ValueError(f"bad edge rule {self.edges!r}")
        if self.loops not in LOOP_RULES:
            raise ValueError(f"bad loop rule {self.loops!r}")
        if not self.degrees:
            raise ValueError("degree set must be non-empty")
        if any(not isinstance(d, int) or d < 1 for d in self.degrees):
            raise ValueError("degrees must be positive integers")

    @property
    def k(self) -> int:
        return max(self.degrees)

    def __str__(self) -> str:
        ks = ",".join(str(d) for d in sorted(self.degrees))
        return f"{self.edges},{self.loops},{{{ks}}}"


def parse_model(text: str) -> ModelSpec:
    """Parse the CLI syntax, e.g. "se,ll,{5}" or "me,lh,{1,2,3}"."""
    s = text.strip()
    try:
        edges, loops, rest = s.split(",", 2)
    except ValueError:
        raise ValueError(f"bad model string {text!r}") from None
    rest = rest.strip()
    if not (rest.startswith("{") and rest.endswith("}")):
        raise ValueError(f"bad degree set in {text!r}")
    try:
        degrees = frozenset(int(x) for x in rest[1:-1].split(","))
    except ValueError:
        raise ValueError(f"bad degree set in {text!r}") from None
    return ModelSpec(edges.strip(), loops.strip(), degrees)


def partitions(n: int):
    """All partitions of n as descending tuples, in reverse lexicographic
    order: partitions(3) = [(3,), (2, 1), (1, 1, 1)]."""
    if n < 0:
        raise ValueError("partitions of a negative integer")
    return _partitions_cached(n)


@lru_cache(maxsize=None)
def _partitions_cached(n: int):
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rest, maxpart), 0, -1):
            prefix.append(part)
            rec(rest - part, part, prefix)
            prefix.pop()

    rec(n, n if n else 1, [])
    return tuple(out) if n else ((),)


def zlambda(la) -> int:
    """z_lambda = prod i^{r_i} r_i! for a partition with r_i parts equal i."""
    counts = {}
    for part in la:
        counts[part] = counts.get(part, 0) + 1
    out = 1
    for i, r in counts.items():
        fact = 1
        for j in range(2, r + 1):
            fact *= j
        out *= i**r * fact
    return out


def h_in_powersums(n: int, k_ambient: int) -> MPoly:
    """The complete homogeneous h_n expanded in power sums:
    h_n = sum over partitions of p_lambda / z_lambda."""
    if n > k_ambient:
        raise ValueError(f"h_{n} needs p_{n} but ambient ring stops at p_{k_ambient}")
    terms = {}
    for la in partitions(n):
        e = [0] * k_ambient
        for part in la:
            e[part - 1] += 1
        terms[tuple(e)] = Fraction(1, zlambda(la))
    out = MPoly(k_ambient)
    for e, c in terms.items():
        out = out + MPoly.term(k_ambient, e, c)
    return out


def build_f(model: ModelSpec) -> MPoly:
    """The truncated exponent f of the model's edge/loop encoding.

    Squares come with alternating signs for simple edges and positive
    signs for multi-edges; the p_{2i} correction block flips sign between
    the 'll' and 'la' loop rules; 'lh' adds the linear p_i block.
    """
    k = model.k
    out = MPoly(k)
    for i in range(1, k + 1):
        sign = (-1) ** (i + 1) if model.edges == "se" else 1
        e = [0] * k
        e[i - 1] = 2
        out = out + MPoly.term(k, e, Fraction(sign, 2 * i))
        if model.loops == "lh":
            e = [0] * k
            e[i - 1] = 1
            out = out + MPoly.term(k, e, Fraction(sign, i))
    loop_sign = 1 if model.loops == "la" else -1
    for i in range(1, k // 2 + 1):
        sign = (-1) ** (i + 1) if model.edges == "se" else 1
        e = [0] * k
        e[2 * i - 1] = 1
        out = out + MPoly.term(k, e, Fraction(loop_sign * sign, 2 * i))
    return out


def build_g(model: ModelSpec) -> MPoly:
    """g = sum of h_j over the allowed degrees, in the power-sum basis."""
    k = model.k
    out = MPoly(k)
    for j in sorted(model.degrees):
        out = out + h_in_powersums(j, k)
    return out


def untwisted_generators(model: ModelSpec):
    """The annihilators P_i = i(d_i - f_i) of exp(f)."""
    k = model.k
    f = build_f(model)
    gens = []
    for i in range(k):
        fi = f.derivative(i)
        op = WeylOp.d(k, i) - WeylOp.from_mpoly(fi)
        gens.append(op.scale(i + 1))
    return gens


def build_generators(model: ModelSpec):
    """The k twisted operators: adjoints of the P_i with d_j -> d_j + t g_j."""
    g = build_g(model)
    return [twist(p, g) for p in untwisted_generators(model)]
