"""
Temperley-Lieb diagrams and elements.

A TLDiagram is a perfect non-crossing matching of points 1..2m read
clockwise, with the marked point before point 1. As an element of the
algebra TL(m), points 1..m are the top boundary (left to right) and points
m+1..2m the bottom boundary (right to left), so the identity pairs i with
2m+1-i.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..combinatorics.nc_core import NCPartition, is_noncrossing
from ..exceptions import ArgumentError, ResourceLimitError, SerializationError, SingularityError
from .gluing import count_cycles, glue
from .scalars import (
    DELTA,
    ONE,
    LaurentScalar,
    RationalFunctionScalar,
    Scalar,
    is_zero,
    scalar_from_json,
    scalar_to_json,
    specialize,
    to_fraction,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class TLDiagram:
    """Perfect non-crossing matching on points 1..size."""
    size: int
    pairs: Tuple[Pair, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], size: Optional[int] = None) -> "TLDiagram":
        """
        Build a validated diagram.

        Raises:
            ArgumentError: if the pairs are not a perfect non-crossing matching
        """
        canon = tuple(sorted((min(p), max(p)) for p in (tuple(q) for q in pairs)))
        if size is None:
            size = 2 * len(canon)
        flat = sorted(x for p in canon for x in p)
        if flat != list(range(1, size + 1)):
            raise ArgumentError(f"{canon} is not a perfect matching of 1..{size}")
        if not is_noncrossing(canon):
            raise ArgumentError(f"{canon} is crossing")
        if any((i + j) % 2 == 0 for i, j in canon):
            raise ArgumentError(f"{canon} joins points of equal parity")
        return cls(size, canon)

    @classmethod
    def trusted(cls, pairs: Iterable[Pair], size: Optional[int] = None) -> "TLDiagram":
        """Canonicalize without validation; for results of planar operations."""
        canon = tuple(sorted((min(i, j), max(i, j)) for i, j in pairs))
        return cls(2 * len(canon) if size is None else size, canon)

    @property
    def m(self) -> int:
        return self.size // 2

    @cached_property
    def partner(self) -> Dict[int, int]:
        out = {}
        for i, j in self.pairs:
            out[i], out[j] = j, i
        return out

    def relabel(self, mapping: Mapping[int, int], size: Optional[int] = None) -> "TLDiagram":
        return TLDiagram.trusted(((mapping[i], mapping[j]) for i, j in self.pairs), size or self.size)

    def to_json(self) -> List[List[int]]:
        return [list(p) for p in self.pairs]

    def __str__(self) -> str:
        return "{" + ",".join(f"({i},{j})" for i, j in self.pairs) + "}"


def close_pair(d1: Iterable[Pair], d2: Iterable[Pair]) -> int:
    """
    Loop count of two perfect matchings of the same point set.

    Raises:
        ArgumentError: if the point sets differ
    """
    p1 = d1.pairs if isinstance(d1, TLDiagram) else list(d1)
    p2 = d2.pairs if isinstance(d2, TLDiagram) else list(d2)
    return count_cycles(p1, p2)


@lru_cache(maxsize=None)
def all_diagrams(npoints: int) -> Tuple[TLDiagram, ...]:
    """Every non-crossing perfect matching of 1..npoints (Catalan many)."""
    if npoints % 2:
        return ()

    def build(points: Tuple[int, ...]) -> Iterator[Tuple[Pair, ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        for idx in range(1, len(points), 2):
            inside = points[1:idx]
            outside = points[idx + 1:]
            for a in build(inside):
                for b in build(outside):
                    yield ((first, points[idx]),) + a + b

    return tuple(TLDiagram.trusted(p, npoints) for p in build(tuple(range(1, npoints + 1))))


def rotate(d: TLDiagram, clicks: int) -> TLDiagram:
    """Shift every label by clicks modulo the point count."""
    n = d.size
    if n == 0:
        return d
    return d.relabel({p: (p - 1 + clicks) % n + 1 for p in range(1, n + 1)})


def fatten(pi: NCPartition) -> TLDiagram:
    """
    The fattening of a non-crossing partition: each block (i1<...<is) gives
    (2i1-1, 2is), (2i1, 2i2-1), ..., (2i_{s-1}, 2is-1).
    """
    pairs = []
    for block in pi.blocks:
        pairs.append((2 * block[0] - 1, 2 * block[-1]))
        for a, b in zip(block, block[1:]):
            pairs.append((2 * a, 2 * b - 1))
    return TLDiagram.trusted(pairs, 2 * pi.n)


def cable2(d: TLDiagram) -> TLDiagram:
    """Double every string: pair (i,j) becomes (2i-1, 2j) and (2i, 2j-1)."""
    pairs = []
    for i, j in d.pairs:
        pairs.append((2 * i - 1, 2 * j))
        pairs.append((2 * i, 2 * j - 1))
    return TLDiagram.trusted(pairs, 2 * d.size)


def reflect(d: TLDiagram) -> TLDiagram:
    """Left-right mirror image: point p goes to size+1-p."""
    return d.relabel({p: d.size + 1 - p for p in range(1, d.size + 1)})


def identity_diagram(m: int) -> TLDiagram:
    return TLDiagram.trusted(((i, 2 * m + 1 - i) for i in range(1, m + 1)), 2 * m)


def cap_diagram(i: int, m: int) -> TLDiagram:
    """The generator E_i of TL(m): caps at positions i, i+1 on top and bottom."""
    if not 1 <= i < m:
        raise ArgumentError(f"E_{i} does not exist in TL({m})")
    pairs = [(i, i + 1), (2 * m + 1 - i, 2 * m - i)]
    for p in range(1, m + 1):
        if p not in (i, i + 1):
            pairs.append((p, 2 * m + 1 - p))
    return TLDiagram.trusted(pairs, 2 * m)


def _compose_diagrams(a: TLDiagram, b: TLDiagram, m: int) -> Tuple[TLDiagram, int]:
    wires = [(("a", m + j), ("b", m + 1 - j)) for j in range(1, m + 1)]
    externals = [("a", p) for p in range(1, m + 1)] + [("b", p) for p in range(m + 1, 2 * m + 1)]
    pairs, loops = glue(
        [[(("a", i), ("a", j)) for i, j in a.pairs], [(("b", i), ("b", j)) for i, j in b.pairs]],
        wires,
        externals,
    )
    return TLDiagram.trusted(pairs, 2 * m), loops


def _tensor_identity_diagram(d: TLDiagram, m: int) -> TLDiagram:
    mapping = {p: (p if p <= m else p + 2) for p in range(1, 2 * m + 1)}
    return TLDiagram.trusted(list(d.relabel(mapping, 2 * m + 2).pairs) + [(m + 1, m + 2)], 2 * m + 2)


class TLElement:
    """Linear combination of TL(m) diagrams with exact scalar coefficients."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Optional[Mapping[TLDiagram, Scalar]] = None):
        self.m = m
        clean: Dict[TLDiagram, Scalar] = {}
        for d, c in (terms or {}).items():
            if d.size != 2 * m:
                raise ArgumentError(f"Diagram {d} has {d.size} points, expected {2 * m}")
            if isinstance(c, (int, Fraction)):
                c = LaurentScalar.constant(c)
            if not is_zero(c):
                clean[d] = c
        self.terms = clean

    @classmethod
    def from_diagram(cls, d: TLDiagram, coeff: Scalar = ONE) -> "TLElement":
        return cls(d.m, {d: coeff})

    @classmethod
    def identity(cls, m: int) -> "TLElement":
        return cls.from_diagram(identity_diagram(m))

    @classmethod
    def zero(cls, m: int) -> "TLElement":
        return cls(m)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: TLDiagram) -> Scalar:
        return self.terms.get(d, LaurentScalar.zero())

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def _check(self, other: "TLElement") -> None:
        if not isinstance(other, TLElement) or other.m != self.m:
            raise ArgumentError(f"Strand mismatch: TL({self.m}) vs {getattr(other, 'm', other)}")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return TLElement(self.m, out)

    def __neg__(self) -> "TLElement":
        return TLElement(self.m, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, c) -> "TLElement":
        return TLElement(self.m, {d: v * c for d, v in self.terms.items()})

    def __rmul__(self, c) -> "TLElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement) or other.m != self.m:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_diagrams(self, fn, m: Optional[int] = None) -> "TLElement":
        out: Dict[TLDiagram, Scalar] = {}
        for d, c in self.terms.items():
            e = fn(d)
            out[e] = out[e] + c if e in out else c
        return TLElement(self.m if m is None else m, out)

    def specialize(self, delta) -> "TLElement":
        """Evaluate every coefficient at a rational delta."""
        return TLElement(self.m, {d: LaurentScalar.constant(specialize(c, delta)) for d, c in self.terms.items()})

    def to_json(self) -> Dict:
        return {
            "m": self.m,
            "terms": [{"pairs": d.to_json(), "coeff": scalar_to_json(c)} for d, c in sorted(self.terms.items(), key=lambda t: t[0].pairs)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TLElement":
        try:
            m = int(data["m"])
            terms: Dict[TLDiagram, Scalar] = {}
            for term in data["terms"]:
                d = TLDiagram.from_pairs(term["pairs"], 2 * m)
                c = scalar_from_json(term.get("coeff", {"0": "1"}))
                terms[d] = terms[d] + c if d in terms else c
            return cls(m, terms)
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f"Malformed TL element: {e}") from e

    def __repr__(self):
        inner = " + ".join(f"({c})*{d}" for d, c in self.terms.items()) or "0"
        return f"TLElement[{self.m}]({inner})"


def compose(a: TLElement, b: TLElement) -> TLElement:
    """
    Stack a over b in TL(m), a factor delta per closed loop.

    Raises:
        ArgumentError: on strand mismatch
    """
    a._check(b)
    out: Dict[TLDiagram, Scalar] = {}
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            d, loops = _compose_diagrams(da, db, a.m)
            c = ca * cb * DELTA ** loops if loops else ca * cb
            out[d] = out[d] + c if d in out else c
    return TLElement(a.m, out)


def rotate_element(x: TLElement, clicks: int) -> TLElement:
    return x.map_diagrams(lambda d: rotate(d, clicks))


def dagger_element(x: TLElement) -> TLElement:
    """Mirror image; rational coefficients are unchanged."""
    return x.map_diagrams(reflect)


def tensor_identity(x: TLElement) -> TLElement:
    """x tensor 1: one extra strand on the right, in TL(m+1)."""
    return x.map_diagrams(lambda d: _tensor_identity_diagram(d, x.m), x.m + 1)


def cap_generator(i: int, m: int) -> TLElement:
    return TLElement.from_diagram(cap_diagram(i, m))


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LaurentScalar:
    """[0]=0, [1]=1, [n+1] = delta*[n] - [n-1]."""
    if n < 0:
        raise ArgumentError("quantum integers are indexed by n >= 0")
    prev, cur = LaurentScalar.zero(), ONE
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, DELTA * cur - prev
    return cur


def jones_wenzl(n: int, delta_value=None, cap: Optional[int] = None) -> TLElement:
    """
    Jones-Wenzl idempotent of TL(n) by the Wenzl recursion.

    Args:
        n: Strand count, 1 <= n <= cap
        delta_value: Optional rational specialization
        cap: Optional override of the configured cap

    Returns:
        TLElement with RationalFunctionScalar coefficients (or constants when
        specialized)

    Raises:
        ResourceLimitError: if n exceeds the cap
        SingularityError: if a quantum integer [j], j <= n, vanishes at delta_value
    """
    if cap is None:
        from ..config import get_caps
        cap = get_caps().max_jw
    if n < 1:
        raise ArgumentError("Jones-Wenzl index must be positive")
    if n > cap:
        raise ResourceLimitError(f"JW_{n} exceeds the configured cap {cap}")
    if delta_value is not None:
        for j in range(1, n + 1):
            if quantum_integer(j).evaluate(to_fraction(delta_value)) == 0:
                raise SingularityError(f"[{j}] vanishes at delta={delta_value}")
    jw = _jones_wenzl_formal(n)
    return jw.specialize(delta_value) if delta_value is not None else jw


@lru_cache(maxsize=None)
def _jones_wenzl_formal(n: int) -> TLElement:
    if n == 1:
        return TLElement(1, {identity_diagram(1): RationalFunctionScalar(ONE)})
    prev = tensor_identity(_jones_wenzl_formal(n - 1))
    ratio = RationalFunctionScalar(quantum_integer(n - 1), quantum_integer(n))
    correction = compose(compose(prev, cap_generator(n - 1, n)), prev)
    logger.debug("JW_%d assembled from %d terms", n, len(correction))
    return prev - correction.scale(ratio)


@lru_cache(maxsize=None)
def meander_gram(npoints: int) -> Tuple[Tuple[LaurentScalar, ...], ...]:
    """G[f][g] = delta ** (loops of f against g) over all_diagrams(npoints)."""
    basis = all_diagrams(npoints)
    return tuple(tuple(DELTA ** count_cycles(f.pairs, g.pairs) for g in basis) for f in basis)


@lru_cache(maxsize=None)
def meander_gram_inverse(npoints: int) -> Tuple[Tuple[Scalar, ...], ...]:
    """
    Inverse of the meander Gram matrix over Q(delta); entries that are
    Laurent polynomials are returned as LaurentScalar.
    """
    from .linalg import invert_exact

    gram = [[RationalFunctionScalar(v) for v in row] for row in meander_gram(npoints)]
    inverse = invert_exact(gram, RationalFunctionScalar(ONE), RationalFunctionScalar(LaurentScalar.zero()))
    logger.debug("inverted the meander Gram matrix on %d points", npoints)
    return tuple(tuple(v.to_laurent() if v.is_laurent() else v for v in row) for row in inverse)
