"""
Elements of the graded algebras Gr_k and of the boxes V_k(s, t).

A P_{n,k} diagram is a TLDiagram on 2n+2k points read clockwise: the k left
side points bottom to top, the 2n top points left to right, then the k right
side points top to bottom. A V_k(s,t) diagram lists its points as
[Lx(k)][Tx(2s)][Rx(k)][Ly(k)][Ty(2t)][Ry(k)]; the first half reads like a
P_{s,k} diagram and the second like a P_{t,k} diagram, so x (tensor) y^op is
the concatenation of the two.
"""
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from ..algebra.gluing import glue
from ..algebra.scalars import (
    DELTA,
    ONE,
    LaurentScalar,
    Scalar,
    is_zero,
    scalar_from_json,
    scalar_to_json,
    specialize,
)
from ..algebra.tl_algebra import TLDiagram, all_diagrams
from ..exceptions import ArgumentError, SerializationError

PAKey = Tuple[int, TLDiagram]
BoxKey = Tuple[int, int, TLDiagram]


def _accumulate(out: Dict, key, coeff: Scalar) -> None:
    out[key] = out[key] + coeff if key in out else coeff


def _with_loops(coeff: Scalar, loops: int) -> Scalar:
    return coeff * DELTA ** loops if loops else coeff


def _clean(terms: Mapping, k: int) -> Dict:
    out = {}
    for key, c in terms.items():
        if isinstance(c, int) or not hasattr(c, "is_zero"):
            c = LaurentScalar.coerce(c)
        if not is_zero(c):
            out[key] = c
    return out


class _LinearMixin:
    """Shared vector-space operations over a terms dict."""

    terms: Dict
    k: int

    def _same(self, other) -> None:
        if type(other) is not type(self) or other.k != self.k:
            raise ArgumentError(f"Cannot combine {type(self).__name__} at k={self.k} with {other!r}")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return type(self)(self.k, out)

    def __neg__(self):
        return type(self)(self.k, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return type(self)(self.k, {key: v * c for key, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if type(other) is not type(self) or other.k != self.k:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def specialize(self, delta):
        return type(self)(self.k, {key: LaurentScalar.constant(specialize(c, delta)) for key, c in self.terms.items()})


class PAElement(_LinearMixin):
    """Element of Gr_k: terms keyed by (n, diagram on 2n+2k points)."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Optional[Mapping[PAKey, Scalar]] = None):
        if k < 0:
            raise ArgumentError("k must be nonnegative")
        self.k = k
        for n, d in (terms or {}):
            if d.size != 2 * n + 2 * k:
                raise ArgumentError(f"Diagram {d} does not fit P_{{{n},{k}}}")
        self.terms = _clean(terms or {}, k)

    @classmethod
    def from_diagram(cls, k: int, d: TLDiagram, coeff: Scalar = ONE) -> "PAElement":
        if (d.size - 2 * k) % 2 or d.size < 2 * k:
            raise ArgumentError(f"Diagram {d} has no P_{{n,{k}}} reading")
        return cls(k, {((d.size - 2 * k) // 2, d): coeff})

    @classmethod
    def from_pairs(cls, k: int, pairs: Iterable, coeff: Scalar = ONE) -> "PAElement":
        return cls.from_diagram(k, TLDiagram.from_pairs(pairs), coeff)

    def degree(self) -> int:
        return max((n for n, _ in self.terms), default=0)

    def homogeneous(self, n: int) -> "PAElement":
        return PAElement(self.k, {key: c for key, c in self.terms.items() if key[0] == n})

    def map_terms(self, fn, k: Optional[int] = None) -> "PAElement":
        """fn(n, d) -> iterable of (n', d', factor)."""
        out: Dict[PAKey, Scalar] = {}
        for (n, d), c in self.terms.items():
            for n2, d2, factor in fn(n, d):
                _accumulate(out, (n2, d2), c * factor if factor is not ONE else c)
        return PAElement(self.k if k is None else k, out)

    def to_json(self) -> Dict:
        terms = []
        for (n, d), c in sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1].pairs)):
            terms.append({
                "n": n,
                "groups": {"left": self.k, "top": 2 * n, "right": self.k},
                "pairs": d.to_json(),
                "coeff": scalar_to_json(c),
            })
        return {"k": self.k, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "PAElement":
        try:
            k = int(data.get("k", 0))
            out: Dict[PAKey, Scalar] = {}
            for term in data["terms"]:
                d = TLDiagram.from_pairs(term["pairs"])
                n = int(term.get("n", (d.size - 2 * k) // 2))
                groups = term.get("groups")
                if groups and (groups.get("left") != k or groups.get("right") != k or groups.get("top") != 2 * n):
                    raise ArgumentError(f"groups {groups} disagree with k={k}, n={n}")
                if d.size != 2 * n + 2 * k:
                    raise ArgumentError(f"{d.size} points do not fit P_{{{n},{k}}}")
                _accumulate(out, (n, d), scalar_from_json(term.get("coeff", {"0": "1"})))
            return cls(k, out)
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f"Malformed planar algebra element: {e}") from e

    def __repr__(self):
        inner = " + ".join(f"({c})*P{n}{d}" for (n, d), c in self.terms.items()) or "0"
        return f"PAElement[k={self.k}]({inner})"


def unit(k: int) -> PAElement:
    """k parallel horizontal strings in P_{0,k}."""
    pairs = [(k + 1 - h, k + h) for h in range(1, k + 1)]
    return PAElement(k, {(0, TLDiagram.trusted(pairs, 2 * k)): ONE})


def x_variable() -> PAElement:
    """The generator of Gr_1: left to first top point, second top point to right."""
    return PAElement(1, {(1, TLDiagram.trusted([(1, 2), (3, 4)], 4)): ONE})


def cup() -> PAElement:
    """The cup in P_{1,0}."""
    return PAElement(0, {(1, TLDiagram.trusted([(1, 2)], 2)): ONE})


def diagram_basis(n_max: int, k: int) -> List[PAElement]:
    """All single diagrams of P_{n,k} for n <= n_max."""
    return [
        PAElement(k, {(n, d): ONE})
        for n in range(n_max + 1)
        for d in all_diagrams(2 * n + 2 * k)
    ]


def _wedge_diagrams(k: int, n1: int, d1: TLDiagram, n2: int, d2: TLDiagram) -> Tuple[TLDiagram, int]:
    wires = [(("x", k + 2 * n1 + h), ("y", k + 1 - h)) for h in range(1, k + 1)]
    externals = (
        [("x", i) for i in range(1, k + 2 * n1 + 1)]
        + [("y", k + j) for j in range(1, 2 * n2 + 1)]
        + [("y", k + 2 * n2 + h) for h in range(1, k + 1)]
    )
    pairs, loops = glue(
        [[(("x", i), ("x", j)) for i, j in d1.pairs], [(("y", i), ("y", j)) for i, j in d2.pairs]],
        wires,
        externals,
    )
    return TLDiagram.trusted(pairs, 2 * (n1 + n2) + 2 * k), loops


def wedge(x: PAElement, y: PAElement) -> PAElement:
    """
    Horizontal concatenation in Gr_k; fusion loops contribute delta.

    Raises:
        ArgumentError: if x.k != y.k
    """
    if x.k != y.k:
        raise ArgumentError(f"wedge of k={x.k} with k={y.k}")
    out: Dict[PAKey, Scalar] = {}
    for (n1, d1), c1 in x.terms.items():
        for (n2, d2), c2 in y.terms.items():
            d, loops = _wedge_diagrams(x.k, n1, d1, n2, d2)
            _accumulate(out, (n1 + n2, d), _with_loops(c1 * c2, loops))
    return PAElement(x.k, out)


def wedge_power(x: PAElement, p: int) -> PAElement:
    result = unit(x.k)
    for _ in range(p):
        result = wedge(result, x)
    return result


def dagger(x: PAElement) -> PAElement:
    """Left-right mirror; rational coefficients are unchanged."""
    def mirror(n, d):
        size = d.size
        yield n, d.relabel({p: size + 1 - p for p in range(1, size + 1)}), ONE
    return x.map_terms(mirror)


def include_up(x: PAElement) -> PAElement:
    """Add one through string below everything: Gr_k into Gr_{k+1}."""
    def lift(n, d):
        size = d.size
        pairs = [(i + 1, j + 1) for i, j in d.pairs] + [(1, size + 2)]
        yield n, TLDiagram.trusted(pairs, size + 2), ONE
    return x.map_terms(lift, x.k + 1)


def close_sides(n: int, k: int, d: TLDiagram) -> Tuple[TLDiagram, int]:
    """
    Join left point i to right point k+1-i (counted along each side) around
    the bottom.

    Returns:
        (matching of the 2n top points, closed loops)
    """
    size = 2 * n + 2 * k
    wires = [(i, size + 1 - i) for i in range(1, k + 1)]
    pairs, loops = glue([d.pairs], wires, list(range(k + 1, k + 2 * n + 1)))
    return TLDiagram.trusted(pairs, 2 * n), loops


# Boxes


def box_size(k: int, s: int, t: int) -> int:
    return 4 * k + 2 * s + 2 * t


class BoxElement(_LinearMixin):
    """Element of Gr_k boxtimes Gr_k^op: terms keyed by (s, t, diagram)."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Optional[Mapping[BoxKey, Scalar]] = None):
        self.k = k
        for s, t, d in (terms or {}):
            if d.size != box_size(k, s, t):
                raise ArgumentError(f"Diagram {d} does not fit V_{k}({s},{t})")
        self.terms = _clean(terms or {}, k)

    def to_json(self) -> Dict:
        terms = []
        for (s, t, d), c in sorted(self.terms.items(), key=lambda x: (x[0][0], x[0][1], x[0][2].pairs)):
            terms.append({"s": s, "t": t, "pairs": d.to_json(), "coeff": scalar_to_json(c)})
        return {"k": self.k, "boxes": terms}

    def __repr__(self):
        inner = " + ".join(f"({c})*V({s},{t}){d}" for (s, t, d), c in self.terms.items()) or "0"
        return f"BoxElement[k={self.k}]({inner})"


def tensor_op(x: PAElement, y: PAElement) -> BoxElement:
    """x (tensor) y^op as a box element."""
    if x.k != y.k:
        raise ArgumentError(f"tensor of k={x.k} with k={y.k}")
    k = x.k
    out: Dict[BoxKey, Scalar] = {}
    for (s, d1), c1 in x.terms.items():
        offset = 2 * k + 2 * s
        for (t, d2), c2 in y.terms.items():
            pairs = list(d1.pairs) + [(i + offset, j + offset) for i, j in d2.pairs]
            _accumulate(out, (s, t, TLDiagram.trusted(pairs, box_size(k, s, t))), c1 * c2)
    return BoxElement(k, out)


def box_identity(k: int) -> BoxElement:
    return tensor_op(unit(k), unit(k))


def _box_product_diagrams(k: int, s1: int, t1: int, d1: TLDiagram, s2: int, t2: int, d2: TLDiagram):
    a, b = "a", "b"
    wires = [((a, k + 2 * s1 + h), (b, k + 1 - h)) for h in range(1, k + 1)]
    wires += [((a, 2 * k + 2 * s1 + k + 1 - h), (b, 2 * k + 2 * s2 + k + 2 * t2 + h)) for h in range(1, k + 1)]
    externals = (
        [(a, p) for p in range(1, k + 2 * s1 + 1)]
        + [(b, p) for p in range(k + 1, 2 * k + 2 * s2 + 1)]
        + [(b, p) for p in range(2 * k + 2 * s2 + 1, 3 * k + 2 * s2 + 2 * t2 + 1)]
        + [(a, p) for p in range(3 * k + 2 * s1 + 1, box_size(k, s1, t1) + 1)]
    )
    pairs, loops = glue(
        [[((a, i), (a, j)) for i, j in d1.pairs], [((b, i), (b, j)) for i, j in d2.pairs]],
        wires,
        externals,
    )
    return TLDiagram.trusted(pairs, box_size(k, s1 + s2, t1 + t2)), loops


def box_product(q1: BoxElement, q2: BoxElement) -> BoxElement:
    """
    Multiplication in the symmetric enveloping algebra:
    (x1 (x) y1^op)(x2 (x) y2^op) = x1 x2 (x) (y2 y1)^op.
    """
    if q1.k != q2.k:
        raise ArgumentError(f"box product of k={q1.k} with k={q2.k}")
    k = q1.k
    out: Dict[BoxKey, Scalar] = {}
    for (s1, t1, d1), c1 in q1.terms.items():
        for (s2, t2, d2), c2 in q2.terms.items():
            d, loops = _box_product_diagrams(k, s1, t1, d1, s2, t2, d2)
            _accumulate(out, (s1 + s2, t1 + t2, d), _with_loops(c1 * c2, loops))
    return BoxElement(k, out)


def box_dagger(q: BoxElement) -> BoxElement:
    """Mirror each half, so (x (x) y^op)^dagger = x^dagger (x) (y^dagger)^op."""
    k = q.k
    out: Dict[BoxKey, Scalar] = {}
    for (s, t, d), c in q.terms.items():
        half = 2 * k + 2 * s
        other = 2 * k + 2 * t
        mapping = {p: half + 1 - p for p in range(1, half + 1)}
        mapping.update({half + p: half + other + 1 - p for p in range(1, other + 1)})
        _accumulate(out, (s, t, d.relabel(mapping)), c)
    return BoxElement(k, out)


def box_halves(k: int, s: int, t: int) -> Dict[str, List[int]]:
    """Point labels of each boundary group of a V_k(s,t) diagram."""
    labels = iter(range(1, box_size(k, s, t) + 1))
    groups = {}
    for name, size in (("Lx", k), ("Tx", 2 * s), ("Rx", k), ("Ly", k), ("Ty", 2 * t), ("Ry", k)):
        groups[name] = [next(labels) for _ in range(size)]
    return groups


def close_box_sides(k: int, s: int, t: int, d: TLDiagram) -> Tuple[TLDiagram, int]:
    """
    Join Lx_i to Rx_{k+1-i} and Ly_i to Ry_{k+1-i}.

    Returns:
        (matching of Tx followed by Ty, closed loops)
    """
    half = 2 * k + 2 * s
    other = 2 * k + 2 * t
    wires = [(i, half + 1 - i) for i in range(1, k + 1)]
    wires += [(half + i, half + other + 1 - i) for i in range(1, k + 1)]
    externals = list(range(k + 1, k + 2 * s + 1)) + list(range(half + k + 1, half + k + 2 * t + 1))
    pairs, loops = glue([d.pairs], wires, externals)
    return TLDiagram.trusted(pairs, 2 * s + 2 * t), loops
