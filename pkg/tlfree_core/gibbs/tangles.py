"""
Brute-force enumeration of labelled 2-cabled planar tangles.

A tangle has an outer disc with m letters and one box per copy of each
coupling W_i; every letter is a pair of boundary points. Propagators pair
the letters and are drawn as doubled strings. A pairing is kept when the
resulting ribbon graph is a sphere (outer disc included, with its cyclic
order reversed) and the required connectivity holds; substituting W_i into
its boxes and counting closed loops gives a TL(m) element.
"""
import itertools
import logging
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from ..algebra.gluing import glue
from ..algebra.scalars import DELTA, ONE, ZERO, Scalar
from ..algebra.tl_algebra import TLDiagram, TLElement
from ..combinatorics.nc_core import enumerate_nc
from ..config import get_caps
from ..exceptions import ArgumentError, ResourceLimitError
from ..planar.pa_trace import insert_block_list, pair_with
from ..planar.elements import PAElement
from .potential import Potential
from .series import Order

logger = logging.getLogger(__name__)

OUTER = 0

Letter = Tuple[int, int]  # (vertex, position), vertex 0 is the outer disc


def _pairings(items: Sequence) -> Iterator[List[Tuple]]:
    if not items:
        yield []
        return
    first = items[0]
    for idx in range(1, len(items)):
        rest = list(items[1:idx]) + list(items[idx + 1:])
        for tail in _pairings(rest):
            yield [(first, items[idx])] + tail


def _is_spherical(degrees: Sequence[int], pairing: Sequence[Tuple[Letter, Letter]]) -> bool:
    """Euler characteristic 2 for the ribbon graph of a connected pairing."""
    partner: Dict[Letter, Letter] = {}
    for a, b in pairing:
        partner[a], partner[b] = b, a

    def turn(letter: Letter) -> Letter:
        v, p = letter
        n = degrees[v]
        return (v, (p - 1) % n) if v == OUTER else (v, (p + 1) % n)

    seen = set()
    faces = 0
    for start in partner:
        if start in seen:
            continue
        faces += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = turn(partner[cur])
    vertices = sum(1 for n in degrees if n)
    return vertices - len(pairing) + faces == 2


def _components(n_vertices: int, edges: Sequence[Tuple[int, int]]) -> int:
    parent = list(range(n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(n_vertices)})


def _connected_with_outer(degrees: Sequence[int], pairing) -> bool:
    return _components(len(degrees), [(a[0], b[0]) for a, b in pairing]) == 1


def _connected_without_outer(degrees: Sequence[int], pairing) -> bool:
    """
    One piece after deleting the outer disc: outer-to-outer propagators are
    pieces of their own, every box must be reached.
    """
    boxes = len(degrees) - 1
    free_strings = [pair for pair in pairing if pair[0][0] == OUTER and pair[1][0] == OUTER]
    if free_strings:
        return boxes == 0 and len(free_strings) == 1
    if boxes == 0:
        return False
    edges = [(a[0] - 1, b[0] - 1) for a, b in pairing if a[0] != OUTER and b[0] != OUTER]
    return _components(boxes, edges) == 1


def _check_regime(m: int, order: Order) -> None:
    caps = get_caps()
    if sum(order) > caps.max_oracle_boxes:
        raise ResourceLimitError(f"{sum(order)} boxes exceed the oracle cap {caps.max_oracle_boxes}")
    if m > caps.max_oracle_m:
        raise ResourceLimitError(f"m={m} exceeds the oracle cap {caps.max_oracle_m}")


def _strings(pairing, degrees) -> Tuple[List, List]:
    """Propagator strands and wires onto box points; outer points are string ends."""
    matchings, wires = [], []

    def end(letter: Letter, which: int, tag):
        v, p = letter
        point = 2 * p + which  # 1-based: 2p+1 is the first point of letter p
        if v == OUTER:
            return ("o", point)
        node = ("s", tag, which)
        wires.append((node, ("b", v, point)))
        return node

    for idx, (a, b) in enumerate(pairing):
        outer_a, outer_b = a[0] == OUTER, b[0] == OUTER
        if outer_a != outer_b:
            # Outer disc against a box: first point to first point
            matchings.append((end(a, 1, (idx, "a1")), end(b, 1, (idx, "b1"))))
            matchings.append((end(a, 2, (idx, "a2")), end(b, 2, (idx, "b2"))))
        else:
            matchings.append((end(a, 1, (idx, "a1")), end(b, 2, (idx, "b2"))))
            matchings.append((end(a, 2, (idx, "a2")), end(b, 1, (idx, "b1"))))
    return matchings, wires


def _enumerate(V: Potential, m: int, order: Order, connected) -> TLElement:
    if len(order) != len(V):
        raise ArgumentError(f"order {order} does not match {len(V)} couplings")
    if m < 0:
        raise ArgumentError("m must be nonnegative")
    _check_regime(m, order)
    box_coupling = [i for i, a in enumerate(order) for _ in range(a)]
    degrees = [m] + [V.couplings[i].degree for i in box_coupling]
    letters = [(v, p) for v, n in enumerate(degrees) for p in range(n)]
    weight = Fraction((-1) ** sum(order))
    for a in order:
        weight /= factorial(a)

    if not letters:
        return TLElement(0, {TLDiagram(0, ()): ONE})
    out: Dict[TLDiagram, Scalar] = {}
    if len(letters) % 2:
        return TLElement(m, {})
    kept = 0
    for pairing in _pairings(letters):
        if not connected(degrees, pairing) or not _is_spherical(degrees, pairing):
            continue
        kept += 1
        strands, wires = _strings(pairing, degrees)
        choices = [list(V.couplings[i].W.terms.items()) for i in box_coupling]
        for picked in itertools.product(*choices):
            coeff = ONE * weight
            boxes = []
            for v, (d, c) in enumerate(picked, start=1):
                coeff = coeff * c
                boxes.extend((("b", v, i), ("b", v, j)) for i, j in d.pairs)
            pairs, loops = glue([strands + boxes], wires, [("o", p) for p in range(1, 2 * m + 1)])
            key = TLDiagram.trusted(pairs, 2 * m)
            value = coeff * DELTA ** loops if loops else coeff
            out[key] = out[key] + value if key in out else value
    logger.debug("order %s, m=%d: %d planar tangles", order, m, kept)
    return TLElement(m, out)


def tangle_oracle(V: Potential, m: int, order: Order) -> TLElement:
    """
    Coefficient of t^order in T_m: labelled tangles connected through the
    outer disc, weighted by prod (-1)^{n_i} / n_i!.

    Raises:
        ResourceLimitError: outside the brute-force regime
    """
    return _enumerate(V, m, tuple(order), _connected_with_outer)


def connected_tangles(V: Potential, m: int, order: Order) -> TLElement:
    """Coefficient of t^order in the planar cumulant kappa^P_m: tangles connected after removing the outer disc."""
    return _enumerate(V, m, tuple(order), _connected_without_outer)


def oracle_trace(V: Potential, x: PAElement, order: Order) -> Scalar:
    """Coefficient of t^order in tau_0(x), from the oracle."""
    if x.k != 0:
        raise ArgumentError("oracle traces are taken in Gr_0")
    total = ZERO
    for n in sorted({n for n, _ in x.terms}):
        total = total + pair_with(tangle_oracle(V, n, order), x.homogeneous(n))
    return total


def _distributions(order: Order, parts: int) -> Iterator[Tuple[Order, ...]]:
    """Every way of writing order as an ordered sum of parts multi-indices."""
    if parts == 0:
        if not any(order):
            yield ()
        return
    for first in itertools.product(*(range(a + 1) for a in order)):
        rest = tuple(a - b for a, b in zip(order, first))
        for tail in _distributions(rest, parts - 1):
            yield (first,) + tail


def connected_cumulant_check(V: Potential, m: int, order: Order) -> bool:
    """
    T_m == sum over NC(m) of kappa^P_pi at t^order, with kappa^P built from
    tangles connected after removing the outer disc.
    """
    if m < 1:
        raise ArgumentError("the cumulant check needs m >= 1")
    order = tuple(order)
    lhs = tangle_oracle(V, m, order)
    cache: Dict[Tuple[int, Order], TLElement] = {}

    def kappa(size: int, beta: Order) -> TLElement:
        if (size, beta) not in cache:
            cache[(size, beta)] = connected_tangles(V, size, beta)
        return cache[(size, beta)]

    rhs = TLElement.zero(m)
    for pi in enumerate_nc(m):
        for parts in _distributions(order, len(pi.blocks)):
            pieces = [kappa(len(block), beta) for block, beta in zip(pi.blocks, parts)]
            if any(p.is_zero() for p in pieces):
                continue
            rhs = rhs + insert_block_list(pieces, pi)
    equal = lhs == rhs
    logger.info("connected cumulant check m=%d order %s: %s", m, order, "ok" if equal else "MISMATCH")
    return equal
