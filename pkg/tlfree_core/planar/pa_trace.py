"""
Planar algebra traces on Gr_k built from a sequence T_m in TL(m).

Every evaluation goes through a pairing functional: an object that knows
<T_m, d> for diagrams d in TL(m). A TSeries holds the T_m explicitly; the
free Gibbs solver supplies functionals that only know pairings.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from typing_extensions import Protocol

from ..algebra.gluing import count_cycles, glue
from ..algebra.linalg import is_psd_exact
from ..algebra.scalars import DELTA, ONE, ZERO, RationalFunctionScalar, Scalar, is_zero, specialize, to_fraction
from ..algebra.tl_algebra import (
    TLDiagram,
    TLElement,
    all_diagrams,
    fatten,
    meander_gram_inverse,
    rotate_element,
)
from ..combinatorics.nc_core import NCPartition, enumerate_nc, hat_embed, join, mobius_to_top
from ..config import get_caps
from ..exceptions import ArgumentError, NonTracialError, ResourceLimitError, TruncationError
from ..probability.law import CumulantSeq, mixed_cumulant as scalar_mixed_cumulant
from .elements import (
    BoxElement,
    PAElement,
    box_dagger,
    box_product,
    close_box_sides,
    close_sides,
    cup,
    dagger,
    wedge,
    wedge_power,
)

logger = logging.getLogger(__name__)

EMPTY = TLDiagram(0, ())


class PairingFunctional(Protocol):
    def check_depth(self, m: int) -> None: ...

    def pair(self, d: TLDiagram) -> Scalar: ...

    def explicit(self, m: int) -> Optional[TLElement]: ...


def _simplify(value):
    if isinstance(value, RationalFunctionScalar) and value.is_laurent():
        return value.to_laurent()
    return value


class TSeries:
    """
    T_0..T_D with T_m in TL(m); the data of a planar algebra trace.

    Raises:
        ArgumentError: if T_m does not live in TL(m)
        NonTracialError: if some T_m is not invariant under rotation by two
    """

    def __init__(self, T: Sequence[TLElement], check: bool = True):
        if not T:
            raise ArgumentError("a T-series needs at least T_0")
        for m, element in enumerate(T):
            if element.m != m:
                raise ArgumentError(f"T_{m} has {element.m} strands")
            if check and m > 0 and rotate_element(element, 2) != element:
                raise NonTracialError(f"T_{m} is not invariant under rotation by two clicks")
        self.T = list(T)
        self._pairings: Dict[TLDiagram, Scalar] = {}

    @property
    def D(self) -> int:
        return len(self.T) - 1

    def check_depth(self, m: int) -> None:
        if m > self.D:
            raise TruncationError(f"needs T_{m} but the series stops at depth {self.D}")

    def explicit(self, m: int) -> TLElement:
        self.check_depth(m)
        return self.T[m]

    def pair(self, d: TLDiagram) -> Scalar:
        """<T_m, d> with point i of d glued to point i of T_m."""
        if d in self._pairings:
            return self._pairings[d]
        self.check_depth(d.m)
        total = ZERO
        for e, c in self.T[d.m].terms.items():
            total = total + c * DELTA ** count_cycles(e.pairs, d.pairs)
        self._pairings[d] = total
        return total

    def to_json(self) -> Dict:
        return {"D": self.D, "T": [t.to_json() for t in self.T]}

    @classmethod
    def from_json(cls, data: Mapping) -> "TSeries":
        return cls([TLElement.from_json(t) for t in data["T"]])


def build_T(nu: CumulantSeq, D: int) -> TSeries:
    """T_m = sum over NC(m) of kappa_pi times the fattening of pi."""
    if D > nu.D:
        raise ArgumentError(f"depth {D} needs {D} cumulants, law has {nu.D}")
    max_nc = get_caps().max_nc
    if D > max_nc:
        raise ResourceLimitError(f"depth {D} exceeds the NC enumeration cap {max_nc}")
    series = [TLElement(0, {EMPTY: ONE})]
    for m in range(1, D + 1):
        terms: Dict[TLDiagram, Scalar] = {}
        for pi in enumerate_nc(m):
            c = nu.of_partition(pi)
            if is_zero(c):
                continue
            d = fatten(pi)
            terms[d] = terms[d] + c if d in terms else c
        series.append(TLElement(m, terms))
    logger.debug("built T-series to depth %d", D)
    return TSeries(series)


def tau_k(x: PAElement, T: PairingFunctional) -> Scalar:
    """
    Cap the top points with T_n, close the sides around the bottom and
    multiply by delta^(loops - k).

    Raises:
        TruncationError: if x needs T_n beyond the available depth
    """
    total = ZERO
    for (n, d), c in x.terms.items():
        T.check_depth(n)
        closed, loops = close_sides(n, x.k, d)
        value = T.pair(closed)
        if is_zero(value):
            continue
        total = total + c * value * DELTA ** (loops - x.k)
    return _simplify(total)


def cond_exp(x: PAElement, T: TSeries) -> PAElement:
    """Cap the top points with T_n and keep the side strings: Gr_k to P_{0,k}."""
    k = x.k
    out: Dict = {}
    for (n, d), c in x.terms.items():
        for e, ce in T.explicit(n).terms.items():
            wires = [(("d", k + j), ("T", j)) for j in range(1, 2 * n + 1)]
            externals = [("d", p) for p in range(1, k + 1)] + [("d", p) for p in range(k + 2 * n + 1, 2 * n + 2 * k + 1)]
            pairs, loops = glue(
                [[(("d", i), ("d", j)) for i, j in d.pairs], [(("T", i), ("T", j)) for i, j in e.pairs]],
                wires,
                externals,
            )
            key = (0, TLDiagram.trusted(pairs, 2 * k))
            value = c * ce * DELTA ** loops if loops else c * ce
            out[key] = out[key] + value if key in out else value
    return PAElement(k, out)


def _partial_cap(element: TLElement, e: TLDiagram, lo: int, hi: int, keep: Sequence[int]) -> List[Tuple[TLDiagram, Scalar]]:
    """
    Glue element onto the points lo+1..hi of e; the points in keep stay open.

    Returns:
        (matching of keep, coefficient with loop factors) per term of element
    """
    out = []
    for f, c in element.terms.items():
        wires = [(("e", lo + q), ("T", q)) for q in range(1, hi - lo + 1)]
        pairs, loops = glue(
            [[(("e", i), ("e", j)) for i, j in e.pairs], [(("T", i), ("T", j)) for i, j in f.pairs]],
            wires,
            [("e", p) for p in keep],
        )
        out.append((TLDiagram.trusted(pairs, len(keep)), c * DELTA ** loops if loops else c))
    return out


def joint_pairing(left: PairingFunctional, right: PairingFunctional, s: int, t: int, e: TLDiagram) -> Scalar:
    """
    Value of T_s (on points 1..2s) and T_t (on points 2s+1..2s+2t) capped
    together by the matching e.

    When neither side is explicit, strings of e running between the two
    groups are handled by expanding the partial capping of T_t in the
    diagram basis of its through points.
    """
    left.check_depth(s)
    right.check_depth(t)
    cut = 2 * s
    size = 2 * s + 2 * t
    explicit_left, explicit_right = left.explicit(s), right.explicit(t)
    if explicit_left is not None and explicit_right is not None:
        total = ZERO
        for e1, c1 in explicit_left.terms.items():
            for e2, c2 in explicit_right.terms.items():
                combined = list(e1.pairs) + [(i + cut, j + cut) for i, j in e2.pairs]
                total = total + c1 * c2 * DELTA ** count_cycles(e.pairs, combined)
        return total
    if explicit_right is not None:
        total = ZERO
        for d, c in _partial_cap(explicit_right, e, cut, size, range(1, cut + 1)):
            total = total + c * left.pair(d)
        return _simplify(total)
    if explicit_left is not None:
        total = ZERO
        for d, c in _partial_cap(explicit_left, e, 0, cut, range(cut + 1, size + 1)):
            total = total + c * right.pair(d)
        return _simplify(total)

    partner = e.partner
    through = sorted(partner[p] for p in range(1, cut + 1) if partner[p] > cut)
    left_caps = [(i, j) for i, j in e.pairs if j <= cut]
    right_caps = [(i - cut, j - cut) for i, j in e.pairs if i > cut]
    if not through:
        return left.pair(TLDiagram.trusted(left_caps, cut)) * right.pair(TLDiagram.trusted(right_caps, 2 * t))

    r = len(through)
    basis = all_diagrams(r)
    right_values = [
        right.pair(TLDiagram.trusted(right_caps + [(through[a - 1] - cut, through[b - 1] - cut) for a, b in h.pairs], 2 * t))
        for h in basis
    ]
    inverse = meander_gram_inverse(r)
    total = ZERO
    for idx, h in enumerate(basis):
        coeff = ZERO
        for g, value in enumerate(right_values):
            if not is_zero(value):
                coeff = coeff + inverse[idx][g] * value
        if is_zero(coeff):
            continue
        moved = [(partner[through[a - 1]], partner[through[b - 1]]) for a, b in h.pairs]
        total = total + coeff * left.pair(TLDiagram.trusted(left_caps + moved, cut))
    return _simplify(total)


def tau_box(q: BoxElement, T: PairingFunctional, T_right: Optional[PairingFunctional] = None) -> Scalar:
    """
    tau_k boxtimes tau_k^op: cap Tx with T_s and Ty with T_t, close both
    side groups, factor delta^(-2k).
    """
    right = T if T_right is None else T_right
    total = ZERO
    for (s, t, d), c in q.terms.items():
        closed, loops = close_box_sides(q.k, s, t, d)
        value = joint_pairing(T, right, s, t, closed)
        if is_zero(value):
            continue
        total = total + c * value * DELTA ** (loops - 2 * q.k)
    return _simplify(total)


def pa_inner(a: PAElement, b: PAElement, T: PairingFunctional) -> Scalar:
    """<a, b> = tau_k(a wedge b^dagger)."""
    return tau_k(wedge(a, dagger(b)), T)


def box_inner(q: BoxElement, r: BoxElement, T: PairingFunctional) -> Scalar:
    """<Q, R> = delta * (tau boxtimes tau)(Q R^dagger)."""
    return _simplify(DELTA * tau_box(box_product(q, box_dagger(r)), T))


# Cumulants


def insert_blocks(pieces: Mapping[int, TLElement], sigma: NCPartition) -> TLElement:
    """
    T_sigma: each block (i_1 < ... < i_s) of sigma receives pieces[s] on the
    points 2i_1-1, 2i_1, ..., 2i_s-1, 2i_s.
    """
    return insert_block_list([pieces[len(block)] for block in sigma.blocks], sigma)


def insert_block_list(elements: Sequence[TLElement], sigma: NCPartition) -> TLElement:
    """Like insert_blocks, with one element per block in block order."""
    current: Dict[Tuple, Scalar] = {(): ONE}
    for block, piece in zip(sigma.blocks, elements):
        points = [p for i in block for p in (2 * i - 1, 2 * i)]
        nxt: Dict[Tuple, Scalar] = {}
        for pairs, c in current.items():
            for d, c2 in piece.terms.items():
                placed = pairs + tuple((points[a - 1], points[b - 1]) for a, b in d.pairs)
                key = tuple(sorted(placed))
                value = c * c2
                nxt[key] = nxt[key] + value if key in nxt else value
        current = nxt
    return TLElement(sigma.n, {TLDiagram.trusted(pairs, 2 * sigma.n): c for pairs, c in current.items()})


def pa_cumulants(T: TSeries, m: int) -> TLElement:
    """kappa^P_m = sum over NC(m) of mu(sigma, 1_m) T_sigma."""
    if m < 1:
        raise ArgumentError("cumulant order must be positive")
    T.check_depth(m)
    pieces = {s: T.explicit(s) for s in range(1, m + 1)}
    total = TLElement.zero(m)
    for sigma in enumerate_nc(m):
        total = total + insert_blocks(pieces, sigma).scale(mobius_to_top(sigma))
    return total


def reassemble(T: TSeries, m: int) -> TLElement:
    """Sum over NC(m) of kappa^P_pi; equals T_m."""
    cumulants = {s: pa_cumulants(T, s) for s in range(1, m + 1)}
    total = TLElement.zero(m)
    for pi in enumerate_nc(m):
        total = total + insert_blocks(cumulants, pi)
    return total


def pair_with(element: TLElement, x: PAElement) -> Scalar:
    """<K, x> for K in TL(m) and x in Gr_0: sum of coefficients times delta^loops."""
    total = ZERO
    for (n, d), c in x.terms.items():
        if n != element.m:
            continue
        for e, ce in element.terms.items():
            total = total + c * ce * DELTA ** count_cycles(e.pairs, d.pairs)
    return total


def mixed_cumulant(xs: Sequence[PAElement], T: PairingFunctional) -> Scalar:
    """Free cumulant kappa_n(x_1, ..., x_n) in Gr_0 from the moments tau_0."""
    if any(x.k != 0 for x in xs):
        raise ArgumentError("mixed cumulants are taken in Gr_0")

    def moment(positions):
        product = xs[positions[0] - 1]
        for i in positions[1:]:
            product = wedge(product, xs[i - 1])
        return tau_k(product, T)

    return _simplify(scalar_mixed_cumulant(moment, len(xs)))


def product_formula(xs: Sequence[PAElement], T: TSeries) -> Scalar:
    """
    Right-hand side of the product formula: the sum over pi in NC(m) with
    pi joined with the argument groups equal to 1_m of <kappa^P_pi, x_1...x_n>.
    """
    sizes = []
    for x in xs:
        degrees = {n for n, _ in x.terms}
        if x.k != 0 or len(degrees) != 1 or 0 in degrees:
            raise ArgumentError("product formula arguments must be homogeneous elements of Gr_0 of positive degree")
        sizes.append(degrees.pop())
    m = sum(sizes)
    groups = hat_embed(NCPartition.bottom(len(xs)), sizes)
    top = NCPartition.top(m)
    product = xs[0]
    for x in xs[1:]:
        product = wedge(product, x)
    cumulants = {s: pa_cumulants(T, s) for s in range(1, m + 1)}
    total = ZERO
    for pi in enumerate_nc(m):
        if join(pi, groups) != top:
            continue
        total = total + pair_with(insert_blocks(cumulants, pi), product)
    return total


# P-distributions


def ev_Y(Y: PAElement, a: PAElement) -> PAElement:
    """
    Substitute Y into every string-pair slot of a: slot i (points 2i-1, 2i)
    is glued to Y's left and right points and Y's top points replace it.
    """
    if Y.k != 1 or a.k != 0:
        raise ArgumentError("ev_Y needs Y in Gr_1 and a in Gr_0")
    y_terms = list(Y.terms.items())
    out: Dict = {}
    for (n, d), c in a.terms.items():
        for choice in itertools.product(y_terms, repeat=n):
            matchings = [[(("a", i), ("a", j)) for i, j in d.pairs]]
            wires, externals = [], []
            coeff, total_n = c, 0
            for slot, ((ny, dy), cy) in enumerate(choice, start=1):
                matchings.append([(("y", slot, i), ("y", slot, j)) for i, j in dy.pairs])
                wires.append((("a", 2 * slot - 1), ("y", slot, 1)))
                wires.append((("a", 2 * slot), ("y", slot, 2 * ny + 2)))
                externals.extend(("y", slot, p) for p in range(2, 2 * ny + 2))
                coeff = coeff * cy
                total_n += ny
            pairs, loops = glue(matchings, wires, externals)
            key = (total_n, TLDiagram.trusted(pairs, 2 * total_n))
            value = coeff * DELTA ** loops if loops else coeff
            out[key] = out[key] + value if key in out else value
    return PAElement(0, out)


def eval_distribution(Y: PAElement, a: PAElement, T: PairingFunctional) -> Scalar:
    """tau^(Y)(a) = tau_0(ev_Y(a))."""
    return tau_k(ev_Y(Y, a), T)


def cup_moments(T: PairingFunctional, n_max: int) -> List[Scalar]:
    """tau_0 of the wedge powers of the cup, n = 1..n_max."""
    return [tau_k(wedge_power(cup(), n), T) for n in range(1, n_max + 1)]


# Positivity


def gram_matrix(basis: Sequence[PAElement], T: PairingFunctional) -> List[List[Scalar]]:
    """G_ij = tau_k(x_i wedge x_j^dagger)."""
    if len({b.k for b in basis}) > 1:
        raise ArgumentError("basis elements must share k")
    daggers = [dagger(b) for b in basis]
    return [[tau_k(wedge(bi, bj), T) for bj in daggers] for bi in basis]


def gram_psd(basis: Sequence[PAElement], T: PairingFunctional, delta_value) -> Tuple[List[List[Fraction]], bool]:
    """
    Gram matrix specialized at a positive rational delta and its exact
    positive-semidefiniteness.
    """
    delta_value = to_fraction(delta_value)
    if delta_value <= 0:
        raise ArgumentError("delta must be positive")
    matrix = [[specialize(v, delta_value) for v in row] for row in gram_matrix(basis, T)]
    return matrix, is_psd_exact(matrix)
