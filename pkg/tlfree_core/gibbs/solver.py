"""
Order-by-order Schwinger-Dyson solver for free Gibbs states.

A GibbsTrace stores, for each coupling order alpha and each TL(m) diagram d,
the coefficient of t^alpha in <T_m, d>. Order zero is the 2-cabled
semicircle trace. At higher orders the equation

    tau[(Lambda + DW) ^ a] = delta (tau boxtimes tau)(d a)

for a single diagram a of P_{m-1,1} fixes exactly one pairing of T_m, the
one of a rotated by a click, from data of lower depth or lower order.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..algebra.scalars import DELTA, ONE, ZERO, Scalar, is_zero
from ..algebra.tl_algebra import TLDiagram, TLElement, all_diagrams, rotate
from ..calculus.free_calc import diff_quotient
from ..config import get_caps
from ..exceptions import ArgumentError, ResourceLimitError, SolverRankError, TruncationError
from ..planar.elements import PAElement, cup, wedge, wedge_power, x_variable
from ..planar.pa_trace import TSeries, build_T, tau_box, tau_k
from ..probability.law import named_law
from .potential import Potential
from .series import FormalSeries, Order, order_minus, orders_upto, splittings, unit_order

logger = logging.getLogger(__name__)


class _OrderView:
    """Pairing functional of the t^alpha coefficient of a GibbsTrace."""

    def __init__(self, trace: "GibbsTrace", alpha: Order):
        self.trace = trace
        self.alpha = alpha
        self.zero_order = not any(alpha)

    def check_depth(self, m: int) -> None:
        self.trace.check_depth(self.alpha, m)

    def pair(self, d: TLDiagram) -> Scalar:
        return self.trace.coefficient(self.alpha, d)

    def explicit(self, m: int) -> Optional[TLElement]:
        return self.trace.base.explicit(m) if self.zero_order else None


class _ZeroView:
    """The vanishing higher orders of a plain T-series."""

    def check_depth(self, m: int) -> None:
        pass

    def pair(self, d: TLDiagram) -> Scalar:
        return ZERO

    def explicit(self, m: int) -> TLElement:
        return TLElement.zero(m)


class GibbsTrace:
    """
    Formal free Gibbs state: pairings <T_m, d> as truncated series in t.

    Depth D is guaranteed at every order; order alpha is also available to
    depth D + excess * (D_t - |alpha|), which higher orders consume.
    """

    def __init__(self, potential: Potential, D: int, D_t: int, base: TSeries):
        self.potential = potential
        self.D = D
        self.D_t = D_t
        self.base = base
        self.orders = orders_upto(len(potential), D_t)
        self._values: Dict[Order, Dict[TLDiagram, Scalar]] = {alpha: {} for alpha in self.orders}
        self._views = {alpha: _OrderView(self, alpha) for alpha in self.orders}

    @property
    def variables(self) -> List[str]:
        return self.potential.names

    def depth_limit(self, alpha: Order) -> int:
        return self.D + self.potential.excess * (self.D_t - sum(alpha))

    def check_depth(self, alpha: Order, m: int) -> None:
        if m > self.depth_limit(alpha):
            raise TruncationError(f"order {alpha} is only available to depth {self.depth_limit(alpha)}, needs {m}")

    def view(self, alpha: Order) -> _OrderView:
        if alpha not in self._views:
            raise TruncationError(f"order {alpha} is beyond the coupling truncation {self.D_t}")
        return self._views[alpha]

    def coefficient(self, alpha: Order, d: TLDiagram) -> Scalar:
        """Coefficient of t^alpha in <T_m, d>."""
        if alpha not in self._values:
            raise TruncationError(f"order {alpha} is beyond the coupling truncation {self.D_t}")
        if not any(alpha):
            return self.base.pair(d)
        self.check_depth(alpha, d.m)
        if d.m == 0:
            return ZERO
        cache = self._values[alpha]
        if d not in cache:
            cache[d] = DELTA * self.sd_bracket(alpha, PAElement(1, {(d.m - 1, rotate(d, -1)): ONE}))
        return cache[d]

    def sd_bracket(self, alpha: Order, a: PAElement) -> Scalar:
        """
        delta (tau boxtimes tau)(d a) - tau(DW ^ a) at order alpha; equals
        tau(Lambda ^ a) at order alpha when the equation holds.
        """
        return _sd_bracket(self.view, self.potential, alpha, a)

    def series(self, d: TLDiagram) -> FormalSeries:
        return FormalSeries(self.variables, self.D_t, {alpha: self.coefficient(alpha, d) for alpha in self.orders})

    def tau(self, x: PAElement) -> FormalSeries:
        """tau_k(x) as a series in the couplings."""
        return FormalSeries(self.variables, self.D_t, {alpha: tau_k(x, self.view(alpha)) for alpha in self.orders})

    def explicit_T(self, alpha: Order, m: int) -> Dict[TLDiagram, Scalar]:
        """All pairings <T_m, d> at order alpha."""
        return {d: self.coefficient(alpha, d) for d in all_diagrams(2 * m)}

    def moments(self, n_max: Optional[int] = None) -> Dict[str, Dict[int, FormalSeries]]:
        """Series of tau_0 of cup powers and tau_1 of powers of the x-variable."""
        n_max = self.D if n_max is None else n_max
        return {
            "cup": {n: self.tau(wedge_power(cup(), n)) for n in range(1, n_max + 1)},
            "x": {n: self.tau(wedge_power(x_variable(), n)) for n in range(1, n_max + 1)},
        }

    def to_json(self) -> Dict:
        moments = self.moments()
        return {
            "depth": self.D,
            "t_degree": self.D_t,
            "potential": self.potential.to_json(),
            "moments": {
                name: {str(n): s.to_json() for n, s in series.items()} for name, series in moments.items()
            },
        }


def _sd_bracket(view, potential: Potential, alpha: Order, a: PAElement) -> Scalar:
    k = len(alpha)
    total = ZERO
    box = diff_quotient(a)
    if not box.is_zero():
        for beta, gamma in splittings(alpha):
            total = total + DELTA * tau_box(box, view(beta), view(gamma))
    for i in range(k):
        lower = order_minus(alpha, unit_order(k, i))
        if lower is None:
            continue
        total = total - tau_k(wedge(potential.gradient(i), a), view(lower))
    return total


def _peel(unknowns: Sequence[TLDiagram], rows: List[Tuple[Dict[TLDiagram, int], Scalar]]) -> Tuple[Dict[TLDiagram, Scalar], int, int]:
    """
    Sparse exact elimination for systems whose rows can be resolved one
    unknown at a time.

    Returns:
        (solved values, number of unresolved unknowns, number of violated rows)
    """
    values: Dict[TLDiagram, Scalar] = {}
    pending = list(rows)
    while True:
        rest = []
        progress = False
        for coeffs, rhs in pending:
            open_vars = [u for u in coeffs if u not in values]
            if len(open_vars) == 1:
                u = open_vars[0]
                known = sum((coeffs[v] * values[v] for v in coeffs if v != u), ZERO)
                values[u] = (rhs - known) / coeffs[u]
                progress = True
            else:
                rest.append((coeffs, rhs))
        pending = rest
        if not progress:
            break
    violated = 0
    for coeffs, rhs in pending:
        if any(u not in values for u in coeffs):
            continue
        lhs = sum((coeffs[u] * values[u] for u in coeffs), ZERO)
        if not is_zero(lhs - rhs):
            violated += 1
    nullity = sum(1 for u in unknowns if u not in values)
    return values, nullity, violated


def _solve_depth(trace: GibbsTrace, alpha: Order, m: int) -> None:
    unknowns = all_diagrams(2 * m)
    # One Schwinger-Dyson row per diagram, then the rotation constraints
    rows: List[Tuple[Dict[TLDiagram, int], Scalar]] = [({d: 1}, trace.coefficient(alpha, d)) for d in unknowns]
    for d in unknowns:
        turned = rotate(d, 2)
        if turned != d:
            rows.append(({d: 1, turned: -1}, ZERO))
    values, nullity, violated = _peel(unknowns, rows)
    # Every diagram has its own row, so nullity is always 0 and only rotation rows can fail
    logger.info(
        "order %s depth %d: %d diagrams fixed by their own rows, %d of %d rotation rows violated",
        alpha, m, len(values), violated, len(rows) - len(unknowns),
    )
    if violated:
        raise SolverRankError(
            f"Schwinger-Dyson system at order {alpha}, depth {m}: {violated} inconsistent rotation rows",
            order=alpha,
            nullity=nullity,
        )
    trace._values[alpha].update(values)


def solve_sd(V: Potential, D: Optional[int] = None, D_t: Optional[int] = None) -> GibbsTrace:
    """
    Solve the Schwinger-Dyson equation to depth D and coupling degree D_t.

    Raises:
        ResourceLimitError: if D, D_t or the implied base depth exceed the caps
        SolverRankError: if some order is under-determined or inconsistent
    """
    caps = get_caps()
    D = caps.max_depth if D is None else D
    D_t = caps.max_t_degree if D_t is None else D_t
    if D < 1 or D_t < 0:
        raise ArgumentError("depth must be positive and t-degree nonnegative")
    if D > caps.max_depth:
        raise ResourceLimitError(f"depth {D} exceeds the cap {caps.max_depth}")
    if D_t > caps.max_t_degree:
        raise ResourceLimitError(f"t-degree {D_t} exceeds the cap {caps.max_t_degree}")
    base_depth = D + V.excess * D_t
    base = build_T(named_law("semicircle", base_depth), base_depth)
    trace = GibbsTrace(V, D, D_t, base)
    for alpha in trace.orders:
        if not any(alpha):
            continue
        for m in range(1, D + 1):
            _solve_depth(trace, alpha, m)
    return trace


def sd_residual(G: Union[GibbsTrace, TSeries], V: Potential, a: PAElement, D_t: Optional[int] = None) -> FormalSeries:
    """
    LHS minus RHS of the Schwinger-Dyson equation for a, order by order.

    A plain T-series is treated as a Gibbs state with vanishing higher orders.
    """
    if a.k != 1:
        raise ArgumentError("the Schwinger-Dyson equation is tested on Gr_1")
    if isinstance(G, GibbsTrace):
        view = G.view
        D_t = G.D_t if D_t is None else min(D_t, G.D_t)
    else:
        D_t = 1 if D_t is None else D_t
        zero = _ZeroView()

        def view(alpha: Order):
            return zero if any(alpha) else G

    lam = x_variable()
    out = {}
    for alpha in orders_upto(len(V), D_t):
        lhs = tau_k(wedge(lam, a), view(alpha))
        out[alpha] = lhs - _sd_bracket(view, V, alpha, a)
    return FormalSeries(V.names, D_t, out)
