"""
Free differential calculus on Gr_1.

Difference quotient, cyclic gradient, the # and dot actions, cyclic
symmetrization, the conjugate variable and its Fisher information, and the
adjoint of the difference quotient.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Union

from ..algebra.gluing import glue
from ..algebra.linalg import solve_exact
from ..algebra.scalars import (
    DELTA,
    ONE,
    ZERO,
    LaurentScalar,
    RationalFunctionScalar,
    Scalar,
    is_zero,
    specialize,
    to_fraction,
)
from ..algebra.tl_algebra import TLDiagram, all_diagrams, jones_wenzl, rotate
from ..exceptions import ArgumentError, SolverRankError, TruncationError
from ..planar.elements import (
    BoxElement,
    PAElement,
    box_halves,
    box_product,
    close_sides,
    diagram_basis,
    wedge,
)
from ..planar.pa_trace import TSeries, tau_box, tau_k

logger = logging.getLogger(__name__)

FORMAL = "formal"


def _add(out: Dict, key, coeff: Scalar) -> None:
    out[key] = out[key] + coeff if key in out else coeff


def _loops(coeff: Scalar, loops: int) -> Scalar:
    return coeff * DELTA ** loops if loops else coeff


def _require_k(x, k: int, name: str) -> None:
    if x.k != k:
        raise ArgumentError(f"{name} expects k={k}, got k={x.k}")


@dataclass
class DerivationResult:
    """A value of the difference quotient (or its JW-compressed form) on a Gr_1 element."""
    value: BoxElement
    source: Optional[PAElement] = None
    compressed: bool = False

    def __post_init__(self):
        _require_k(self.value, 1, "DerivationResult")

    def to_json(self) -> Dict:
        out = {"operator": "d'" if self.compressed else "d", "value": self.value.to_json()}
        if self.source is not None:
            out["source"] = self.source.to_json()
        return out


def diff_quotient(x: PAElement) -> BoxElement:
    """
    Free difference quotient Gr_1 -> Gr_1 boxtimes Gr_1^op.

    Splitting a P_{n,1} diagram at top pair j keeps its matching: the points
    before the pair become Tx, the pair becomes (Rx, Ly) and the points after
    it become Ty, so the term lives in V_1(j-1, n-j).
    """
    _require_k(x, 1, "diff_quotient")
    out: Dict = {}
    for (n, d), c in x.terms.items():
        for j in range(1, n + 1):
            _add(out, (j - 1, n - j, d), c)
    return BoxElement(1, out)


def cyclic_gradient(x: PAElement) -> PAElement:
    """
    Cyclic gradient Gr_0 -> Gr_1: open each string pair j of a P_n diagram
    to the sides, point 2j going left and point 2j-1 right.
    """
    _require_k(x, 0, "cyclic_gradient")
    out: Dict = {}
    for (n, d), c in x.terms.items():
        size = 2 * n
        for j in range(1, n + 1):
            order = [2 * j] + [p for p in range(2 * j + 1, size + 1)] + [p for p in range(1, 2 * j - 1)] + [2 * j - 1]
            mapping = {old: new for new, old in enumerate(order, start=1)}
            _add(out, (n - 1, d.relabel(mapping)), c)
    return PAElement(1, out)


def close_up(q: BoxElement) -> PAElement:
    """
    Join Lx to Ry over the top and read the rest from Ly: left Ly, tops Ty
    then Tx, right Rx, scaled by delta^-1.
    """
    _require_k(q, 1, "close_up")
    out: Dict = {}
    for (s, t, d), c in q.terms.items():
        g = box_halves(1, s, t)
        externals = g["Ly"] + g["Ty"] + g["Tx"] + g["Rx"]
        pairs, loops = glue([d.pairs], [(g["Lx"][0], g["Ry"][0])], externals)
        _add(out, (s + t, TLDiagram.trusted(pairs, 2 * (s + t) + 2)), c * DELTA ** (loops - 1))
    return PAElement(1, out)


def hash_op(q: BoxElement, b: PAElement) -> PAElement:
    """Q # b: b sits between the halves of Q, so (x tensor y^op) # b = x ^ b ^ y."""
    _require_k(q, 1, "hash_op")
    _require_k(b, 1, "hash_op")
    out: Dict = {}
    for (s, t, dq), cq in q.terms.items():
        g = box_halves(1, s, t)
        for (nb, db), cb in b.terms.items():
            externals = (
                [("q", p) for p in g["Lx"] + g["Tx"]]
                + [("b", p) for p in range(2, 2 * nb + 2)]
                + [("q", p) for p in g["Ty"] + g["Ry"]]
            )
            wires = [(("q", g["Rx"][0]), ("b", 1)), (("b", 2 * nb + 2), ("q", g["Ly"][0]))]
            pairs, loops = glue(
                [[(("q", i), ("q", j)) for i, j in dq.pairs], [(("b", i), ("b", j)) for i, j in db.pairs]],
                wires,
                externals,
            )
            n = s + t + nb
            _add(out, (n, TLDiagram.trusted(pairs, 2 * n + 2)), _loops(cq * cb, loops))
    return PAElement(1, out)


def dot_op(a: PAElement, b: PAElement) -> PAElement:
    """a . b: the side strings of a ^ b joined around the bottom, in Gr_0."""
    _require_k(a, 1, "dot_op")
    _require_k(b, 1, "dot_op")
    out: Dict = {}
    for (n, d), c in wedge(a, b).terms.items():
        closed, loops = close_sides(n, 1, d)
        _add(out, (n, closed), _loops(c, loops))
    return PAElement(0, out)


def projection(x: PAElement) -> PAElement:
    """Pi: drop the constant (n = 0) part."""
    return PAElement(x.k, {key: c for key, c in x.terms.items() if key[0] > 0})


def number_op(x: PAElement) -> PAElement:
    """N: multiply the P_n part by n."""
    return PAElement(x.k, {(n, d): c * n for (n, d), c in x.terms.items() if n > 0})


def sigma_op(x: PAElement) -> PAElement:
    """Sigma = N^-1 composed with Pi."""
    return PAElement(x.k, {(n, d): c / n for (n, d), c in x.terms.items() if n > 0})


def symmetrizer(x: PAElement) -> PAElement:
    """Cyclic symmetrizer on Gr_0: the average over the n two-click rotations of a P_n term."""
    _require_k(x, 0, "symmetrizer")
    out: Dict = {}
    for (n, d), c in projection(x).terms.items():
        share = c / n
        for r in range(n):
            _add(out, (n, rotate(d, 2 * r)), share)
    return PAElement(0, out)


# Partial traces on boxes


def _cap(
    q: BoxElement,
    T: TSeries,
    select,
    factor_exp: int = 0,
) -> PAElement:
    """
    For each box term, select(s, t, groups) returns (capped points, wires,
    externals, n of the result) or None; the capped points are glued to T.
    """
    out: Dict = {}
    for (s, t, d), c in q.terms.items():
        g = box_halves(q.k, s, t)
        choice = select(s, t, g)
        if choice is None:
            continue
        capped, wires, externals, n = choice
        m = len(capped) // 2
        element = T.explicit(m)
        if element is None:
            raise ArgumentError("partial traces need a trace with explicit T_m")
        base = [(("q", i), ("q", j)) for i, j in d.pairs]
        for e, ce in element.terms.items():
            all_wires = [(("q", a), ("q", b)) for a, b in wires]
            all_wires += [(("q", p), ("T", idx)) for idx, p in enumerate(capped, start=1)]
            pairs, loops = glue(
                [base, [(("T", i), ("T", j)) for i, j in e.pairs]],
                all_wires,
                [("q", p) for p in externals],
            )
            _add(out, (n, TLDiagram.trusted(pairs, 2 * n + 2)), c * ce * DELTA ** (loops + factor_exp))
    return PAElement(q.k, out)


def box_left_trace(q: BoxElement, T: TSeries) -> PAElement:
    """id tensor tau: cap Ty with T_t and join Ly to Ry; the x half remains."""
    _require_k(q, 1, "box_left_trace")
    return _cap(q, T, lambda s, t, g: (g["Ty"], [(g["Ly"][0], g["Ry"][0])], g["Lx"] + g["Tx"] + g["Rx"], s), -1)


def box_right_trace(q: BoxElement, T: TSeries) -> PAElement:
    """tau tensor id: cap Tx with T_s and join Lx to Rx; the y half remains."""
    _require_k(q, 1, "box_right_trace")
    return _cap(q, T, lambda s, t, g: (g["Tx"], [(g["Lx"][0], g["Rx"][0])], g["Ly"] + g["Ty"] + g["Ry"], t), -1)


def partial_star(q: BoxElement, T: TSeries, xi: PAElement) -> PAElement:
    """
    Adjoint of the difference quotient for <a, b> = tau_1(a ^ b^dagger) and
    <Q, R> = delta * (tau boxtimes tau)(Q R^dagger).

    The xi insertion Q # xi is corrected once per top pair j of each half:
    the part of that half beyond the pair is traced against T and the rest
    is fused across the pair.
    """
    _require_k(q, 1, "partial_star")
    _require_k(xi, 1, "partial_star")
    result = hash_op(q, xi)
    max_s = max((s for s, _, _ in q.terms), default=0)
    max_t = max((t for _, t, _ in q.terms), default=0)
    for j in range(1, max_s + 1):
        def upper(s, t, g, j=j):
            if s < j:
                return None
            tx = g["Tx"]
            wires = [(tx[2 * j - 1], g["Rx"][0]), (tx[2 * j - 2], g["Ly"][0])]
            return tx[2 * j:], wires, g["Lx"] + tx[:2 * j - 2] + g["Ty"] + g["Ry"], j - 1 + t
        result = result - _cap(q, T, upper)
    for j in range(1, max_t + 1):
        def lower(s, t, g, j=j):
            if t < j:
                return None
            ty = g["Ty"]
            wires = [(g["Ly"][0], ty[2 * j - 2]), (g["Rx"][0], ty[2 * j - 1])]
            return ty[:2 * j - 2], wires, g["Lx"] + g["Tx"] + ty[2 * j:] + g["Ry"], s + t - j
        result = result - _cap(q, T, lower)
    return result


def jw2_box() -> BoxElement:
    """The second Jones-Wenzl idempotent on the inner boundary of V_1(0, 0)."""
    out: Dict = {}
    for d, c in jones_wenzl(2, cap=2).terms.items():
        if isinstance(c, RationalFunctionScalar) and c.is_laurent():
            c = c.to_laurent()
        _add(out, (0, 0, rotate(d, -1)), c)
    return BoxElement(1, out)


def partial_prime(x: PAElement) -> BoxElement:
    """d'(x) = d(x) times JW_2 on the inner boundary."""
    return box_product(diff_quotient(x), jw2_box())


def derive(x: PAElement, compressed: bool = False) -> DerivationResult:
    """d(x), or d'(x) when compressed, with x kept alongside."""
    value = partial_prime(x) if compressed else diff_quotient(x)
    return DerivationResult(value=value, source=x, compressed=compressed)


# Conjugate variable


@dataclass
class ConjugateVariable:
    """
    Solution of tau_1(xi ^ x) = delta (tau boxtimes tau)(dx) on a truncated
    basis. residual_norm measures the solved system itself; residuals holds
    the identity evaluated one degree above the cutoff.
    """
    xi: PAElement
    residual_norm: Fraction = Fraction(0)
    cutoff: int = 0
    delta_value: Optional[Fraction] = None
    basis_size: int = 0
    residuals: List[Fraction] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.residual_norm == 0

    @property
    def held_out_exact(self) -> bool:
        return all(is_zero(r) for r in self.residuals)

    def to_json(self) -> Dict:
        return {
            "xi": self.xi.to_json(),
            "residual_norm": str(self.residual_norm),
            "cutoff": self.cutoff,
            "delta": FORMAL if self.delta_value is None else str(self.delta_value),
            "basis_size": self.basis_size,
            "held_out_exact": self.held_out_exact,
        }


def _to_solver_field(value: Scalar, delta_value: Optional[Fraction]):
    if delta_value is None:
        return RationalFunctionScalar.coerce(value)
    return specialize(value, delta_value)


def _from_solver_field(value, delta_value: Optional[Fraction]) -> Scalar:
    if delta_value is None:
        return value.to_laurent() if value.is_laurent() else value
    return LaurentScalar.constant(value)


def _sd_rhs(b: PAElement, T) -> Scalar:
    return DELTA * tau_box(diff_quotient(b), T)


def _solve(T, cutoff: int, delta_value: Optional[Fraction]) -> ConjugateVariable:
    basis = diagram_basis(cutoff, 1)
    zero = RationalFunctionScalar(ZERO) if delta_value is None else Fraction(0)
    matrix = [[_to_solver_field(tau_k(wedge(bj, bi), T), delta_value) for bj in basis] for bi in basis]
    rhs = [_to_solver_field(_sd_rhs(bi, T), delta_value) for bi in basis]
    sol, nullity = solve_exact(matrix, rhs, zero)
    logger.info(
        "conjugate variable at cutoff %d (delta=%s): %d unknowns, nullity %d",
        cutoff, FORMAL if delta_value is None else delta_value, len(basis), nullity,
    )
    if sol is None or nullity:
        raise SolverRankError(
            f"Gram system at cutoff {cutoff} is rank deficient (nullity {nullity})",
            order=cutoff,
            nullity=nullity,
        )
    gaps = [sum((a * s for a, s in zip(row, sol)), zero) - r for row, r in zip(matrix, rhs)]
    if delta_value is None:
        norm = Fraction(0) if all(is_zero(g) for g in gaps) else Fraction(1)
    else:
        norm = sum((g * g for g in gaps), Fraction(0))
    xi = PAElement(1, {})
    for coeff, b in zip(sol, basis):
        if not is_zero(coeff):
            xi = xi + b.scale(_from_solver_field(coeff, delta_value))
    return ConjugateVariable(xi=xi, residual_norm=norm, cutoff=cutoff, delta_value=delta_value, basis_size=len(basis))


def held_out_residuals(cv: ConjugateVariable, T, degree: Optional[int] = None) -> List[Fraction]:
    """tau_1(xi ^ b) - delta (tau boxtimes tau)(db) for every P_{degree,1} diagram b."""
    degree = cv.cutoff + 1 if degree is None else degree
    delta_value = cv.delta_value
    out = []
    for d in all_diagrams(2 * degree + 2):
        b = PAElement(1, {(degree, d): ONE})
        r = tau_k(wedge(cv.xi, b), T) - _sd_rhs(b, T)
        out.append(r if delta_value is None else specialize(r, delta_value))
    return out


def conjugate_variable(T: TSeries, cutoff: int, delta_value: Union[str, int, Fraction, None] = FORMAL) -> ConjugateVariable:
    """
    Solve for the conjugate variable in the span of all P_{n,1} diagrams
    with n <= cutoff and measure the defining identity one degree higher.

    A formal-delta solve that is rank deficient falls back to the configured
    default delta.

    Raises:
        TruncationError: if T is shallower than 2 * cutoff + 1
        SolverRankError: if the (specialized) system is rank deficient
    """
    if cutoff < 0:
        raise ArgumentError("cutoff must be nonnegative")
    T.check_depth(2 * cutoff + 1)
    if delta_value is None or delta_value == FORMAL:
        try:
            cv = _solve(T, cutoff, None)
        except SolverRankError as e:
            from ..config import get_config
            fallback = to_fraction(str(get_config().get("defaults.delta", "2")))
            logger.warning("formal solve failed (%s); falling back to delta=%s", e, fallback)
            cv = _solve(T, cutoff, fallback)
    else:
        value = to_fraction(delta_value)
        if value <= 0:
            raise ArgumentError("delta must be positive")
        cv = _solve(T, cutoff, value)

    cv.residuals = held_out_residuals(cv, T)
    if not cv.held_out_exact:
        misses = sum(1 for r in cv.residuals if not is_zero(r))
        logger.info("identity fails on %d of %d degree-%d diagrams", misses, len(cv.residuals), cutoff + 1)
    return cv


def fisher(T: TSeries, cutoff: int, delta_value=FORMAL) -> Union[Scalar, Fraction, float]:
    """
    Squared free Fisher information tau_1(xi ^ xi) at this cutoff, or
    math.inf when the cutoff system has no exact solution.
    """
    cv = conjugate_variable(T, cutoff, delta_value)
    if not cv.exact:
        return math.inf
    value = tau_k(wedge(cv.xi, cv.xi), T)
    return value if cv.delta_value is None else specialize(value, cv.delta_value)


def fisher_profile(T: TSeries, max_cutoff: int, delta_value) -> List[Fraction]:
    """
    tau_1(xi_c ^ xi_c) of the truncated solutions for c = 0..max_cutoff;
    each xi_c is the projection of the conjugate variable, so the list is
    nondecreasing.
    """
    value = to_fraction(delta_value)
    out = []
    for c in range(max_cutoff + 1):
        cv = _solve(T, c, value)
        out.append(specialize(tau_k(wedge(cv.xi, cv.xi), T), value))
    return out
