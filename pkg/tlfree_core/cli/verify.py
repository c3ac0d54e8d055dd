"""
Invariant suites behind `tlfree verify`.

Every check returns (passed, detail). Suites are idempotent: checks build
their own data and seed their own random streams.
"""
import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from rich.console import Console
from rich.table import Table

from ..algebra.scalars import DELTA, ONE, LaurentScalar, is_zero, specialize
from ..algebra.tl_algebra import all_diagrams, cap_generator, compose, fatten, jones_wenzl, rotate
from ..calculus.free_calc import conjugate_variable, diff_quotient, held_out_residuals, partial_prime, partial_star
from ..combinatorics.nc_core import catalan, enumerate_nc, kreweras
from ..gibbs.potential import quartic_potential
from ..gibbs.solver import solve_sd
from ..gibbs.tangles import tangle_oracle
from ..graph.graph_model import MCConfig, alternating_word, mc_estimate, single_edge, wick_expectation
from ..planar.elements import BoxElement, PAElement, cup, diagram_basis, include_up, tensor_op, wedge, wedge_power, x_variable
from ..planar.pa_trace import box_inner, build_T, cup_moments, gram_psd, mixed_cumulant, pa_inner, pair_with, product_formula, tau_k
from ..probability.law import CumulantSeq, convolution_power, cumulants_to_moments, moments_to_cumulants, named_law

logger = logging.getLogger(__name__)

CheckResult = Tuple[bool, str]


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], CheckResult]


def _same(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    if isinstance(a, Fraction):
        a, b = b, a
    return is_zero(a - b)


def _semicircle(depth: int):
    return build_T(named_law("semicircle", depth), depth)


def check_kreweras_rotation(n_max: int = 7) -> CheckResult:
    cases = 0
    for n in range(1, n_max + 1):
        for pi in enumerate_nc(n):
            cases += 1
            if fatten(kreweras(pi)) != rotate(fatten(pi), -1):
                return False, f"fails at {pi}"
    return True, f"{cases} partitions"


def check_moment_roundtrip(samples: int = 100, depth: int = 8, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(samples):
        k = CumulantSeq.of([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(depth)])
        if moments_to_cumulants(cumulants_to_moments(k)) != k:
            return False, f"roundtrip fails for {k.k}"
    return True, f"{samples} sequences at depth {depth}"


def check_cup_distribution(p_max: int = 5) -> CheckResult:
    moments = cup_moments(_semicircle(2 * p_max), 2 * p_max)
    for n, value in enumerate(moments, start=1):
        expected = LaurentScalar.delta_power(n // 2, catalan(n // 2)) if n % 2 == 0 else LaurentScalar.zero()
        if not _same(value, expected):
            return False, f"tau_0(cup^{n}) = {value}"
    for law in ("semicircle", "free-poisson"):
        nu = named_law(law, 6)
        T = build_T(nu, 6)
        expected = cumulants_to_moments(convolution_power(nu, DELTA)).m
        if not all(_same(a, b) for a, b in zip(cup_moments(T, 6), expected)):
            return False, f"{law}: cup law is not the delta-th free convolution power"
    return True, f"cup moments to degree {2 * p_max}"


def check_side_cap_distribution(depth: int = 8) -> CheckResult:
    lam = x_variable()
    for law in ("semicircle", "free-poisson"):
        nu = named_law(law, depth)
        T = build_T(nu, depth)
        expected = cumulants_to_moments(convolution_power(nu, DELTA ** -1)).m
        for n in range(1, depth + 1):
            value = tau_k(wedge_power(lam, n), T) * DELTA ** -n
            if not _same(value, expected[n - 1]):
                return False, f"{law}: moment {n} = {value}"
    return True, f"moments to {depth} for both laws"


def check_conjugate_variable(cutoff: int = 3, delta_value: int = 2) -> CheckResult:
    T = _semicircle(2 * cutoff + 1)
    cv = conjugate_variable(T, cutoff, delta_value)
    if cv.xi != x_variable() or not cv.exact:
        return False, f"xi = {cv.xi}, residual {cv.residual_norm}"
    if any(r != 0 for r in held_out_residuals(cv, T)):
        return False, "held-out residual"
    return True, f"xi = Lambda on {cv.basis_size} basis elements"


def _small_boxes() -> List[BoxElement]:
    pieces = [PAElement(1, {(n, d): ONE}) for n in range(2) for d in all_diagrams(2 * n + 2)]
    boxes = [tensor_op(a, b) for a in pieces for b in pieces]
    boxes += [tensor_op(a, b) + tensor_op(b, a) for a, b in zip(pieces, pieces[1:])]
    boxes += [tensor_op(a, b).scale(ONE * 3) - tensor_op(b, b) for a, b in zip(pieces, reversed(pieces))]
    one = pieces[0]
    for d in all_diagrams(6):
        two = PAElement(1, {(2, d): ONE})
        boxes += [tensor_op(two, one), tensor_op(one, two)]
    return boxes


def check_adjoint(delta_value: int = 2, n_max: int = 3) -> CheckResult:
    T = _semicircle(2 * n_max + 2)
    xi = x_variable()
    basis = diagram_basis(n_max, 1)
    boxes = _small_boxes()
    stars = [partial_star(q, T, xi) for q in boxes]
    for a in basis:
        da = diff_quotient(a)
        for q, star in zip(boxes, stars):
            lhs = specialize(box_inner(da, q, T), delta_value)
            rhs = specialize(pa_inner(a, star, T), delta_value)
            if lhs != rhs:
                return False, f"<da, Q> = {lhs}, <a, d*Q> = {rhs}"
    return True, f"{len(basis)} x {len(boxes)} pairs at delta={delta_value}"


def check_jones_wenzl() -> CheckResult:
    if not partial_prime(include_up(cup())).is_zero():
        return False, "partial' of the included cup is nonzero"
    J = jones_wenzl(2)
    if compose(J, J) != J:
        return False, "JW_2 is not idempotent"
    if not compose(cap_generator(1, 2), J).is_zero():
        return False, "JW_2 is not killed by E"
    return True, "JW_2 idempotent and E-annihilated"


def check_product_formula() -> CheckResult:
    T = _semicircle(6)
    pool = [cup(), wedge(cup(), cup())]
    cases = 0
    for n in range(1, 4):
        for choice in _words(pool, n):
            if sum(x.degree() for x in choice) > 6:
                continue
            cases += 1
            if not _same(mixed_cumulant(choice, T), product_formula(choice, T)):
                return False, f"mismatch for degrees {[x.degree() for x in choice]}"
    return True, f"{cases} argument tuples"


def _words(pool: Sequence, n: int):
    if n == 0:
        yield []
        return
    for x in pool:
        for rest in _words(pool, n - 1):
            yield [x] + rest


def check_positivity(deltas: Sequence = (1, Fraction(3, 2), 2, 3)) -> CheckResult:
    T = _semicircle(6)
    basis = diagram_basis(3, 0)
    for d in deltas:
        _, psd = gram_psd(basis, T, d)
        if not psd:
            return False, f"Gram matrix not PSD at delta={d}"
    return True, f"{len(basis)} basis elements"


def check_traciality(total: int = 4, k_max: int = 2) -> CheckResult:
    cases = 0
    for law in ("semicircle", "free-poisson"):
        T = build_T(named_law(law, total), total)
        for k in range(k_max + 1):
            basis = diagram_basis(total, k)
            for x in basis:
                for y in basis:
                    if x.degree() + y.degree() > total:
                        continue
                    cases += 1
                    if not _same(tau_k(wedge(x, y), T), tau_k(wedge(y, x), T)):
                        return False, f"{law}, k={k}: {x} and {y} do not commute under the trace"
    return True, f"{cases} pairs"


def check_free_gibbs(depth: int = 6) -> CheckResult:
    G = solve_sd(quartic_potential(), depth, 1)
    base = _semicircle(depth)
    for m in range(depth + 1):
        for d in all_diagrams(2 * m):
            if not _same(G.coefficient((0,), d), base.pair(d)):
                return False, f"order zero differs at {d}"
    V = G.potential
    for m in (1, 2):
        oracle = tangle_oracle(V, m, (1,))
        for d in all_diagrams(2 * m):
            expected = pair_with(oracle, PAElement(0, {(m, d): ONE}))
            if not _same(G.coefficient((1,), d), expected):
                return False, f"order t at {d}: solver {G.coefficient((1,), d)}, oracle {expected}"
    return True, f"order zero to depth {depth}, order one against the oracle for m <= 2"


def check_monte_carlo(dim: int = 200, samples: int = 500, seed: int = 7) -> CheckResult:
    G = single_edge()
    w = alternating_word(0, 0, 2)
    exact = float(wick_expectation(w, G))
    cfg = MCConfig(dim, samples, seed)
    mean, stderr = mc_estimate(w, G, cfg)
    again = mc_estimate(w, G, cfg)
    if again != (mean, stderr):
        return False, "fixed seed is not reproducible"
    if abs(mean - exact) > 3 * stderr:
        return False, f"mean {mean:.4f} +- {stderr:.4f} vs exact {exact}"
    return True, f"mean {mean:.4f} +- {stderr:.4f} vs exact {exact}"


SUITES: Dict[str, List[Check]] = {
    "core": [
        Check("kreweras rotation", check_kreweras_rotation),
        Check("moment/cumulant roundtrip", check_moment_roundtrip),
        Check("cup distribution", check_cup_distribution),
        Check("side-cap distribution", check_side_cap_distribution),
        Check("conjugate variable", check_conjugate_variable),
        Check("adjoint identity", check_adjoint),
        Check("Jones-Wenzl", check_jones_wenzl),
        Check("product formula", check_product_formula),
        Check("positivity", check_positivity),
        Check("traciality", check_traciality),
    ],
    "gibbs": [Check("free Gibbs state", check_free_gibbs)],
    "graph": [Check("Monte Carlo", check_monte_carlo)],
}
SUITES["all"] = SUITES["core"] + SUITES["gibbs"] + SUITES["graph"]


def run_suite(name: str, console: Console = None) -> Dict[str, Dict]:
    """Run a suite, print a pass/fail table and return the results."""
    checks = SUITES[name]
    results: Dict[str, Dict] = {}
    for check in checks:
        start = time.perf_counter()
        try:
            passed, detail = check.run()
        except Exception as e:
            logger.exception("check %s raised", check.name)
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        logger.info("%s: %s (%.2fs)", check.name, "pass" if passed else "FAIL", elapsed)
        results[check.name] = {"passed": passed, "detail": detail, "seconds": round(elapsed, 3)}

    if console is not None:
        table = Table(title=f"tlfree verify --suite {name}")
        table.add_column("check")
        table.add_column("result")
        table.add_column("detail")
        table.add_column("time", justify="right")
        for check_name, r in results.items():
            mark = "[green]pass[/green]" if r["passed"] else "[red]FAIL[/red]"
            table.add_row(check_name, mark, r["detail"], f"{r['seconds']:.2f}s")
        console.print(table)
    return results
