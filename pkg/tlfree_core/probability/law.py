"""
Scalar laws as truncated moment and free cumulant sequences.

Entries may be rationals or Laurent scalars in delta; laws only ever carry
their first D moments.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..algebra.linalg import is_psd_exact, min_eigenvalue
from ..algebra.scalars import LaurentScalar, RationalFunctionScalar, specialize, to_fraction
from ..combinatorics.nc_core import NCPartition, enumerate_nc, kreweras, mobius_to_top
from ..exceptions import ArgumentError, SerializationError

logger = logging.getLogger(__name__)

Entry = Union[Fraction, LaurentScalar, RationalFunctionScalar]

NAMED_LAWS = ("semicircle", "free-poisson", "custom")


def _coerce(values: Sequence) -> Tuple[Entry, ...]:
    out = []
    for v in values:
        if isinstance(v, (LaurentScalar, RationalFunctionScalar)):
            out.append(v)
        else:
            out.append(to_fraction(v))
    return tuple(out)


@dataclass(frozen=True)
class MomentSeq:
    """Moments m_1..m_D; m_0 = 1 implicitly."""
    m: Tuple[Entry, ...]

    @classmethod
    def of(cls, values: Sequence) -> "MomentSeq":
        return cls(_coerce(values))

    @property
    def D(self) -> int:
        return len(self.m)

    def moment(self, n: int) -> Entry:
        if n == 0:
            return Fraction(1)
        if not 1 <= n <= self.D:
            raise ArgumentError(f"moment {n} outside depth {self.D}")
        return self.m[n - 1]

    def to_json(self) -> Dict:
        return {"D": self.D, "moments": [_entry_json(v) for v in self.m]}


@dataclass(frozen=True)
class CumulantSeq:
    """Free cumulants k_1..k_D."""
    k: Tuple[Entry, ...]

    @classmethod
    def of(cls, values: Sequence) -> "CumulantSeq":
        return cls(_coerce(values))

    @property
    def D(self) -> int:
        return len(self.k)

    def cumulant(self, n: int) -> Entry:
        if not 1 <= n <= self.D:
            raise ArgumentError(f"cumulant {n} outside depth {self.D}")
        return self.k[n - 1]

    def of_partition(self, pi: NCPartition) -> Entry:
        """kappa_pi = product of kappa_|V| over blocks."""
        value = Fraction(1)
        for b in pi.blocks:
            value = value * self.cumulant(len(b))
        return value

    def to_json(self) -> Dict:
        return {"D": self.D, "cumulants": [_entry_json(v) for v in self.k]}


def _entry_json(v: Entry):
    if isinstance(v, Fraction):
        return str(v)
    from ..algebra.scalars import scalar_to_json
    return scalar_to_json(v)


def _moment_of_partition(moments: Sequence[Entry], pi: NCPartition) -> Entry:
    value = Fraction(1)
    for b in pi.blocks:
        value = value * moments[len(b) - 1]
    return value


def cumulants_to_moments(k: CumulantSeq) -> MomentSeq:
    """m_n = sum over NC(n) of kappa_pi."""
    moments: List[Entry] = []
    for n in range(1, k.D + 1):
        total = Fraction(0)
        for pi in enumerate_nc(n):
            total = total + k.of_partition(pi)
        moments.append(total)
    return MomentSeq(tuple(moments))


def moments_to_cumulants(m: MomentSeq) -> CumulantSeq:
    """Moebius inversion: kappa_n = sum over NC(n) of mu(pi, 1_n) * m_pi."""
    cumulants: List[Entry] = []
    for n in range(1, m.D + 1):
        total = Fraction(0)
        for pi in enumerate_nc(n):
            total = total + mobius_to_top(pi) * _moment_of_partition(m.m, pi)
        cumulants.append(total)
    return CumulantSeq(tuple(cumulants))


def convolution_power(k: CumulantSeq, t) -> CumulantSeq:
    """Cumulants of the free convolution power: kappa_n -> t * kappa_n."""
    if not isinstance(t, (LaurentScalar, RationalFunctionScalar)):
        t = to_fraction(t)
    return CumulantSeq(tuple(t * c for c in k.k))


def hankel_matrix(m: MomentSeq, depth: int) -> List[List[Entry]]:
    """H_ij = m_{i+j} for 0 <= i, j <= depth/2."""
    if depth % 2:
        raise ArgumentError(f"Hankel depth must be even, got {depth}")
    if depth > m.D:
        raise ArgumentError(f"depth {depth} exceeds the {m.D} known moments")
    half = depth // 2
    return [[m.moment(i + j) for j in range(half + 1)] for i in range(half + 1)]


def divisibility_check(k: CumulantSeq, t, depth: int, delta_value=None) -> bool:
    """
    Necessary finite test that the law is t-times freely divisible: the
    Hankel matrix of the 1/t power is positive semidefinite to the given depth.

    delta_value specializes entries that depend on delta; it defaults to the
    configured delta.
    """
    if depth > k.D:
        raise ArgumentError(f"depth {depth} exceeds truncation {k.D}")
    if isinstance(t, (LaurentScalar, RationalFunctionScalar)):
        inverse = RationalFunctionScalar(LaurentScalar.one()) / t
    else:
        t = to_fraction(t)
        if t <= 0:
            raise ArgumentError("the divisibility parameter must be positive")
        inverse = 1 / t
    moments = cumulants_to_moments(convolution_power(k, inverse))
    hankel = hankel_matrix(moments, depth)
    if any(isinstance(v, (LaurentScalar, RationalFunctionScalar)) for row in hankel for v in row):
        if delta_value is None:
            from ..config import get_config
            delta_value = get_config().get("defaults.delta", "2")
        hankel = [[specialize(v, to_fraction(str(delta_value))) for v in row] for row in hankel]
    psd = is_psd_exact(hankel)
    logger.debug("Hankel check t=%s depth=%d: psd=%s (min eigenvalue %.3g)", t, depth, psd, min_eigenvalue(hankel))
    return psd


def named_law(name: str, depth: int, cumulants: Optional[Sequence] = None) -> CumulantSeq:
    """
    Built-in laws: semicircle (kappa_2 = 1), free-poisson (all kappa_n = 1),
    custom (explicit cumulants, zero-padded to depth).
    """
    if depth < 1:
        raise ArgumentError("depth must be positive")
    if name == "semicircle":
        return CumulantSeq.of([1 if n == 2 else 0 for n in range(1, depth + 1)])
    if name == "free-poisson":
        return CumulantSeq.of([1] * depth)
    if name == "custom":
        if not cumulants:
            raise ArgumentError("custom law needs an explicit cumulant list")
        values = list(cumulants)[:depth]
        return CumulantSeq.of(values + [0] * (depth - len(values)))
    raise ArgumentError(f"Unknown law {name!r}; expected one of {', '.join(NAMED_LAWS)}")


def law_from_json(data) -> CumulantSeq:
    try:
        if "cumulants" in data:
            return CumulantSeq.of(data["cumulants"])
        return moments_to_cumulants(MomentSeq.of(data["moments"]))
    except (KeyError, TypeError) as e:
        raise SerializationError(f"Malformed law JSON: {e}") from e


def mixed_cumulant(moment: Callable[[Tuple[int, ...]], Entry], n: int) -> Entry:
    """
    Free cumulant kappa_n(a_1, ..., a_n) from a moment functional.

    Args:
        moment: Maps an increasing tuple of positions (i_1 < ... < i_s) to
            phi(a_{i_1} ... a_{i_s})
        n: Number of arguments
    """
    total = Fraction(0)
    for pi in enumerate_nc(n):
        term = mobius_to_top(pi)
        for b in pi.blocks:
            term = term * moment(b)
        total = total + term
    return total


def projection_moment(pi: NCPartition, labels: Sequence[int], weights: Sequence) -> Tuple[Fraction, Fraction]:
    """
    phi_{Kr(pi)}[p_{i_1}, ..., p_{i_n}] for mutually orthogonal projections
    with phi(p_j) = weights[j].

    Returns:
        (direct evaluation, closed product formula); the two always agree
    """
    if len(labels) != pi.n:
        raise ArgumentError(f"{len(labels)} labels for NC({pi.n})")
    w = [to_fraction(x) for x in weights]
    kr = kreweras(pi)

    direct = Fraction(1)
    for block in kr.blocks:
        first = labels[block[0] - 1]
        if any(labels[x - 1] != first for x in block):
            direct = Fraction(0)
            break
        direct *= w[first]

    if _refines_labels(kr, labels):
        formula = w[labels[-1]]
        for block in pi.blocks:
            for x in block[:-1]:
                formula *= w[labels[x - 1]]
    else:
        formula = Fraction(0)
    return direct, formula


def _refines_labels(sigma: NCPartition, labels: Sequence[int]) -> bool:
    return all(len({labels[x - 1] for x in b}) == 1 for b in sigma.blocks)
