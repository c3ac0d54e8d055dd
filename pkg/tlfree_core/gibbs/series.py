"""
Truncated formal power series in the couplings t_1..t_k with coefficients
in the scalars of the diagram calculus.
"""
import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..algebra.scalars import ZERO, LaurentScalar, RationalFunctionScalar, Scalar, is_zero, scalar_from_json, scalar_to_json, specialize, to_fraction
from ..exceptions import ArgumentError, SerializationError

Order = Tuple[int, ...]


def orders_upto(k: int, degree: int) -> List[Order]:
    """All multi-indices of length k and total degree <= degree, by degree."""
    out = [a for a in itertools.product(range(degree + 1), repeat=k) if sum(a) <= degree]
    return sorted(out, key=lambda a: (sum(a), a))


def unit_order(k: int, i: int) -> Order:
    return tuple(1 if j == i else 0 for j in range(k))


def order_minus(alpha: Order, beta: Order) -> Optional[Order]:
    diff = tuple(a - b for a, b in zip(alpha, beta))
    return diff if all(x >= 0 for x in diff) else None


def splittings(alpha: Order) -> Iterable[Tuple[Order, Order]]:
    """Every (beta, gamma) with beta + gamma = alpha."""
    for beta in itertools.product(*(range(a + 1) for a in alpha)):
        yield beta, tuple(a - b for a, b in zip(alpha, beta))


def format_order(variables: Sequence[str], alpha: Order) -> str:
    parts = [name if a == 1 else f"{name}^{a}" for name, a in zip(variables, alpha) if a]
    return "*".join(parts) or "1"


class FormalSeries:
    """Sum of c_alpha t^alpha over |alpha| <= truncation."""

    __slots__ = ("variables", "truncation", "coefficients")

    def __init__(self, variables: Sequence[str], truncation: int, coefficients: Optional[Mapping[Order, Scalar]] = None):
        self.variables = tuple(variables)
        self.truncation = truncation
        clean: Dict[Order, Scalar] = {}
        for alpha, c in (coefficients or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != len(self.variables):
                raise ArgumentError(f"order {alpha} does not match variables {self.variables}")
            if sum(alpha) > truncation:
                raise ArgumentError(f"order {alpha} exceeds truncation {truncation}")
            if not isinstance(c, (LaurentScalar, RationalFunctionScalar)):
                c = LaurentScalar.coerce(c)
            if not is_zero(c):
                clean[alpha] = c
        self.coefficients = clean

    @classmethod
    def constant(cls, variables: Sequence[str], truncation: int, value: Scalar) -> "FormalSeries":
        return cls(variables, truncation, {tuple(0 for _ in variables): value})

    def coefficient(self, alpha: Order) -> Scalar:
        return self.coefficients.get(tuple(alpha), ZERO)

    def is_zero(self) -> bool:
        return not self.coefficients

    def _check(self, other: "FormalSeries") -> None:
        if self.variables != other.variables:
            raise ArgumentError(f"series in {self.variables} and {other.variables}")

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        self._check(other)
        out = dict(self.coefficients)
        for alpha, c in other.coefficients.items():
            out[alpha] = out[alpha] + c if alpha in out else c
        return FormalSeries(self.variables, min(self.truncation, other.truncation),
                            {a: c for a, c in out.items() if sum(a) <= min(self.truncation, other.truncation)})

    def __neg__(self) -> "FormalSeries":
        return FormalSeries(self.variables, self.truncation, {a: -c for a, c in self.coefficients.items()})

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries(self.variables, self.truncation, {a: c * other for a, c in self.coefficients.items()})
        self._check(other)
        truncation = min(self.truncation, other.truncation)
        out: Dict[Order, Scalar] = {}
        for a1, c1 in self.coefficients.items():
            for a2, c2 in other.coefficients.items():
                alpha = tuple(x + y for x, y in zip(a1, a2))
                if sum(alpha) > truncation:
                    continue
                out[alpha] = out[alpha] + c1 * c2 if alpha in out else c1 * c2
        return FormalSeries(self.variables, truncation, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.variables == other.variables and (self - other).is_zero()

    __hash__ = None

    def evaluate(self, t_values: Sequence, delta) -> Fraction:
        """Exact value of the truncated polynomial at rational t and delta."""
        if len(t_values) != len(self.variables):
            raise ArgumentError("one value per coupling is required")
        ts = [to_fraction(t) for t in t_values]
        total = Fraction(0)
        for alpha, c in self.coefficients.items():
            term = specialize(c, delta)
            for t, a in zip(ts, alpha):
                term *= t ** a
            total += term
        return total

    def to_json(self) -> Dict:
        return {
            "variables": list(self.variables),
            "truncation": self.truncation,
            "coefficients": [
                {"order": list(alpha), "value": scalar_to_json(c)}
                for alpha, c in sorted(self.coefficients.items(), key=lambda x: (sum(x[0]), x[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FormalSeries":
        try:
            coeffs = {tuple(int(a) for a in item["order"]): scalar_from_json(item["value"]) for item in data["coefficients"]}
            return cls(data["variables"], int(data["truncation"]), coeffs)
        except (KeyError, TypeError, ValueError) as e:
            raise SerializationError(f"Malformed formal series: {e}") from e

    def __repr__(self):
        inner = " + ".join(f"({c})*{format_order(self.variables, a)}" for a, c in sorted(self.coefficients.items())) or "0"
        return f"FormalSeries({inner})"
