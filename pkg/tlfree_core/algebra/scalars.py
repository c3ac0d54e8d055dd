"""
Exact scalars in the loop parameter delta.

LaurentScalar is a Laurent polynomial with rational coefficients; every
diagram evaluation lives here. RationalFunctionScalar is a quotient of two
Laurent polynomials, kept reduced with a polynomial gcd, and is only needed
for quantum-integer ratios.
"""
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import sympy

from ..exceptions import ArgumentError, SerializationError, SingularityError

Rational = Union[int, Fraction]

_DELTA_SYMBOL = sympy.Symbol("delta")


def to_fraction(value) -> Fraction:
    """Coerce int, Fraction or 'p/q' strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ArgumentError("Booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ArgumentError(f"Not a rational: {value!r}") from e
    raise ArgumentError(f"Cannot use {type(value).__name__} as an exact rational")


class LaurentScalar:
    """Laurent polynomial in delta with rational coefficients."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Optional[Mapping[int, Rational]] = None):
        clean: Dict[int, Fraction] = {}
        for exp, c in (coeffs or {}).items():
            c = to_fraction(c)
            if c:
                clean[int(exp)] = c
        self._coeffs = clean
        self._hash = None

    # construction
    @classmethod
    def constant(cls, c: Rational) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def delta_power(cls, exp: int, coeff: Rational = 1) -> "LaurentScalar":
        return cls({exp: coeff})

    @classmethod
    def zero(cls) -> "LaurentScalar":
        return cls()

    @classmethod
    def one(cls) -> "LaurentScalar":
        return cls({0: 1})

    @classmethod
    def coerce(cls, value) -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            return value
        return cls.constant(to_fraction(value))

    # inspection
    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return sorted(self._coeffs.items())

    def coefficient(self, exp: int) -> Fraction:
        return self._coeffs.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def is_constant(self) -> bool:
        return not self._coeffs or set(self._coeffs) == {0}

    def min_exp(self) -> int:
        return min(self._coeffs) if self._coeffs else 0

    def max_exp(self) -> int:
        return max(self._coeffs) if self._coeffs else 0

    # arithmetic
    def __add__(self, other):
        if isinstance(other, RationalFunctionScalar):
            return NotImplemented
        other = LaurentScalar.coerce(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFunctionScalar):
            return NotImplemented
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalFunctionScalar):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return LaurentScalar({e: c * other for e, c in self._coeffs.items()})
        other = LaurentScalar.coerce(other)
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, str)):
            d = to_fraction(other)
            if d == 0:
                raise ZeroDivisionError("division of a Laurent scalar by zero")
            return LaurentScalar({e: c / d for e, c in self._coeffs.items()})
        other = other if isinstance(other, (LaurentScalar, RationalFunctionScalar)) else LaurentScalar.coerce(other)
        if isinstance(other, LaurentScalar) and other.is_monomial():
            (e, c), = other._coeffs.items()
            return LaurentScalar({x - e: v / c for x, v in self._coeffs.items()})
        return RationalFunctionScalar(self, LaurentScalar.one()) / other

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ArgumentError("Only monomials have Laurent inverses")
            (e, c), = self._coeffs.items()
            return LaurentScalar({e * n: c ** n})
        result = LaurentScalar.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentScalar":
        """Multiply by delta**k."""
        return LaurentScalar({e + k: c for e, c in self._coeffs.items()})

    # comparison
    def __eq__(self, other):
        if isinstance(other, RationalFunctionScalar):
            return NotImplemented
        try:
            other = LaurentScalar.coerce(other)
        except ArgumentError:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._coeffs.items())))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    # evaluation
    def evaluate(self, delta: Rational) -> Fraction:
        """Exact value at a nonzero rational delta."""
        d = to_fraction(delta)
        if d == 0 and self.min_exp() < 0:
            raise SingularityError("negative powers of delta at delta = 0")
        return sum((c * d ** e for e, c in self._coeffs.items()), Fraction(0))

    def evaluate_float(self, delta: float) -> float:
        return float(sum(float(c) * delta ** e for e, c in self._coeffs.items()))

    # serialization
    def to_dict(self) -> Dict[str, str]:
        return {str(e): str(c) for e, c in self.items()}

    @classmethod
    def from_dict(cls, data: Mapping[str, str]) -> "LaurentScalar":
        try:
            return cls({int(e): to_fraction(str(c)) for e, c in data.items()})
        except (ArgumentError, ValueError, AttributeError) as e:
            raise SerializationError(f"Malformed Laurent scalar: {data!r}") from e

    def __repr__(self):
        return f"LaurentScalar({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items(), reverse=True):
            if e == 0:
                parts.append(str(c))
            else:
                mono = "d" if e == 1 else f"d^{e}"
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")


DELTA = LaurentScalar.delta_power(1)
ONE = LaurentScalar.one()
ZERO = LaurentScalar.zero()


def _to_poly(x: LaurentScalar, shift: int) -> sympy.Poly:
    items = {e + shift: c for e, c in x.items()}
    top = max(items) if items else 0
    coeffs = [sympy.Rational(items.get(e, Fraction(0)).numerator, items.get(e, Fraction(0)).denominator)
              for e in range(top, -1, -1)]
    return sympy.Poly(coeffs or [0], _DELTA_SYMBOL, domain=sympy.QQ)


def _from_poly(p: sympy.Poly, shift: int = 0) -> LaurentScalar:
    coeffs = p.all_coeffs()
    top = len(coeffs) - 1
    out = {}
    for i, c in enumerate(coeffs):
        c = sympy.Rational(c)
        if c != 0:
            out[top - i + shift] = Fraction(int(c.p), int(c.q))
    return LaurentScalar(out)


class RationalFunctionScalar:
    """
    Quotient of Laurent polynomials in delta, kept in a canonical form:
    the denominator is a monic polynomial with nonzero constant term and is
    coprime to the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentScalar.coerce(num)
        den = LaurentScalar.one() if den is None else LaurentScalar.coerce(den)
        if den.is_zero():
            raise SingularityError("zero denominator")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def coerce(cls, value) -> "RationalFunctionScalar":
        if isinstance(value, RationalFunctionScalar):
            return value
        return cls(LaurentScalar.coerce(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentScalar:
        if not self.is_laurent():
            raise ArgumentError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        other = RationalFunctionScalar.coerce(other)
        return RationalFunctionScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionScalar(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunctionScalar.coerce(other))

    def __rsub__(self, other):
        return RationalFunctionScalar.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunctionScalar.coerce(other)
        return RationalFunctionScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunctionScalar.coerce(other)
        if other.is_zero():
            raise SingularityError("division by the zero rational function")
        return RationalFunctionScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunctionScalar.coerce(other) / self

    def __eq__(self, other):
        try:
            other = RationalFunctionScalar.coerce(other)
        except ArgumentError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def evaluate(self, delta: Rational) -> Fraction:
        """
        Exact value at a rational delta.

        Raises:
            SingularityError: if the denominator vanishes there
        """
        d = self.den.evaluate(delta)
        if d == 0:
            raise SingularityError(f"denominator {self.den} vanishes at delta={delta}")
        return self.num.evaluate(delta) / d

    def evaluate_float(self, delta: float) -> float:
        d = self.den.evaluate_float(delta)
        if d == 0:
            raise SingularityError(f"denominator {self.den} vanishes at delta={delta}")
        return self.num.evaluate_float(delta) / d

    def to_dict(self) -> Dict[str, Dict[str, str]]:
        return {"num": self.num.to_dict(), "den": self.den.to_dict()}

    def __repr__(self):
        return f"RationalFunctionScalar({self})"

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _reduce(num: LaurentScalar, den: LaurentScalar) -> Tuple[LaurentScalar, LaurentScalar]:
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        return num / den, ONE
    # Move delta powers of the denominator into the numerator
    low = den.min_exp()
    den = den.shift(-low)
    num = num.shift(-low)
    shift = -min(num.min_exp(), 0)
    p_num = _to_poly(num, shift)
    p_den = _to_poly(den, 0)
    g = p_num.gcd(p_den)
    if g.degree() > 0:
        p_num = p_num.exquo(g)
        p_den = p_den.exquo(g)
    lead = sympy.Rational(p_den.LC())
    p_num = p_num.mul_ground(1 / lead)
    p_den = p_den.mul_ground(1 / lead)
    return _from_poly(p_num, -shift), _from_poly(p_den, 0)


Scalar = Union[LaurentScalar, RationalFunctionScalar]


def is_zero(value) -> bool:
    """Zero test for any supported scalar."""
    if isinstance(value, (LaurentScalar, RationalFunctionScalar)):
        return value.is_zero()
    return value == 0


def specialize(value, delta: Rational) -> Fraction:
    """Evaluate a scalar of any supported type at a rational delta."""
    if isinstance(value, (LaurentScalar, RationalFunctionScalar)):
        return value.evaluate(delta)
    return to_fraction(value)


def scalar_to_json(value):
    """JSON form: Laurent scalars as exponent -> 'p/q', rational functions as num/den."""
    if isinstance(value, RationalFunctionScalar):
        return value.num.to_dict() if value.is_laurent() else value.to_dict()
    return LaurentScalar.coerce(value).to_dict()


def scalar_from_json(data) -> Scalar:
    if isinstance(data, Mapping) and "num" in data:
        return RationalFunctionScalar(LaurentScalar.from_dict(data["num"]), LaurentScalar.from_dict(data["den"]))
    if isinstance(data, Mapping):
        return LaurentScalar.from_dict(data)
    return LaurentScalar.coerce(str(data))
