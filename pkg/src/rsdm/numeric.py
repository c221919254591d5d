"""Exact decimal arithmetic and dimensioned quantities.

Conventions used across the package:

* All weights, prices and rates are ``decimal.Decimal``; floats are
  rejected at the boundary so binary rounding can never leak in.
* General-purpose arithmetic runs in a 34-significant-digit context
  with banker's rounding (ROUND_HALF_EVEN).
* Face-value decay uses *exact* arithmetic: multiplication and integer
  powers are carried out on scaled integer mantissas, so no rounding
  happens until a settlement boundary.
* Settlement boundaries (payouts, ledger entries) round to 9 decimal
  places of grams, half-even.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal, localcontext

from rsdm.errors import DomainError

DEFAULT_PRECISION = 34
SETTLEMENT_DECIMALS = 9

#: Context for ordinary (non-exact) arithmetic: division, rate conversion.
CONTEXT = decimal.Context(prec=DEFAULT_PRECISION, rounding=decimal.ROUND_HALF_EVEN)

_SETTLEMENT_QUANTUM = Decimal(1).scaleb(-SETTLEMENT_DECIMALS)


def set_precision(digits: int) -> None:
    """Adjust the working precision of the shared context (CLI hook)."""
    if digits < 1:
        raise DomainError(f"precision must be at least 1 significant digit, got {digits}")
    CONTEXT.prec = digits


def as_decimal(value: str | int | Decimal) -> Decimal:
    """Parse *value* into a finite Decimal without touching binary floats.

    Accepts str, int, and Decimal. Floats raise DomainError: they carry
    binary rounding error invisible to the caller.
    """
    if isinstance(value, Decimal):
        result = value
    elif isinstance(value, bool):
        raise DomainError(f"cannot interpret {value!r} as a decimal")
    elif isinstance(value, int):
        result = Decimal(value)
    elif isinstance(value, float):
        raise DomainError(
            f"refusing float {value!r}: pass a string to preserve decimal precision"
        )
    elif isinstance(value, str):
        try:
            result = Decimal(value)
        except decimal.InvalidOperation as exc:
            raise DomainError(f"not a decimal number: {value!r}") from exc
    else:
        raise DomainError(f"cannot interpret {value!r} as a decimal")
    if not result.is_finite():
        raise DomainError(f"decimal value must be finite, got {result}")
    return result


def _scaled(value: Decimal) -> tuple[int, int]:
    """Return (mantissa, exponent) with value == mantissa * 10**exponent.

    Avoids int<->str conversion so arbitrarily long exact values stay
    cheap (CPython caps integer-string conversion length).
    """
    exponent = value.as_tuple().exponent
    if exponent == 0:
        return int(value), 0
    with localcontext(CONTEXT) as ctx:
        ctx.prec = max(DEFAULT_PRECISION, len(value.as_tuple().digits) + 2)
        return int(value.scaleb(-exponent)), exponent


def _from_scaled(mantissa: int, exponent: int) -> Decimal:
    d = Decimal(mantissa)
    if exponent == 0:
        return d
    with localcontext(CONTEXT) as ctx:
        ctx.prec = max(DEFAULT_PRECISION, d.adjusted() + 2)
        return d.scaleb(exponent)


def exact_mul(a: Decimal, b: Decimal) -> Decimal:
    """Multiply two finite decimals exactly (no context rounding)."""
    if a == 1:  # identity fast paths skip the scaled-integer round-trip
        return b
    if b == 1:
        return a
    ma, ea = _scaled(a)
    mb, eb = _scaled(b)
    return _from_scaled(ma * mb, ea + eb)


def exact_add(a: Decimal, b: Decimal) -> Decimal:
    """Add two finite decimals exactly (no context rounding)."""
    ma, ea = _scaled(a)
    mb, eb = _scaled(b)
    if ea > eb:
        ma *= 10 ** (ea - eb)
        ea = eb
    elif eb > ea:
        mb *= 10 ** (eb - ea)
    return _from_scaled(ma + mb, ea)


def exact_sub(a: Decimal, b: Decimal) -> Decimal:
    """Subtract b from a exactly (no context rounding)."""
    return exact_add(a, -b)


def exact_pow(base: Decimal, exponent: int) -> Decimal:
    """Raise a finite decimal to a nonnegative integer power, exactly.

    Exponentiation by squaring on the scaled integer mantissa: the
    result is the mathematically exact value, however many digits it
    takes. A decay factor with a short mantissa stays cheap even for
    multi-decade day counts.
    """
    if exponent < 0:
        raise DomainError("exact_pow requires a nonnegative integer exponent")
    if exponent == 0:
        return Decimal(1)
    mantissa, exp10 = _scaled(base)
    result = 1
    m = mantissa
    n = exponent
    while True:
        if n & 1:
            result *= m
        n >>= 1
        if not n:
            break
        m *= m
    return _from_scaled(result, exp10 * exponent)


def settle(value: Decimal) -> Decimal:
    """Round to the 9-decimal settlement grid, half-even.

    Applied only at settlement boundaries (payouts, ledger entries);
    everything upstream stays unrounded.
    """
    with localcontext(CONTEXT) as ctx:
        ctx.prec = max(DEFAULT_PRECISION, len(value.as_tuple().digits) + 2)
        return value.quantize(_SETTLEMENT_QUANTUM, rounding=decimal.ROUND_HALF_EVEN)


def nth_root(value: Decimal, n: int, tolerance: Decimal = Decimal("1E-30")) -> Decimal:
    """Positive n-th root of a positive decimal by Newton's method.

    Algorithm
    ---------
    1. Seed with exp(ln(value)/n) evaluated in the working context.
    2. Newton steps on f(y) = y**n - value:
           y' = y - (y**n - value) / (n * y**(n-1))
       iterated until |y' - y| <= tolerance * y'.

    The default tolerance is 1e-30 relative, comfortably below the
    34-digit working precision.
    """
    if n <= 0:
        raise DomainError("root order must be a positive integer")
    if value <= 0:
        raise DomainError(f"n-th root requires a positive value, got {value}")
    if value == 1:
        return Decimal(1)
    with localcontext(CONTEXT) as ctx:
        ctx.prec = DEFAULT_PRECISION + 10
        y = (value.ln() / n).exp()
        n_dec = Decimal(n)
        for _ in range(64):
            prev = y
            y = y - (y**n - value) / (n_dec * y ** (n - 1))
            if abs(y - prev) <= tolerance * abs(y):
                break
    with localcontext(CONTEXT):
        return +y  # round back into the working precision


# ---------------------------------------------------------------------------
# Dimensioned quantities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    """A unit as integer powers of gram and of the accounting unit."""

    gram: int = 0
    account: int = 0

    def __mul__(self, other: "Unit") -> "Unit":
        return Unit(self.gram + other.gram, self.account + other.account)

    def __str__(self) -> str:
        if self == GRAM:
            return "gram"
        if self == ACCOUNTING_UNIT:
            return "accounting-unit"
        if self == DIMENSIONLESS:
            return "dimensionless"
        if self == PER_GRAM:
            return "accounting-unit/gram"
        return f"gram^{self.gram}*accounting-unit^{self.account}"


GRAM = Unit(gram=1)
ACCOUNTING_UNIT = Unit(account=1)
DIMENSIONLESS = Unit()
PER_GRAM = Unit(gram=-1, account=1)


@dataclass(frozen=True)
class Quantity:
    """A finite decimal value tagged with a unit.

    Arithmetic is exact (scaled-integer, no context rounding) and
    dimensionally checked: gram * dimensionless -> gram, while adding
    grams to accounting units raises DomainError.
    """

    value: Decimal
    unit: Unit

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", as_decimal(self.value))

    def __mul__(self, other: "Quantity | Decimal | int | str") -> "Quantity":
        if isinstance(other, Quantity):
            return Quantity(exact_mul(self.value, other.value), self.unit * other.unit)
        return Quantity(exact_mul(self.value, as_decimal(other)), self.unit)

    __rmul__ = __mul__

    def _require_same_unit(self, other: "Quantity", op: str) -> None:
        if not isinstance(other, Quantity):
            raise DomainError(f"cannot {op} {type(other).__name__} and Quantity")
        if self.unit != other.unit:
            raise DomainError(f"cannot {op} {self.unit} and {other.unit}")

    def __add__(self, other: "Quantity") -> "Quantity":
        self._require_same_unit(other, "add")
        return Quantity(exact_add(self.value, other.value), self.unit)

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._require_same_unit(other, "subtract")
        return Quantity(exact_sub(self.value, other.value), self.unit)

    def __lt__(self, other: "Quantity") -> bool:
        self._require_same_unit(other, "compare")
        return self.value < other.value

    def __le__(self, other: "Quantity") -> bool:
        self._require_same_unit(other, "compare")
        return self.value <= other.value

    def settled(self) -> Decimal:
        """The value on the 9-decimal settlement grid."""
        return settle(self.value)

    def __str__(self) -> str:
        return f"{self.value} {self.unit}"


def grams(value: str | int | Decimal) -> Quantity:
    return Quantity(as_decimal(value), GRAM)


def accounting(value: str | int | Decimal) -> Quantity:
    return Quantity(as_decimal(value), ACCOUNTING_UNIT)


def price_per_gram(value: str | int | Decimal) -> Quantity:
    return Quantity(as_decimal(value), PER_GRAM)
