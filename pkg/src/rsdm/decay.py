"""Face-value decay, purchase pricing, and collateral redemption for one
RSDM series.

A series is defined by its issuance parameters (RsdmSpec). The face
value of each token is a claim on ``initial_weight`` grams of collateral
that shrinks by a fixed factor per elapsed day; the redemption payout
further deducts a proportional delivery fee. All of this is exact
integer-exponent decimal arithmetic: nothing is rounded until a
settlement boundary.

Time is modeled as whole UTC days; intraday timing is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from decimal import Decimal, localcontext

from rsdm.errors import DomainError, ExpiredSeries
from rsdm.numeric import (
    CONTEXT,
    GRAM,
    PER_GRAM,
    Quantity,
    as_decimal,
    exact_add,
    exact_mul,
    exact_pow,
    exact_sub,
    grams,
    nth_root,
)

_EPOCH = date(1970, 1, 1)

DAYS_PER_YEAR = 365

#: Default minimum redeemable collateral: one kilogram.
DEFAULT_MIN_REDEMPTION_GRAMS = Decimal(1000)


def epoch_day(d: date) -> int:
    """Whole UTC days since 1970-01-01."""
    return (d - _EPOCH).days


def date_from_epoch_day(day: int) -> date:
    return date.fromordinal(_EPOCH.toordinal() + day)


@dataclass(frozen=True)
class RsdmSpec:
    """Immutable issuance parameters of one RSDM series.

    ``daily_decay_factor`` is the per-day multiplier on the face value
    (1 minus the daily demurrage rate); ``redemption_fee_rate`` is the
    fraction of residual collateral the issuer keeps at redemption.
    """

    issue_date: date
    collateral_id: str
    initial_weight: Decimal
    daily_decay_factor: Decimal
    expiry_days: int
    redemption_fee_rate: Decimal
    issue_size: int = 0
    inspection_fee: Decimal = Decimal(0)
    min_redemption_grams: Decimal = DEFAULT_MIN_REDEMPTION_GRAMS

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial_weight", as_decimal(self.initial_weight))
        object.__setattr__(self, "daily_decay_factor", as_decimal(self.daily_decay_factor))
        object.__setattr__(self, "redemption_fee_rate", as_decimal(self.redemption_fee_rate))
        object.__setattr__(self, "inspection_fee", as_decimal(self.inspection_fee))
        object.__setattr__(self, "min_redemption_grams", as_decimal(self.min_redemption_grams))

    def to_json_dict(self) -> dict:
        """JSON form; decimal fields as strings to preserve precision."""
        return {
            "issue_date": self.issue_date.isoformat(),
            "collateral_id": self.collateral_id,
            "initial_weight_g": str(self.initial_weight),
            "daily_decay_factor": str(self.daily_decay_factor),
            "expiry_days": self.expiry_days,
            "redemption_fee_rate": str(self.redemption_fee_rate),
            "issue_size": self.issue_size,
            "inspection_fee": str(self.inspection_fee),
            "min_redemption_g": str(self.min_redemption_grams),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RsdmSpec":
        try:
            return cls(
                issue_date=date.fromisoformat(data["issue_date"]),
                collateral_id=str(data["collateral_id"]),
                initial_weight=as_decimal(data["initial_weight_g"]),
                daily_decay_factor=as_decimal(data["daily_decay_factor"]),
                expiry_days=int(data["expiry_days"]),
                redemption_fee_rate=as_decimal(data["redemption_fee_rate"]),
                issue_size=int(data.get("issue_size", 0)),
                inspection_fee=as_decimal(data.get("inspection_fee", "0")),
                min_redemption_grams=as_decimal(
                    data.get("min_redemption_g", str(DEFAULT_MIN_REDEMPTION_GRAMS))
                ),
            )
        except KeyError as exc:
            raise DomainError(f"series spec is missing field {exc.args[0]!r}") from exc


def validate_spec(spec: RsdmSpec) -> list[str]:
    """Report every violated issuance invariant (empty list = valid)."""
    violations = []
    if not spec.initial_weight > 0:
        violations.append("initial weight must be > 0")
    if not (0 < spec.daily_decay_factor <= 1):
        violations.append("decay factor must be in (0, 1]")
    if not (0 <= spec.redemption_fee_rate < 1):
        violations.append("fee rate must be in [0, 1)")
    if spec.expiry_days <= 0:
        violations.append("expiry must be a positive number of days")
    if spec.issue_size < 0:
        violations.append("issue size must be nonnegative")
    if not spec.min_redemption_grams > 0:
        violations.append("minimum redemption must be > 0 grams")
    return violations


def _check_elapsed(spec: RsdmSpec, elapsed_days: int) -> None:
    if elapsed_days < 0:
        raise DomainError(f"elapsed days must be nonnegative, got {elapsed_days}")
    if elapsed_days > spec.expiry_days:
        raise ExpiredSeries(
            f"elapsed {elapsed_days} days exceeds expiry at {spec.expiry_days} days"
        )


def residual_weight(spec: RsdmSpec, elapsed_days: int) -> Quantity:
    """Residual collateral weight of one token after ``elapsed_days``.

    Exact value of initial_weight * decay_factor**elapsed_days, computed
    by exponentiation-by-squaring on scaled integers. Unrounded: the
    caller decides if and when to settle.
    """
    _check_elapsed(spec, elapsed_days)
    factor = exact_pow(spec.daily_decay_factor, elapsed_days)
    return grams(exact_mul(spec.initial_weight, factor))


def purchase_price(
    spec: RsdmSpec, elapsed_days: int, unit_price: Quantity | Decimal | str | int
) -> Quantity:
    """Price of one token bought from the issuer ``elapsed_days`` after issue.

    ``unit_price`` is the collateral's market price in accounting units
    per gram; the token costs unit_price times its residual weight.
    """
    if not isinstance(unit_price, Quantity):
        unit_price = Quantity(as_decimal(unit_price), PER_GRAM)
    elif unit_price.unit != PER_GRAM:
        raise DomainError(f"unit price must be accounting-unit/gram, got {unit_price.unit}")
    if unit_price.value < 0:
        raise DomainError("unit price must be nonnegative")
    return unit_price * residual_weight(spec, elapsed_days)


@dataclass(frozen=True)
class RedemptionQuote:
    """Split of one token's residual weight at redemption.

    payout + fee == residual exactly: the issuer's fee take is the
    residual times the fee rate, and the customer receives the rest.
    """

    payout: Quantity
    fee: Quantity
    residual: Quantity


def redemption_quote(spec: RsdmSpec, elapsed_days: int) -> RedemptionQuote:
    """Customer payout and issuer fee for redeeming one token."""
    residual = residual_weight(spec, elapsed_days)
    fee = Quantity(exact_mul(spec.redemption_fee_rate, residual.value), GRAM)
    payout = Quantity(
        exact_mul(exact_sub(Decimal(1), spec.redemption_fee_rate), residual.value), GRAM
    )
    return RedemptionQuote(payout=payout, fee=fee, residual=residual)


def redeemable_quantity(spec: RsdmSpec, elapsed_days: int) -> Quantity:
    """Collateral grams delivered to the customer per token redeemed:
    (1 - fee rate) * decay_factor**elapsed_days * initial_weight."""
    return redemption_quote(spec, elapsed_days).payout


def daily_factor_from_annual_rate(annual_rate: Decimal | str | int) -> Decimal:
    """Daily decay factor equivalent to a given annual rate.

    Returns (1 + annual_rate)**(1/365) via Newton root-finding at
    relative tolerance 1e-30 (see numeric.nth_root). An annualized -2%
    demurrage, for example, maps to a daily factor just under 1.
    """
    rate = as_decimal(annual_rate)
    if rate <= -1:
        raise DomainError(f"annual rate must exceed -1 (total loss), got {rate}")
    return nth_root(exact_add(Decimal(1), rate), DAYS_PER_YEAR)


def annual_rate_from_daily_factor(daily_factor: Decimal | str | int) -> Decimal:
    """Annual rate implied by a daily factor: factor**365 - 1."""
    factor = as_decimal(daily_factor)
    if factor <= 0:
        raise DomainError(f"daily factor must be positive, got {factor}")
    compounded = exact_pow(factor, DAYS_PER_YEAR)
    with localcontext(CONTEXT):
        return +compounded - 1


def net_yield(
    annual_decay_rate: Decimal | str | int, annual_interest_rate: Decimal | str | int
) -> Decimal:
    """Depositor's net annual benefit: decay rate plus interest rate.

    Simple-additive convention: a -2% decay plus 3% bank interest paid
    in collateral nets +1% to the depositor.
    """
    decay = as_decimal(annual_decay_rate)
    interest = as_decimal(annual_interest_rate)
    if decay <= -1 or interest <= -1:
        raise DomainError("rates must exceed -1 (total loss)")
    return exact_add(decay, interest)
