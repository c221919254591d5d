"""Issuer economics for tokens redeemable at a fixed face value.

A token issuer that charges a one-off fee per token but pays storage on
the vaulted collateral for as long as the token circulates will always
meet a holding duration at which cumulative storage cost overtakes fee
income. This module provides the fee/cost arithmetic, the bankruptcy
condition, the breakeven horizon, the deadline- and mean-holding-based
fee regimes, and a day-by-day solvency replay.

All money amounts are decimals in one stable accounting unit; the
storage rate is per token per day (tokens of other collateral weights
scale the rate linearly).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from rsdm.errors import DomainError, NeverBankrupt
from rsdm.numeric import CONTEXT, as_decimal


@dataclass(frozen=True)
class RedemptionRecord:
    """One customer's token purchase and (optional) redemption timing."""

    customer_id: str
    token_count: int
    purchase_day: int
    redemption_day: int | None = None

    def __post_init__(self) -> None:
        if self.token_count <= 0:
            raise DomainError(f"token count must be positive, got {self.token_count}")
        if self.redemption_day is not None and self.redemption_day < self.purchase_day:
            raise DomainError(
                f"redemption day {self.redemption_day} precedes purchase day "
                f"{self.purchase_day}"
            )

    @property
    def closed(self) -> bool:
        return self.redemption_day is not None


class FeeKind(Enum):
    FLAT = "flat"
    DEADLINE_BASED = "deadline"
    MEAN_HOLDING_BASED = "mean-holding"


@dataclass(frozen=True)
class FeeSchedule:
    """The issuer's fee regime plus the storage rate it must outrun.

    Exactly the fields of the active kind are meaningful; use the
    ``flat`` / ``deadline_based`` / ``mean_holding_based`` constructors.
    """

    kind: FeeKind
    warehouse_rate: Decimal
    flat_fee_per_token: Decimal | None = None
    deadline_day: int | None = None
    mean_holding_days: Decimal | None = None

    @classmethod
    def flat(cls, fee_per_token: Decimal | str | int, rate: Decimal | str | int) -> "FeeSchedule":
        fee = as_decimal(fee_per_token)
        if fee < 0:
            raise DomainError("flat fee must be nonnegative")
        return cls(FeeKind.FLAT, _nonneg_rate(rate), flat_fee_per_token=fee)

    @classmethod
    def deadline_based(cls, deadline_day: int, rate: Decimal | str | int) -> "FeeSchedule":
        return cls(FeeKind.DEADLINE_BASED, _nonneg_rate(rate), deadline_day=deadline_day)

    @classmethod
    def mean_holding_based(
        cls, mean_days: Decimal | str | int, rate: Decimal | str | int
    ) -> "FeeSchedule":
        mean = as_decimal(mean_days)
        if mean < 0:
            raise DomainError("mean holding duration must be nonnegative")
        return cls(FeeKind.MEAN_HOLDING_BASED, _nonneg_rate(rate), mean_holding_days=mean)

    def fee_for(self, record: RedemptionRecord) -> Decimal:
        """Per-token fee charged to this customer under the active kind."""
        if self.kind is FeeKind.FLAT:
            return self.flat_fee_per_token
        if self.kind is FeeKind.DEADLINE_BASED:
            return deadline_fee(record.purchase_day, self.deadline_day, self.warehouse_rate)
        return mean_holding_fee(self.mean_holding_days, self.warehouse_rate)


def _nonneg_rate(rate: Decimal | str | int) -> Decimal:
    value = as_decimal(rate)
    if value < 0:
        raise DomainError("warehouse rate must be nonnegative")
    return value


@dataclass(frozen=True)
class IssuerBook:
    """Balance-sheet snapshot for the risky-investment insolvency test."""

    own_reserves: Decimal
    customer_deposits: Decimal
    period_income: Decimal
    period_expenses: Decimal

    def __post_init__(self) -> None:
        for name in ("own_reserves", "customer_deposits", "period_income", "period_expenses"):
            object.__setattr__(self, name, as_decimal(getattr(self, name)))
        if self.own_reserves < 0:
            raise DomainError("own reserves must be nonnegative")
        if self.customer_deposits < 0:
            raise DomainError("customer deposits must be nonnegative")


# ---------------------------------------------------------------------------
# Core fee/cost arithmetic
# ---------------------------------------------------------------------------


def gross_profit(records: Iterable[RedemptionRecord], flat_fee: Decimal | str | int) -> Decimal:
    """Total fee income: flat fee times token count, summed over customers."""
    fee = as_decimal(flat_fee)
    if fee < 0:
        raise DomainError("flat fee must be nonnegative")
    with localcontext(CONTEXT):
        return sum((fee * r.token_count for r in records), Decimal(0))


def warehouse_cost(
    records: Iterable[RedemptionRecord], rate: Decimal | str | int, as_of_day: int
) -> Decimal:
    """Cumulative storage cost: rate * tokens * days held, summed.

    Closed records cost through their redemption day; open records cost
    through ``as_of_day``.
    """
    alpha = _nonneg_rate(rate)
    records = list(records)
    for r in records:
        if as_of_day < r.purchase_day:
            raise DomainError(
                f"as-of day {as_of_day} precedes purchase day {r.purchase_day} "
                f"of customer {r.customer_id!r}"
            )
    with localcontext(CONTEXT):
        total = Decimal(0)
        for r in records:
            end = r.redemption_day if r.closed else as_of_day
            total += alpha * r.token_count * (end - r.purchase_day)
        return total


def is_bankrupt(profit: Decimal | str | int, cost: Decimal | str | int) -> bool:
    """Bankruptcy condition: fee income strictly below storage cost.

    The boundary (profit == cost) is solvent.
    """
    return as_decimal(profit) < as_decimal(cost)


def breakeven_horizon(flat_fee: Decimal | str | int, rate: Decimal | str | int) -> int:
    """First holding duration (days) at which a flat fee stops covering
    storage: the smallest integer strictly greater than fee/rate.

    Exact rational comparison; no floating point.
    """
    fee = as_decimal(flat_fee)
    alpha = as_decimal(rate)
    if fee < 0:
        raise DomainError("flat fee must be nonnegative")
    if alpha < 0:
        raise DomainError("warehouse rate must be nonnegative")
    if alpha == 0:
        raise NeverBankrupt("zero storage rate: no holding duration triggers bankruptcy")
    ratio = Fraction(fee) / Fraction(alpha)
    return int(ratio) + 1  # floor + 1 == smallest integer strictly above (ratio >= 0)


def deadline_fee(
    purchase_day: int, deadline_day: int, rate: Decimal | str | int
) -> Decimal:
    """Up-front fee prefunding storage from purchase to the token deadline."""
    alpha = _nonneg_rate(rate)
    if deadline_day < purchase_day:
        raise DomainError(
            f"deadline day {deadline_day} precedes purchase day {purchase_day}"
        )
    with localcontext(CONTEXT):
        return alpha * (deadline_day - purchase_day)


def mean_holding_fee(mean_days: Decimal | str | int, rate: Decimal | str | int) -> Decimal:
    """Up-front fee prefunding storage for the predicted mean holding time."""
    mean = as_decimal(mean_days)
    if mean < 0:
        raise DomainError("mean holding duration must be nonnegative")
    alpha = _nonneg_rate(rate)
    with localcontext(CONTEXT):
        return mean * alpha


def case3_insolvent(book: IssuerBook) -> bool:
    """Insolvency after investing customer collateral: own reserves plus
    (possibly negative) investment income strictly below period expenses."""
    with localcontext(CONTEXT):
        return book.own_reserves + book.period_income < book.period_expenses


# ---------------------------------------------------------------------------
# Day-by-day solvency replay
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TimelinePoint:
    day: int
    cum_profit: Decimal
    cum_cost: Decimal
    bankrupt: bool


@dataclass(frozen=True)
class SolvencyTimeline:
    points: tuple[TimelinePoint, ...]
    first_bankrupt_day: int | None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["day", "cum_profit", "cum_cost", "bankrupt"])
        for p in self.points:
            writer.writerow([p.day, str(p.cum_profit), str(p.cum_cost), str(p.bankrupt).lower()])
        return buf.getvalue()


def simulate_issuer(
    records: Sequence[RedemptionRecord], schedule: FeeSchedule, horizon_day: int
) -> SolvencyTimeline:
    """Replay fee income and storage cost day by day up to the horizon.

    Fee income is recognized on the purchase day (the flat, deadline,
    and mean-holding fees are all charged up front); storage accrues per
    token per day from purchase until redemption or, for open positions,
    through the evaluation day. The first day on which income strictly
    fails to cover cost is reported.
    """
    if not records:
        return SolvencyTimeline(points=(), first_bankrupt_day=None)
    start = min(r.purchase_day for r in records)
    if horizon_day < max(r.purchase_day for r in records):
        raise DomainError("horizon must reach the last purchase day")

    points = []
    first_bankrupt = None
    with localcontext(CONTEXT):
        for day in range(start, horizon_day + 1):
            profit = Decimal(0)
            cost = Decimal(0)
            for r in records:
                if r.purchase_day > day:
                    continue
                profit += schedule.fee_for(r) * r.token_count
                end = min(r.redemption_day, day) if r.closed else day
                cost += schedule.warehouse_rate * r.token_count * (end - r.purchase_day)
            bankrupt = profit < cost
            if bankrupt and first_bankrupt is None:
                first_bankrupt = day
            points.append(TimelinePoint(day, profit, cost, bankrupt))
    return SolvencyTimeline(points=tuple(points), first_bankrupt_day=first_bankrupt)


# ---------------------------------------------------------------------------
# CSV interchange
# ---------------------------------------------------------------------------

_RECORD_FIELDS = ["customer_id", "token_count", "purchase_day", "redemption_day"]


def records_from_csv(text: str) -> list[RedemptionRecord]:
    """Parse records from CSV with header
    ``customer_id,token_count,purchase_day,redemption_day``; an empty
    redemption_day marks an open position."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != _RECORD_FIELDS:
        raise DomainError(
            f"records CSV must have header {','.join(_RECORD_FIELDS)!r}, "
            f"got {reader.fieldnames}"
        )
    records = []
    for i, row in enumerate(reader, start=2):
        try:
            redemption = row["redemption_day"].strip()
            records.append(
                RedemptionRecord(
                    customer_id=row["customer_id"].strip(),
                    token_count=int(row["token_count"]),
                    purchase_day=int(row["purchase_day"]),
                    redemption_day=int(redemption) if redemption else None,
                )
            )
        except (ValueError, AttributeError) as exc:
            raise DomainError(f"records CSV line {i}: {exc}") from exc
    return records


def load_records_csv(path) -> list[RedemptionRecord]:
    with open(path, encoding="utf-8") as fh:
        return records_from_csv(fh.read())
