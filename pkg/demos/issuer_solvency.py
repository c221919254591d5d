#!/usr/bin/env python3
"""Why a fixed redemption fee cannot back a perpetual token.

An issuer that charges a one-off fee per token but stores the
collateral for as long as the token circulates loses money on every
holder who waits long enough. The breakeven horizon is fee/rate days;
one patient customer past that line bankrupts the book.

Run:
    python demos/issuer_solvency.py
"""

from decimal import Decimal
from importlib import resources

from rsdm import solvency
from rsdm.solvency import FeeSchedule, IssuerBook, RedemptionRecord

print("=" * 64)
print("BREAKEVEN HORIZONS  (flat fee / per-day storage rate)")
print("=" * 64)
for fee, rate in [("0.3", "0.01"), ("0.03", "0.0001"), ("3", "0.001")]:
    days = solvency.breakeven_horizon(Decimal(fee), Decimal(rate))
    print(f"fee {fee:>5} at rate {rate:>7}/day -> bankrupt at {days} days held")

print()
print("=" * 64)
print("THE HISTORICAL 3% FLAT FEE, REPLAYED")
print("=" * 64)
# a flat 3% fee against one basis point of daily storage: 300 days of
# cover, however long the tokens actually circulate
text = resources.files("rsdm").joinpath("presets", "jiaozi_solvency.csv").read_text()
records = solvency.records_from_csv(text)
schedule = FeeSchedule.flat(Decimal("0.03"), Decimal("0.0001"))
timeline = solvency.simulate_issuer(records, schedule, 1500)

print(f"customers: {len(records)}, horizon: 1500 days")
print(f"first bankrupt day: {timeline.first_bankrupt_day}")
for day in (100, 301, 700, 1500):
    point = next(p for p in timeline.points if p.day == day)
    status = "BANKRUPT" if point.bankrupt else "solvent"
    print(f"day {day:>5}: income {point.cum_profit}  storage {point.cum_cost}  {status}")

print()
print("=" * 64)
print("FEES THAT DO PREFUND STORAGE")
print("=" * 64)
# charging (deadline - purchase) * rate up front covers storage exactly
# through the deadline
fee = solvency.deadline_fee(0, 300, Decimal("0.0001"))
cost = solvency.warehouse_cost([RedemptionRecord("k", 1, 0, 300)], Decimal("0.0001"), 300)
print(f"deadline fee for 300 days: {fee} == storage cost {cost}")
print(f"mean-holding fee at t=365d: {solvency.mean_holding_fee(Decimal('365'), Decimal('0.0001'))}")

print()
print("=" * 64)
print("INVESTING THE COLLATERAL DOESN'T SAVE THE MODEL")
print("=" * 64)
book = IssuerBook(
    own_reserves=Decimal("10"),
    customer_deposits=Decimal("1000"),
    period_income=Decimal("-5"),   # the risky investment went south
    period_expenses=Decimal("6"),
)
print(f"reserves 10, investment income -5, expenses 6:"
      f" insolvent = {solvency.case3_insolvent(book)}")
