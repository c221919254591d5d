#!/usr/bin/env python3
"""Issue, trade, and redeem tokens on the event-sourced ledger.

Every state is a pure fold of the append-only log. Collateral is
conserved to the digit: vault grams plus cumulative payouts always
equal issued weight, and the decayed claims outstanding never exceed
the physical vault.

Run:
    python demos/ledger_lifecycle.py
"""

from datetime import date
from decimal import Decimal

from rsdm import decay, ledger
from rsdm.ledger import PriceQuote

spec = decay.RsdmSpec(
    issue_date=date(1970, 1, 1),
    collateral_id="XAU",
    initial_weight=Decimal("1"),
    daily_decay_factor=Decimal("0.99996"),
    expiry_days=18262,
    redemption_fee_rate=Decimal("0.003"),
    min_redemption_grams=Decimal("500"),
)

events = []
state = ledger.empty_state()

print("=" * 64)
print("LIFECYCLE")
print("=" * 64)

state, e = ledger.issue(state, "AU35", spec, "alice", 5000, 0)
events.append(e)
print(f"day 0: issued 5000 tokens to alice; vault {state.vault['AU35']} g")

state, e = ledger.transfer(state, "alice", "bob", "AU35", 2000, 3)
events.append(e)
print(f"day 3: alice -> bob 2000 tokens "
      f"(alice {state.balance('alice', 'AU35')}, bob {state.balance('bob', 'AU35')})")

state, payout, e = ledger.redeem(state, "alice", "AU35", 1000, 10)
events.append(e)
print(f"day 10: alice redeems 1000 tokens for {payout.value} g")
print(f"        vault {state.vault['AU35']} g,"
      f" issuer accrual {state.issuer_accrual['AU35']} g")

conserved = state.vault["AU35"] + state.cumulative_payouts["AU35"]
print(f"\nconservation: vault + payouts = {conserved} g = issued 5000 g")
assert conserved == 5000

print()
print("=" * 64)
print("REJECTIONS LEAVE THE STATE UNTOUCHED")
print("=" * 64)
for description, action in [
    ("transfer more than the balance",
     lambda: ledger.transfer(state, "bob", "carol", "AU35", 9999, 11)),
    ("redeem below the 500 g series minimum",
     lambda: ledger.redeem(state, "bob", "AU35", 100, 11)),
]:
    try:
        action()
    except ledger.LedgerError as exc:
        print(f"  {description}: rejected ({exc})")
assert state.last_sequence == 3

print()
print("=" * 64)
print("REPLAY AND VALUATION")
print("=" * 64)
text = ledger.events_to_jsonl(events)
replayed = ledger.replay(ledger.events_from_jsonl(text))
identical = ledger.state_to_snapshot(replayed) == ledger.state_to_snapshot(state)
print(f"replaying the {len(events)}-event log reproduces the snapshot"
      f" byte-for-byte: {identical}")

quotes = [PriceQuote(0, "XAU", Decimal("95")), PriceQuote(9, "XAU", Decimal("102"))]
report = ledger.holdings_valuation(replayed, quotes, "bob", 10)
row = report.holdings[0]
print(f"bob on day 10: {row.token_count} tokens,"
      f" residual {row.residual_grams} g at {row.price_per_gram}/g"
      f" = {row.residual_value}")
