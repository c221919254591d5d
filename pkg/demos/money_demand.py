#!/usr/bin/env python3
"""The supply/demand equilibrium with a decaying-token component.

Broad money = fiat multiplier x fiat reserve + token multiplier x token
reserve + other supply, balanced against Marshallian K x GDP. The
shipped scenario reproduces the headline reserve arithmetic and shows
that its three one-third shares of 40 trillion don't actually meet the
84 trillion demand line (a documented inconsistency, surfaced, not
patched).

Run:
    python demos/money_demand.py
"""

import json
from decimal import Decimal
from importlib import resources

from rsdm import demand

text = resources.files("rsdm").joinpath("presets", "global_demand.json").read_text()
scenario = demand.DemandScenario.from_json_dict(json.loads(text))

print("=" * 64)
print("THE SHIPPED GLOBAL SCENARIO")
print("=" * 64)
for name, value in scenario.to_json_dict().items():
    print(f"  {name:>16}: {value}")

supply = demand.money_supply(scenario)
demanded = demand.money_demand(scenario.marshallian_k, scenario.gdp)
residual = demand.equilibrium_residual(scenario)
print(f"\nsupply   = {supply}")
print(f"demand   = {demanded}   (0.7 x 120e12)")
print(f"residual = {residual}   (three 40e12 shares overshoot the demand line)")

print()
print("=" * 64)
print("RESERVE ARITHMETIC FOR A TARGET SHARE")
print("=" * 64)
share = Decimal("40e12")
multiplier = Decimal("8.0")
reserve = demand.collateral_requirement(share, multiplier)
print(f"a {share} broad-money share at multiplier {multiplier} needs a"
      f" base reserve of {reserve}")

print()
print("=" * 64)
print("WHAT WOULD ACTUALLY BALANCE THE BOOK")
print("=" * 64)
for unknown in ("sdm_reserve", "other_supply", "marshallian_k"):
    solution = demand.solve_unknown(scenario, unknown)
    flag = "  (negative: economically infeasible)" if solution.negative else ""
    print(f"  solve for {unknown:>14}: {solution.value}{flag}")

print()
print("=" * 64)
print("COLLATERAL-SIDE SANITY CHECKS")
print("=" * 64)
price = demand.implied_metal_price(reserve, Decimal("50000"))
print(f"{reserve} spread over 50,000 t of metal implies {price:.2f} per troy ounce")

gold = demand.household_storability(Decimal("100000"), Decimal("100000"), Decimal("2"))
steel = demand.household_storability(Decimal("100000"), Decimal("0.5"), Decimal("2"))
print(f"100k of gold at 100k/kg -> {gold.mass_kg} kg: {gold.classification.value}")
print(f"100k of steel at 0.5/kg -> {steel.mass_kg} kg: {steel.classification.value}")
