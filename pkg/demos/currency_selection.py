#!/usr/bin/env python3
"""Selecting the currencies of a parallel monetary system, exactly.

Candidates are scored in [0, 1] on twelve monetary functions. The
solver picks at most N currencies maximizing weighted coverage minus a
per-currency penalty, with the domestic fiat forced in and minimum
scores per function. The saturating objective caps each function at 1,
so redundant coverage stops paying.

Run:
    python demos/currency_selection.py
"""

import json
from importlib import resources

from rsdm import msp


def load(name: str) -> msp.MspInstance:
    text = resources.files("rsdm").joinpath("presets", name).read_text()
    return msp.instance_from_json_dict(json.loads(text))


def show(result) -> None:
    if isinstance(result, msp.Infeasible):
        print("  infeasible:", *result.reasons, sep="\n    ")
        return
    print(f"  selection: {', '.join(result.selection)}")
    print(f"  objective: {result.objective}")


print("=" * 64)
print("HIGH-INFLATION COUNTRY: FIVE CANDIDATES, AT MOST THREE")
print("=" * 64)
triple = load("triple_monetary.json")
print("pool:", ", ".join(c.id for c in triple.currencies))

print("\nlinear objective (branch-and-bound):")
linear = msp.solve_branch_and_bound(triple)
show(linear)

print("\nsame instance, exhaustive oracle agrees:")
show(msp.solve_exhaustive(triple))

print("\nsaturating objective: the reserve currency becomes redundant")
saturating = msp.solve_saturating(triple)
show(saturating)

print()
print("=" * 64)
print("EUROZONE: ONE FIAT PLUS ONE GOLD TOKEN COVER EVERYTHING")
print("=" * 64)
eurozone = load("eurozone.json")
report = msp.coverage_report(eurozone, {"EUR", "XAU_RSDM"})
for row in report.rows:
    mark = "ok " if row.covered else "GAP"
    print(f"  [{mark}] {row.function_id:<28} achieved {row.achieved}"
          f" (threshold {row.threshold})")
print(f"all functions covered: {report.all_covered}")

print("\nthe euro alone fails the hard-money functions:")
verdict = msp.check_feasible(eurozone, {"EUR"})
for violation in verdict.violations:
    print(f"  violated - {violation}")

print()
print("=" * 64)
print("INDIA: MONETIZING DORMANT GOLD")
print("=" * 64)
india = load("india.json")
result = msp.solve_branch_and_bound(india)
show(result)
print("  (the gold token supplies the store-of-value and overissue "
      "resistance the rupee lacks)")
