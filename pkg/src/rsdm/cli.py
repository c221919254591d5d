"""Command-line entry point.

Subcommand map::

    decay residual | redeem-quote | convert-rate
    solvency breakeven | simulate
    msp solve | check | report        (--objective, --method)
    demand supply | solve --unknown <field>
    ledger init | append | replay | value

Exit status: 0 success, 1 domain/validation error, 2 usage error.
Decimal flags are parsed as exact decimal strings, never through binary
floating point; numeric output is rendered as decimal strings at the
settlement precision (9 decimal places by default).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from datetime import date
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from importlib import resources
from pathlib import Path

from rsdm import decay, demand, ledger, msp, numeric, solvency
from rsdm.errors import DomainError, NeverBankrupt, RsdmError, SchemaError


def default_data_dir() -> Path:
    return Path(str(resources.files("rsdm").joinpath("presets")))


@dataclass
class CliConfig:
    precision_digits: int = numeric.DEFAULT_PRECISION
    settlement_decimals: int = numeric.SETTLEMENT_DECIMALS
    data_dir: Path = field(default_factory=default_data_dir)
    output_format: str = "table"

    def validate(self) -> None:
        if self.precision_digits < self.settlement_decimals + 6:
            raise DomainError(
                "precision_digits must be at least settlement_decimals + 6 "
                f"({self.precision_digits} < {self.settlement_decimals + 6})"
            )
        if self.output_format not in ("table", "json", "csv"):
            raise DomainError(f"unknown output format {self.output_format!r}")


def load_config(path: str | None) -> CliConfig:
    config = CliConfig()
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise DomainError(f"cannot read config {path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise DomainError(f"config {path!r} is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise DomainError("config must be a JSON object")
        if "precision_digits" in doc:
            config.precision_digits = int(doc["precision_digits"])
        if "settlement_decimals" in doc:
            config.settlement_decimals = int(doc["settlement_decimals"])
        if "data_dir" in doc:
            config.data_dir = Path(doc["data_dir"])
        if "output_format" in doc:
            config.output_format = str(doc["output_format"])
    env_dir = os.environ.get("RSDM_DATA_DIR")
    if env_dir:
        config.data_dir = Path(env_dir)
    config.validate()
    return config


def resolve_path(name: str, config: CliConfig) -> Path:
    """A file argument resolves against the working directory first,
    then the data directory (which ships the presets)."""
    p = Path(name)
    if p.exists():
        return p
    candidate = config.data_dir / name
    if candidate.exists():
        return candidate
    raise DomainError(f"no such file: {name!r} (also tried {candidate})")


def load_instance(path: Path, expected_kind: str):
    """Load and validate a typed instance document.

    Parse failures, schema violations (with JSON-pointer paths), and
    validation failures are reported distinctly.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"parse error in {path}: {exc}") from exc
    if expected_kind == "msp":
        instance = msp.instance_from_json_dict(doc)  # SchemaError on shape problems
        report = msp.validate_instance(instance)
        warnings = [m for m in report if m.startswith("warning:")]
        violations = [m for m in report if not m.startswith("warning:")]
        if violations:
            raise SchemaError([f"validation: {m}" for m in violations])
        for w in warnings:
            print(f"{path}: {w}", file=sys.stderr)
        return instance
    if expected_kind == "demand":
        return demand.DemandScenario.from_json_dict(doc)
    if expected_kind == "rsdm_spec":
        spec = decay.RsdmSpec.from_json_dict(doc)
        violations = decay.validate_spec(spec)
        if violations:
            raise SchemaError([f"validation: {m}" for m in violations])
        return spec
    raise ValueError(f"unknown instance kind {expected_kind!r}")


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def fmt(value: Decimal, config: CliConfig) -> str:
    """Decimal-string rendering at settlement precision."""
    quantum = Decimal(1).scaleb(-config.settlement_decimals)
    with localcontext(numeric.CONTEXT) as ctx:
        ctx.prec = max(ctx.prec, len(value.as_tuple().digits) + 2)
        return str(value.quantize(quantum, rounding=ROUND_HALF_EVEN))


def emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# decay subcommands
# ---------------------------------------------------------------------------


def _adhoc_spec(args) -> decay.RsdmSpec:
    expiry = args.expiry_days if args.expiry_days is not None else max(args.days, 1)
    return decay.RsdmSpec(
        issue_date=date(1970, 1, 1),
        collateral_id="adhoc",
        initial_weight=numeric.as_decimal(args.w),
        daily_decay_factor=numeric.as_decimal(args.theta),
        expiry_days=expiry,
        redemption_fee_rate=numeric.as_decimal(getattr(args, "fee_rate", "0") or "0"),
    )


def cmd_decay_residual(args, config: CliConfig) -> int:
    spec = _adhoc_spec(args)
    residual = decay.residual_weight(spec, args.days)
    if config.output_format == "json":
        emit_json({"residual_g": fmt(residual.value, config)})
    else:
        print(fmt(residual.value, config))
    return 0


def cmd_decay_redeem_quote(args, config: CliConfig) -> int:
    spec = _adhoc_spec(args)
    quote = decay.redemption_quote(spec, args.days)
    count = Decimal(args.count)
    payout = numeric.exact_mul(quote.payout.value, count)
    fee = numeric.exact_mul(quote.fee.value, count)
    residual = numeric.exact_mul(quote.residual.value, count)
    doc = {
        "payout_g": fmt(payout, config),
        "fee_g": fmt(fee, config),
        "residual_g": fmt(residual, config),
    }
    if config.output_format == "json":
        emit_json(doc)
    else:
        for key, value in doc.items():
            print(f"{key}: {value}")
    return 0


def cmd_decay_convert_rate(args, config: CliConfig) -> int:
    if args.annual is not None:
        value = decay.daily_factor_from_annual_rate(args.annual)
        label = "daily_factor"
    else:
        value = decay.annual_rate_from_daily_factor(args.daily)
        label = "annual_rate"
    if config.output_format == "json":
        emit_json({label: fmt(value, config)})
    else:
        print(fmt(value, config))
    return 0


# ---------------------------------------------------------------------------
# solvency subcommands
# ---------------------------------------------------------------------------


def cmd_solvency_breakeven(args, config: CliConfig) -> int:
    try:
        print(solvency.breakeven_horizon(args.beta, args.alpha))
    except NeverBankrupt:
        print("never")
    return 0


def _schedule_from_args(args) -> solvency.FeeSchedule:
    chosen = [
        name
        for name, value in (
            ("flat-fee", args.flat_fee),
            ("deadline-day", args.deadline_day),
            ("mean-days", args.mean_days),
        )
        if value is not None
    ]
    if len(chosen) != 1:
        raise DomainError(
            "exactly one of --flat-fee, --deadline-day, --mean-days is required"
        )
    if args.flat_fee is not None:
        return solvency.FeeSchedule.flat(args.flat_fee, args.rate)
    if args.deadline_day is not None:
        return solvency.FeeSchedule.deadline_based(args.deadline_day, args.rate)
    return solvency.FeeSchedule.mean_holding_based(args.mean_days, args.rate)


def cmd_solvency_simulate(args, config: CliConfig) -> int:
    records = solvency.load_records_csv(resolve_path(args.records, config))
    schedule = _schedule_from_args(args)
    timeline = solvency.simulate_issuer(records, schedule, args.horizon)
    text = timeline.to_csv()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"timeline written to {args.out}")
    else:
        sys.stdout.write(text)
    if timeline.first_bankrupt_day is not None:
        print(f"first bankrupt day: {timeline.first_bankrupt_day}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# msp subcommands
# ---------------------------------------------------------------------------


def _solution_doc(result, config: CliConfig) -> dict:
    doc = msp.solution_to_json_dict(result)
    if "objective" in doc:
        doc["objective"] = fmt(Decimal(doc["objective"]), config)
        doc["per_function_score"] = {
            k: fmt(Decimal(v), config) for k, v in doc["per_function_score"].items()
        }
    return doc


def cmd_msp_solve(args, config: CliConfig) -> int:
    instance = load_instance(resolve_path(args.instance, config), "msp")
    kind = msp.ObjectiveKind(args.objective)
    if args.method == "exhaustive":
        result = msp.solve_exhaustive(instance, kind)
    elif kind is msp.ObjectiveKind.SATURATING:
        result = msp.solve_saturating(instance)
    else:
        result = msp.solve_branch_and_bound(instance)
    emit_json(_solution_doc(result, config))
    return 0


def _parse_selection(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def cmd_msp_check(args, config: CliConfig) -> int:
    instance = load_instance(resolve_path(args.instance, config), "msp")
    verdict = msp.check_feasible(instance, _parse_selection(args.select))
    if config.output_format == "json":
        emit_json({"feasible": verdict.feasible, "violations": list(verdict.violations)})
    else:
        print(f"feasible: {'yes' if verdict.feasible else 'no'}")
        for v in verdict.violations:
            print(f"  violated - {v}")
    return 0


def cmd_msp_report(args, config: CliConfig) -> int:
    instance = load_instance(resolve_path(args.instance, config), "msp")
    report = msp.coverage_report(instance, _parse_selection(args.select))
    if config.output_format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["function_id", "achieved", "threshold", "saturated_value", "covered"])
        for r in report.rows:
            writer.writerow([r.function_id, fmt(r.achieved, config),
                             fmt(r.threshold, config), fmt(r.saturated_value, config),
                             str(r.covered).lower()])
    elif config.output_format == "json":
        emit_json(
            {
                "all_covered": report.all_covered,
                "functions": [
                    {
                        "id": r.function_id,
                        "achieved": fmt(r.achieved, config),
                        "threshold": fmt(r.threshold, config),
                        "saturated_value": fmt(r.saturated_value, config),
                        "covered": r.covered,
                    }
                    for r in report.rows
                ],
            }
        )
    else:
        width = max(len(r.function_id) for r in report.rows)
        for r in report.rows:
            mark = "covered" if r.covered else "UNCOVERED"
            print(
                f"{r.function_id:<{width}}  achieved={fmt(r.achieved, config)}  "
                f"threshold={fmt(r.threshold, config)}  "
                f"saturated={fmt(r.saturated_value, config)}  {mark}"
            )
        print(f"all functions covered: {'yes' if report.all_covered else 'no'}")
    return 0


# ---------------------------------------------------------------------------
# demand subcommands
# ---------------------------------------------------------------------------


def cmd_demand_supply(args, config: CliConfig) -> int:
    scenario = load_instance(resolve_path(args.scenario, config), "demand")
    supply = demand.money_supply(scenario)
    residual = demand.equilibrium_residual(scenario)
    if config.output_format == "json":
        emit_json({"supply": fmt(supply, config), "equilibrium_residual": fmt(residual, config)})
    else:
        print(fmt(supply, config))
    return 0


def cmd_demand_solve(args, config: CliConfig) -> int:
    scenario = load_instance(resolve_path(args.scenario, config), "demand")
    solution = demand.solve_unknown(scenario, args.unknown)
    if config.output_format == "json":
        emit_json(
            {
                "unknown": solution.unknown.value,
                "value": fmt(solution.value, config),
                "negative": solution.negative,
            }
        )
    else:
        print(fmt(solution.value, config))
        if solution.negative:
            print("note: negative solution (economically infeasible)", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# ledger subcommands
# ---------------------------------------------------------------------------


def cmd_ledger_init(args, config: CliConfig) -> int:
    path = Path(args.log)
    if path.exists():
        raise DomainError(f"refusing to overwrite existing log {path}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.touch()
    print(f"initialized empty event log at {path}")
    return 0


def cmd_ledger_append(args, config: CliConfig) -> int:
    path = Path(args.log)
    if not path.exists():
        raise DomainError(f"no such event log: {path} (run 'ledger init' first)")
    if (args.event is None) == (args.event_file is None):
        raise DomainError("exactly one of --event or --event-file is required")
    text = args.event if args.event is not None else Path(args.event_file).read_text(
        encoding="utf-8"
    )
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"event is not valid JSON: {exc}") from exc
    event = ledger.LedgerEvent.from_json_dict(doc)
    state = ledger.replay(ledger.read_event_log(path))
    ledger.append_event(state, event)  # raises on any rejection
    ledger.append_event_line(path, event)
    print(f"appended event {event.sequence} ({event.kind.value})")
    return 0


def cmd_ledger_replay(args, config: CliConfig) -> int:
    path = Path(args.log)
    state = ledger.replay(ledger.read_event_log(path))
    snapshot = ledger.state_to_snapshot(state)
    if args.snapshot:
        Path(args.snapshot).write_text(snapshot, encoding="utf-8")
        print(f"snapshot written to {args.snapshot}")
    else:
        sys.stdout.write(snapshot)
    return 0


def cmd_ledger_value(args, config: CliConfig) -> int:
    state = ledger.replay(ledger.read_event_log(Path(args.log)))
    quotes = ledger.load_quotes_csv(resolve_path(args.quotes, config))
    report = ledger.holdings_valuation(state, quotes, args.party, args.day)
    if config.output_format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["series_id", "token_count", "residual_g", "redeemable_g",
                         "price_per_gram", "residual_value", "redeemable_value",
                         "expired"])
        for h in report.holdings:
            writer.writerow([
                h.series_id, h.token_count, fmt(h.residual_grams, config),
                fmt(h.redeemable_grams, config),
                "" if h.price_per_gram is None else fmt(h.price_per_gram, config),
                fmt(h.residual_value, config), fmt(h.redeemable_value, config),
                str(h.expired).lower(),
            ])
    elif config.output_format == "json":
        emit_json(
            {
                "party": report.party,
                "day": report.day,
                "holdings": [
                    {
                        "series_id": h.series_id,
                        "token_count": h.token_count,
                        "residual_g": fmt(h.residual_grams, config),
                        "redeemable_g": fmt(h.redeemable_grams, config),
                        "price_per_gram": None
                        if h.price_per_gram is None
                        else fmt(h.price_per_gram, config),
                        "residual_value": fmt(h.residual_value, config),
                        "redeemable_value": fmt(h.redeemable_value, config),
                        "expired": h.expired,
                    }
                    for h in report.holdings
                ],
                "total_residual_value": fmt(report.total_residual_value, config),
                "total_redeemable_value": fmt(report.total_redeemable_value, config),
            }
        )
    else:
        for h in report.holdings:
            status = " (expired)" if h.expired else ""
            print(
                f"{h.series_id}: {h.token_count} tokens, residual "
                f"{fmt(h.residual_grams, config)} g, redeemable "
                f"{fmt(h.redeemable_grams, config)} g, value "
                f"{fmt(h.residual_value, config)}{status}"
            )
        print(f"total residual value: {fmt(report.total_residual_value, config)}")
        print(f"total redeemable value: {fmt(report.total_redeemable_value, config)}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_decimal(parser, name, **kwargs):
    parser.add_argument(name, type=str, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsdm",
        description="Redeemable self-decaying money toolkit",
    )
    parser.add_argument("--config", help="path to a CliConfig JSON file")
    parser.add_argument(
        "--format",
        choices=["table", "json", "csv"],
        help="output format (overrides config)",
    )
    top = parser.add_subparsers(dest="group", required=True)

    # decay ------------------------------------------------------------
    decay_p = top.add_parser("decay", help="face-value decay arithmetic")
    decay_sub = decay_p.add_subparsers(dest="command", required=True)

    residual = decay_sub.add_parser("residual", help="residual weight after N days")
    _add_decimal(residual, "--theta", required=True, help="daily decay factor")
    _add_decimal(residual, "--w", required=True, help="initial weight in grams")
    residual.add_argument("--days", type=int, required=True)
    residual.add_argument("--expiry-days", type=int, default=None)
    residual.set_defaults(handler=cmd_decay_residual)

    quote = decay_sub.add_parser("redeem-quote", help="payout/fee split at redemption")
    _add_decimal(quote, "--theta", required=True)
    _add_decimal(quote, "--w", required=True)
    quote.add_argument("--days", type=int, required=True)
    _add_decimal(quote, "--fee-rate", required=True, help="delivery fee rate")
    quote.add_argument("--count", type=int, default=1, help="tokens redeemed")
    quote.add_argument("--expiry-days", type=int, default=None)
    quote.set_defaults(handler=cmd_decay_redeem_quote)

    convert = decay_sub.add_parser("convert-rate", help="annual rate <-> daily factor")
    group = convert.add_mutually_exclusive_group(required=True)
    group.add_argument("--annual", type=str, help="annual rate, e.g. -0.02")
    group.add_argument("--daily", type=str, help="daily factor, e.g. 0.99996")
    convert.set_defaults(handler=cmd_decay_convert_rate)

    # solvency ----------------------------------------------------------
    solv_p = top.add_parser("solvency", help="issuer fee-vs-storage economics")
    solv_sub = solv_p.add_subparsers(dest="command", required=True)

    breakeven = solv_sub.add_parser("breakeven", help="first bankrupt holding duration")
    _add_decimal(breakeven, "--beta", required=True, help="flat fee per token")
    _add_decimal(breakeven, "--alpha", required=True, help="storage cost per token-day")
    breakeven.set_defaults(handler=cmd_solvency_breakeven)

    simulate = solv_sub.add_parser("simulate", help="day-by-day solvency timeline")
    simulate.add_argument("--records", required=True, help="redemption records CSV")
    simulate.add_argument("--horizon", type=int, required=True)
    _add_decimal(simulate, "--rate", required=True, help="storage cost per token-day")
    _add_decimal(simulate, "--flat-fee", default=None)
    simulate.add_argument("--deadline-day", type=int, default=None)
    _add_decimal(simulate, "--mean-days", default=None)
    simulate.add_argument("--out", default=None, help="write timeline CSV here")
    simulate.set_defaults(handler=cmd_solvency_simulate)

    # msp ----------------------------------------------------------------
    msp_p = top.add_parser("msp", help="multi-monetary system selection")
    msp_sub = msp_p.add_subparsers(dest="command", required=True)

    solve = msp_sub.add_parser("solve", help="find the optimal currency selection")
    solve.add_argument("instance", help="instance JSON (path or preset name)")
    solve.add_argument("--objective", choices=["linear", "saturating"], default="linear")
    solve.add_argument("--method", choices=["bnb", "exhaustive"], default="bnb")
    solve.set_defaults(handler=cmd_msp_solve)

    check = msp_sub.add_parser("check", help="feasibility of a given selection")
    check.add_argument("instance")
    check.add_argument("--select", required=True, help="comma-separated currency ids")
    check.set_defaults(handler=cmd_msp_check)

    report = msp_sub.add_parser("report", help="per-function coverage of a selection")
    report.add_argument("instance")
    report.add_argument("--select", required=True)
    report.set_defaults(handler=cmd_msp_report)

    # demand --------------------------------------------------------------
    demand_p = top.add_parser("demand", help="money supply/demand equilibrium")
    demand_sub = demand_p.add_subparsers(dest="command", required=True)

    supply = demand_sub.add_parser("supply", help="total money supply of a scenario")
    supply.add_argument("scenario")
    supply.set_defaults(handler=cmd_demand_supply)

    dsolve = demand_sub.add_parser("solve", help="solve the equilibrium for one field")
    dsolve.add_argument("scenario")
    dsolve.add_argument(
        "--unknown",
        required=True,
        choices=[u.value for u in demand.Unknown],
    )
    dsolve.set_defaults(handler=cmd_demand_solve)

    # ledger ----------------------------------------------------------------
    ledger_p = top.add_parser("ledger", help="event-sourced token ledger")
    ledger_sub = ledger_p.add_subparsers(dest="command", required=True)

    init = ledger_sub.add_parser("init", help="create an empty event log")
    init.add_argument("--log", required=True)
    init.set_defaults(handler=cmd_ledger_init)

    append = ledger_sub.add_parser("append", help="validate and append one event")
    append.add_argument("--log", required=True)
    append.add_argument("--event", default=None, help="event JSON inline")
    append.add_argument("--event-file", default=None)
    append.set_defaults(handler=cmd_ledger_append)

    rep = ledger_sub.add_parser("replay", help="replay the log into a state snapshot")
    rep.add_argument("--log", required=True)
    rep.add_argument("--snapshot", default=None, help="write snapshot JSON here")
    rep.set_defaults(handler=cmd_ledger_replay)

    value = ledger_sub.add_parser("value", help="mark holdings to market")
    value.add_argument("--log", required=True)
    value.add_argument("--quotes", required=True, help="quotes CSV")
    value.add_argument("--party", required=True)
    value.add_argument("--day", type=int, required=True)
    value.set_defaults(handler=cmd_ledger_value)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = load_config(args.config)
        if args.format:
            config.output_format = args.format
        numeric.set_precision(config.precision_digits)
        return args.handler(args, config)
    except SchemaError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return 1
    except RsdmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        numeric.set_precision(numeric.DEFAULT_PRECISION)


if __name__ == "__main__":
    sys.exit(main())
