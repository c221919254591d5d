"""Exact solvers for selecting currencies in a multi-monetary system.

The selection problem: from a pool of candidate currencies, each scored
in [0, 1] on how well it covers each monetary function, pick at most
``max_parallel`` currencies that maximize total weighted coverage minus
a per-currency balance penalty, subject to per-function minimum-score
thresholds and mandatory inclusions (e.g. the domestic fiat). Decision
variables are 0-1 per currency.

Two objectives are supported:

* linear: sum over selected currencies of their weighted coverage,
  minus penalty * selection size;
* saturating: per function, the weighted coverage sum is capped at 1
  before summing (adding a second currency that duplicates an already
  fully covered function earns nothing).

Three solvers: an exhaustive subset oracle (guarded to small pools), a
depth-first branch-and-bound for the linear objective, and an exact
solver for the saturating objective via its standard linearization
(auxiliary per-function values y_k <= 1, y_k <= weighted coverage sum;
maximizing drives each y_k to the min). All three share one
tie-breaking rule: among equal-objective optima, the lexicographically
smallest sorted id tuple wins, so results are schedule-independent.

All arithmetic is decimal; with the usual short score mantissas every
sum is exact, and the solvers' objectives agree to the digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from typing import Iterable, Mapping

from rsdm.errors import DomainError, SchemaError, SizeGuardError
from rsdm.numeric import CONTEXT, as_decimal

EXHAUSTIVE_POOL_LIMIT = 25

_ONE = Decimal(1)
_ZERO = Decimal(0)


class CurrencyClass(Enum):
    FIAT = "Fiat"
    COMMODITY = "Commodity"
    CRYPTO = "Crypto"
    RSDM = "RSDM"
    OTHER = "Other"


class ObjectiveKind(Enum):
    LINEAR = "linear"
    SATURATING = "saturating"


@dataclass(frozen=True)
class MonetaryFunction:
    """One function money should provide, with its importance weight and
    the minimum combined score the selected system must reach."""

    id: str
    weight: Decimal = _ONE
    threshold: Decimal = _ZERO

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight", as_decimal(self.weight))
        object.__setattr__(self, "threshold", as_decimal(self.threshold))


@dataclass(frozen=True)
class CurrencyCandidate:
    """A candidate general equivalent with per-function coverage scores.

    Missing coverage entries count as zero. ``mandatory`` forces the
    candidate into every feasible selection.
    """

    id: str
    currency_class: CurrencyClass
    coverage: Mapping[str, Decimal]
    mandatory: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coverage", {k: as_decimal(v) for k, v in dict(self.coverage).items()}
        )

    def score(self, function_id: str) -> Decimal:
        return self.coverage.get(function_id, _ZERO)


@dataclass(frozen=True)
class MspInstance:
    functions: tuple[MonetaryFunction, ...]
    currencies: tuple[CurrencyCandidate, ...]
    max_parallel: int
    balance_penalty: Decimal = _ZERO

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "currencies", tuple(self.currencies))
        object.__setattr__(self, "balance_penalty", as_decimal(self.balance_penalty))

    def currency(self, currency_id: str) -> CurrencyCandidate:
        for c in self.currencies:
            if c.id == currency_id:
                return c
        raise DomainError(f"unknown currency id {currency_id!r}")


@dataclass(frozen=True)
class MspSolution:
    selection: tuple[str, ...]  # sorted currency ids
    objective: Decimal
    objective_kind: ObjectiveKind
    per_function_score: dict[str, Decimal]  # raw coverage sums


@dataclass(frozen=True)
class Infeasible:
    """First-class result: no selection satisfies the constraints."""

    reasons: tuple[str, ...]


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    violations: tuple[str, ...]


def default_function_catalog(
    weight: Decimal | str | int = _ONE, threshold: Decimal | str | int = _ZERO
) -> tuple[MonetaryFunction, ...]:
    """The twelve-function catalog of what internet-era good money must
    provide, from unit of account through counterfeit resistance. The
    catalog is configurable: callers may extend or replace it."""
    ids = [
        "F1_unit_of_account",
        "F2_medium_of_exchange",
        "F3_means_of_payment",
        "F4_store_of_value",
        "F5_hoarding_resistance",
        "F6_low_logistics_cost",
        "F7_no_circulation_wear",
        "F8_supply_tracks_gdp",
        "F9_stable_purchasing_power",
        "F10_tax_money",
        "F11_overissue_resistance",
        "F12_counterfeit_resistance",
    ]
    w = as_decimal(weight)
    h = as_decimal(threshold)
    return tuple(MonetaryFunction(i, w, h) for i in ids)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_instance(instance: MspInstance) -> list[str]:
    """Report invariant violations and certain-infeasibility warnings,
    each prefixed with a JSON-pointer path into the instance document."""
    problems = []
    if len(instance.functions) < 1:
        problems.append("/functions: at least one monetary function is required")
    if len(instance.currencies) < 1:
        problems.append("/currencies: at least one currency candidate is required")
    if instance.max_parallel < 1:
        problems.append("/max_parallel: must be a positive integer")
    if instance.balance_penalty < 0:
        problems.append("/balance_penalty: must be nonnegative")

    seen_functions = set()
    for i, f in enumerate(instance.functions):
        if f.id in seen_functions:
            problems.append(f"/functions/{i}/id: duplicate function id {f.id!r}")
        seen_functions.add(f.id)
        if f.weight < 0:
            problems.append(f"/functions/{i}/weight: weight must be nonnegative")
        if f.threshold < 0:
            problems.append(f"/functions/{i}/threshold: threshold must be nonnegative")

    seen_currencies = set()
    mandatory_count = 0
    for i, c in enumerate(instance.currencies):
        if c.id in seen_currencies:
            problems.append(f"/currencies/{i}/id: duplicate currency id {c.id!r}")
        seen_currencies.add(c.id)
        mandatory_count += c.mandatory
        for fid, u in c.coverage.items():
            if fid not in seen_functions:
                problems.append(
                    f"/currencies/{i}/coverage/{fid}: unknown function id {fid!r}"
                )
            if not (_ZERO <= u <= _ONE):
                problems.append(
                    f"/currencies/{i}/coverage/{fid}: coverage must lie in [0, 1]"
                )

    if mandatory_count > instance.max_parallel:
        problems.append(
            f"/max_parallel: {mandatory_count} mandatory currencies exceed the "
            f"cardinality bound {instance.max_parallel}"
        )
    # Certain-infeasibility necessary condition: reported as warnings so
    # such instances still reach the solvers (which answer Infeasible).
    with localcontext(CONTEXT):
        for i, f in enumerate(instance.functions):
            total = sum((c.score(f.id) for c in instance.currencies), _ZERO)
            if total < f.threshold:
                problems.append(
                    f"warning: /functions/{i}/threshold: threshold {f.threshold} "
                    f"unreachable (total coverage across the pool is {total})"
                )
    return problems


# ---------------------------------------------------------------------------
# Objective evaluation and feasibility
# ---------------------------------------------------------------------------


def _selection_set(instance: MspInstance, selection: Iterable[str]) -> set[str]:
    sel = set(selection)
    known = {c.id for c in instance.currencies}
    unknown = sel - known
    if unknown:
        raise DomainError(f"unknown currency ids in selection: {sorted(unknown)}")
    return sel


def linear_marginal(instance: MspInstance, candidate: CurrencyCandidate) -> Decimal:
    """The candidate's net contribution to the linear objective:
    weighted coverage sum minus the balance penalty."""
    with localcontext(CONTEXT):
        score = sum((f.weight * candidate.score(f.id) for f in instance.functions), _ZERO)
        return score - instance.balance_penalty


def evaluate_linear_objective(instance: MspInstance, selection: Iterable[str]) -> Decimal:
    """Weighted coverage summed over the selection, minus
    balance_penalty * selection size."""
    sel = _selection_set(instance, selection)
    with localcontext(CONTEXT):
        total = _ZERO
        for c in instance.currencies:
            if c.id in sel:
                for f in instance.functions:
                    total += f.weight * c.score(f.id)
        return total - instance.balance_penalty * len(sel)


def evaluate_saturating_objective(instance: MspInstance, selection: Iterable[str]) -> Decimal:
    """Per-function weighted coverage capped at 1, summed, minus
    balance_penalty * selection size."""
    sel = _selection_set(instance, selection)
    with localcontext(CONTEXT):
        total = _ZERO
        for f in instance.functions:
            achieved = sum(
                (f.weight * c.score(f.id) for c in instance.currencies if c.id in sel),
                _ZERO,
            )
            total += min(_ONE, achieved)
        return total - instance.balance_penalty * len(sel)


def raw_function_scores(instance: MspInstance, selection: Iterable[str]) -> dict[str, Decimal]:
    """Unweighted coverage sum per function over the selection (the
    quantity the per-function thresholds constrain)."""
    sel = _selection_set(instance, selection)
    with localcontext(CONTEXT):
        return {
            f.id: sum((c.score(f.id) for c in instance.currencies if c.id in sel), _ZERO)
            for f in instance.functions
        }


def check_feasible(instance: MspInstance, selection: Iterable[str]) -> FeasibilityVerdict:
    """List every violated constraint: cardinality, per-function
    threshold (on raw coverage sums), and mandatory inclusion."""
    sel = _selection_set(instance, selection)
    violations = []
    if len(sel) > instance.max_parallel:
        violations.append(
            f"cardinality: {len(sel)} currencies selected, at most "
            f"{instance.max_parallel} may circulate in parallel"
        )
    scores = raw_function_scores(instance, sel)
    for f in instance.functions:
        if scores[f.id] < f.threshold:
            violations.append(
                f"threshold {f.id}: achieved {scores[f.id]}, required {f.threshold}"
            )
    for c in instance.currencies:
        if c.mandatory and c.id not in sel:
            violations.append(f"mandatory: {c.id} must be included in the monetary system")
    return FeasibilityVerdict(feasible=not violations, violations=tuple(violations))


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


def _better(
    objective: Decimal,
    selection: tuple[str, ...],
    best_objective: Decimal | None,
    best_selection: tuple[str, ...] | None,
) -> bool:
    """Shared tie-breaking: higher objective wins; on equal objective the
    lexicographically smaller sorted id tuple wins."""
    if best_objective is None:
        return True
    if objective != best_objective:
        return objective > best_objective
    return selection < best_selection


def _infeasibility_reasons(instance: MspInstance) -> tuple[str, ...]:
    reasons = []
    mandatory = [c.id for c in instance.currencies if c.mandatory]
    if len(mandatory) > instance.max_parallel:
        reasons.append(
            f"{len(mandatory)} mandatory currencies but only "
            f"{instance.max_parallel} may circulate in parallel"
        )
    with localcontext(CONTEXT):
        for f in instance.functions:
            scores = sorted((c.score(f.id) for c in instance.currencies), reverse=True)
            total = sum(scores, _ZERO)
            top = sum(scores[: instance.max_parallel], _ZERO)
            if total < f.threshold:
                reasons.append(
                    f"threshold {f.id}: {f.threshold} unreachable even selecting "
                    f"every candidate (total coverage {total})"
                )
            elif top < f.threshold:
                reasons.append(
                    f"threshold {f.id}: {f.threshold} unreachable within the "
                    f"cardinality bound (best achievable {top})"
                )
    if not reasons:
        reasons.append("no subset satisfies all constraints simultaneously")
    return tuple(reasons)


def _solution(
    instance: MspInstance, selection: tuple[str, ...], kind: ObjectiveKind
) -> MspSolution:
    evaluate = (
        evaluate_linear_objective if kind is ObjectiveKind.LINEAR
        else evaluate_saturating_objective
    )
    return MspSolution(
        selection=selection,
        objective=evaluate(instance, selection),
        objective_kind=kind,
        per_function_score=raw_function_scores(instance, selection),
    )


def solve_exhaustive(
    instance: MspInstance, objective_kind: ObjectiveKind = ObjectiveKind.LINEAR
) -> MspSolution | Infeasible:
    """Subset-enumeration oracle: walk every subset, keep the feasible
    ones, return the best under the shared tie-breaking rule.

    The walk skips subtrees that are infeasible for every completion
    (cardinality already exceeded, or a mandatory currency excluded);
    that prunes no feasible subset, so the result is identical to full
    enumeration plus filtering. Guarded to pools of at most 25.
    """
    n = len(instance.currencies)
    if n > EXHAUSTIVE_POOL_LIMIT:
        raise SizeGuardError(
            f"pool of {n} currencies exceeds the exhaustive limit "
            f"({EXHAUSTIVE_POOL_LIMIT}); use the branch-and-bound solver"
        )
    functions = instance.functions
    currencies = instance.currencies
    saturating = objective_kind is ObjectiveKind.SATURATING

    best_obj: Decimal | None = None
    best_sel: tuple[str, ...] | None = None

    with localcontext(CONTEXT):
        thresholds = [f.threshold for f in functions]
        raw = [_ZERO] * len(functions)
        weighted = [_ZERO] * len(functions)
        chosen: list[str] = []
        penalty = instance.balance_penalty

        def leaf() -> None:
            nonlocal best_obj, best_sel
            if any(raw[k] < thresholds[k] for k in range(len(functions))):
                return
            if saturating:
                obj = sum((min(_ONE, weighted[k]) for k in range(len(functions))), _ZERO)
            else:
                obj = sum(weighted, _ZERO)
            obj -= penalty * len(chosen)
            sel = tuple(sorted(chosen))
            if _better(obj, sel, best_obj, best_sel):
                best_obj, best_sel = obj, sel

        def walk(i: int) -> None:
            if i == n:
                leaf()
                return
            c = currencies[i]
            if len(chosen) < instance.max_parallel:
                chosen.append(c.id)
                for k, f in enumerate(functions):
                    u = c.score(f.id)
                    raw[k] += u
                    weighted[k] += f.weight * u
                walk(i + 1)
                chosen.pop()
                for k, f in enumerate(functions):
                    u = c.score(f.id)
                    raw[k] -= u
                    weighted[k] -= f.weight * u
            if not c.mandatory:
                walk(i + 1)

        walk(0)

    if best_sel is None:
        return Infeasible(_infeasibility_reasons(instance))
    return _solution(instance, best_sel, objective_kind)


def solve_branch_and_bound(instance: MspInstance) -> MspSolution | Infeasible:
    """Exact depth-first branch-and-bound for the linear objective.

    Nodes fix currencies one at a time (include branch first, candidates
    ordered by descending net marginal). The upper bound at a node is
    the committed objective plus the sum of the positive net marginals
    of unfixed currencies, truncated to the remaining cardinality
    budget, admissible because marginal contributions are independent
    in the linear objective. A node is also cut when some function's
    threshold is unreachable even by including every remaining
    candidate. Subtrees whose bound ties the incumbent are still
    explored, so the tie-breaking rule sees every optimum.
    """
    functions = instance.functions
    order = sorted(
        instance.currencies,
        key=lambda c: (linear_marginal(instance, c), c.id),
        reverse=True,
    )
    n = len(order)
    marginals = [linear_marginal(instance, c) for c in order]

    with localcontext(CONTEXT):
        thresholds = [f.threshold for f in functions]
        # suffix_raw[p][k]: coverage of function k summed over candidates p..n-1
        suffix_raw = [[_ZERO] * len(functions) for _ in range(n + 1)]
        for p in range(n - 1, -1, -1):
            for k, f in enumerate(functions):
                suffix_raw[p][k] = suffix_raw[p + 1][k] + order[p].score(f.id)
        # suffix_pos[p]: positive net marginals among candidates p..n-1, descending
        suffix_pos: list[list[Decimal]] = [[] for _ in range(n + 1)]
        for p in range(n - 1, -1, -1):
            suffix_pos[p] = sorted(
                [m for m in marginals[p:] if m > 0], reverse=True
            )

        best_obj: Decimal | None = None
        best_sel: tuple[str, ...] | None = None
        raw = [_ZERO] * len(functions)
        chosen: list[str] = []

        def node(p: int, committed: Decimal) -> None:
            nonlocal best_obj, best_sel
            for k in range(len(functions)):
                if raw[k] + suffix_raw[p][k] < thresholds[k]:
                    return  # threshold unreachable below this node
            budget = instance.max_parallel - len(chosen)
            if best_obj is not None:
                bound = committed + sum(suffix_pos[p][:budget], _ZERO)
                if bound < best_obj:
                    return
            if p == n:
                if all(raw[k] >= thresholds[k] for k in range(len(functions))):
                    sel = tuple(sorted(chosen))
                    if _better(committed, sel, best_obj, best_sel):
                        best_obj, best_sel = committed, sel
                return
            c = order[p]
            if budget > 0:
                chosen.append(c.id)
                for k, f in enumerate(functions):
                    raw[k] += c.score(f.id)
                node(p + 1, committed + marginals[p])
                chosen.pop()
                for k, f in enumerate(functions):
                    raw[k] -= c.score(f.id)
            if not c.mandatory:
                node(p + 1, committed)

        node(0, _ZERO)

    if best_sel is None:
        return Infeasible(_infeasibility_reasons(instance))
    return _solution(instance, best_sel, ObjectiveKind.LINEAR)


def solve_saturating(instance: MspInstance) -> MspSolution | Infeasible:
    """Exact solver for the saturating objective via its linearization.

    Introducing one auxiliary value per function, y_k <= 1 and
    y_k <= weighted coverage sum of the selected currencies, and
    maximizing sum(y_k) - penalty * selection size drives every y_k to
    the min of its two ceilings, so the linearized optimum equals the
    saturating one. The search is the same depth-first branch-and-bound
    over the 0-1 currency variables; at any node the bound sets each
    y_k optimistically to min(1, committed + all remaining coverage),
    which the concavity of min makes admissible.
    """
    functions = instance.functions
    order = sorted(
        instance.currencies,
        key=lambda c: (linear_marginal(instance, c), c.id),
        reverse=True,
    )
    n = len(order)

    with localcontext(CONTEXT):
        thresholds = [f.threshold for f in functions]
        suffix_raw = [[_ZERO] * len(functions) for _ in range(n + 1)]
        suffix_weighted = [[_ZERO] * len(functions) for _ in range(n + 1)]
        for p in range(n - 1, -1, -1):
            for k, f in enumerate(functions):
                u = order[p].score(f.id)
                suffix_raw[p][k] = suffix_raw[p + 1][k] + u
                suffix_weighted[p][k] = suffix_weighted[p + 1][k] + f.weight * u

        best_obj: Decimal | None = None
        best_sel: tuple[str, ...] | None = None
        raw = [_ZERO] * len(functions)
        weighted = [_ZERO] * len(functions)
        chosen: list[str] = []
        penalty = instance.balance_penalty

        def node(p: int) -> None:
            nonlocal best_obj, best_sel
            for k in range(len(functions)):
                if raw[k] + suffix_raw[p][k] < thresholds[k]:
                    return
            budget = instance.max_parallel - len(chosen)
            if best_obj is not None:
                reachable = (
                    (min(_ONE, weighted[k] + suffix_weighted[p][k]) for k in range(len(functions)))
                    if budget > 0
                    else (min(_ONE, weighted[k]) for k in range(len(functions)))
                )
                bound = sum(reachable, _ZERO) - penalty * len(chosen)
                if bound < best_obj:
                    return
            if p == n:
                if all(raw[k] >= thresholds[k] for k in range(len(functions))):
                    obj = sum(
                        (min(_ONE, weighted[k]) for k in range(len(functions))), _ZERO
                    ) - penalty * len(chosen)
                    sel = tuple(sorted(chosen))
                    if _better(obj, sel, best_obj, best_sel):
                        best_obj, best_sel = obj, sel
                return
            c = order[p]
            if budget > 0:
                chosen.append(c.id)
                for k, f in enumerate(functions):
                    u = c.score(f.id)
                    raw[k] += u
                    weighted[k] += f.weight * u
                node(p + 1)
                chosen.pop()
                for k, f in enumerate(functions):
                    u = c.score(f.id)
                    raw[k] -= u
                    weighted[k] -= f.weight * u
            if not c.mandatory:
                node(p + 1)

        node(0)

    if best_sel is None:
        return Infeasible(_infeasibility_reasons(instance))
    return _solution(instance, best_sel, ObjectiveKind.SATURATING)


# ---------------------------------------------------------------------------
# Coverage reporting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionCoverage:
    function_id: str
    achieved: Decimal  # raw coverage sum over the selection
    threshold: Decimal
    saturated_value: Decimal  # min(1, weighted coverage sum)
    covered: bool  # achieved >= threshold


@dataclass(frozen=True)
class CoverageReport:
    rows: tuple[FunctionCoverage, ...]
    all_covered: bool


def coverage_report(instance: MspInstance, selection: Iterable[str]) -> CoverageReport:
    """Per-function coverage of a selection: raw achieved sum vs its
    threshold, the saturated weighted value, and whether the union of
    the selected currencies covers the whole catalog."""
    sel = _selection_set(instance, selection)
    rows = []
    with localcontext(CONTEXT):
        for f in instance.functions:
            achieved = sum(
                (c.score(f.id) for c in instance.currencies if c.id in sel), _ZERO
            )
            weighted = sum(
                (f.weight * c.score(f.id) for c in instance.currencies if c.id in sel),
                _ZERO,
            )
            rows.append(
                FunctionCoverage(
                    function_id=f.id,
                    achieved=achieved,
                    threshold=f.threshold,
                    saturated_value=min(_ONE, weighted),
                    covered=achieved >= f.threshold,
                )
            )
    return CoverageReport(rows=tuple(rows), all_covered=all(r.covered for r in rows))


# ---------------------------------------------------------------------------
# JSON interchange (decimals as strings)
# ---------------------------------------------------------------------------


def instance_to_json_dict(instance: MspInstance) -> dict:
    return {
        "functions": [
            {"id": f.id, "weight": str(f.weight), "threshold": str(f.threshold)}
            for f in instance.functions
        ],
        "currencies": [
            {
                "id": c.id,
                "class": c.currency_class.value,
                "mandatory": c.mandatory,
                "coverage": {k: str(v) for k, v in sorted(c.coverage.items())},
            }
            for c in instance.currencies
        ],
        "max_parallel": instance.max_parallel,
        "balance_penalty": str(instance.balance_penalty),
    }


def instance_from_json_dict(data: object) -> MspInstance:
    """Parse an instance document; raises SchemaError listing every
    shape violation with its JSON-pointer path."""
    problems: list[str] = []

    def dec(value: object, pointer: str) -> Decimal:
        if not isinstance(value, (str, int)) or isinstance(value, bool):
            problems.append(f"{pointer}: expected a decimal string")
            return _ZERO
        try:
            return as_decimal(value)
        except DomainError:
            problems.append(f"{pointer}: not a decimal number: {value!r}")
            return _ZERO

    if not isinstance(data, dict):
        raise SchemaError(["/: expected a JSON object"])
    for key in ("functions", "currencies", "max_parallel"):
        if key not in data:
            problems.append(f"/{key}: missing required field")
    if problems:
        raise SchemaError(problems)

    functions = []
    if not isinstance(data["functions"], list):
        problems.append("/functions: expected an array")
    else:
        for i, f in enumerate(data["functions"]):
            if not isinstance(f, dict) or "id" not in f:
                problems.append(f"/functions/{i}: expected an object with an 'id'")
                continue
            functions.append(
                MonetaryFunction(
                    id=str(f["id"]),
                    weight=dec(f.get("weight", "1"), f"/functions/{i}/weight"),
                    threshold=dec(f.get("threshold", "0"), f"/functions/{i}/threshold"),
                )
            )

    currencies = []
    if not isinstance(data["currencies"], list):
        problems.append("/currencies: expected an array")
    else:
        class_values = {c.value: c for c in CurrencyClass}
        for i, c in enumerate(data["currencies"]):
            if not isinstance(c, dict) or "id" not in c:
                problems.append(f"/currencies/{i}: expected an object with an 'id'")
                continue
            cls_name = c.get("class", "Other")
            if cls_name not in class_values:
                problems.append(
                    f"/currencies/{i}/class: unknown class {cls_name!r} "
                    f"(expected one of {sorted(class_values)})"
                )
                cls_name = "Other"
            coverage_data = c.get("coverage", {})
            if not isinstance(coverage_data, dict):
                problems.append(f"/currencies/{i}/coverage: expected an object")
                coverage_data = {}
            coverage = {
                str(fid): dec(u, f"/currencies/{i}/coverage/{fid}")
                for fid, u in coverage_data.items()
            }
            currencies.append(
                CurrencyCandidate(
                    id=str(c["id"]),
                    currency_class=class_values[cls_name],
                    coverage=coverage,
                    mandatory=bool(c.get("mandatory", False)),
                )
            )

    max_parallel = data["max_parallel"]
    if not isinstance(max_parallel, int) or isinstance(max_parallel, bool):
        problems.append("/max_parallel: expected an integer")
        max_parallel = 1
    balance_penalty = dec(data.get("balance_penalty", "0"), "/balance_penalty")

    if problems:
        raise SchemaError(problems)
    return MspInstance(
        functions=tuple(functions),
        currencies=tuple(currencies),
        max_parallel=max_parallel,
        balance_penalty=balance_penalty,
    )


def solution_to_json_dict(result: MspSolution | Infeasible) -> dict:
    if isinstance(result, Infeasible):
        return {"infeasible": True, "reasons": list(result.reasons)}
    return {
        "selection": list(result.selection),
        "objective": str(result.objective),
        "objective_kind": result.objective_kind.value,
        "per_function_score": {k: str(v) for k, v in sorted(result.per_function_score.items())},
    }
