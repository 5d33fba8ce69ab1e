"""Command line entry point.

Exit codes: 0 all checks pass or run complete, 1 a checked property failed,
2 input error, 3 enumeration limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Sequence

from . import blueprint as bp
from .cost_model import (
    DEFAULT_PAIR_BOUND,
    DEFAULT_SUBSET_BOUND,
    OperatorLinearCost,
    cost,
    delta,
    is_cost_efficient,
    operator_of,
    satisfies_prop1_condition,
)
from .equilibrium import (
    DEFAULT_COALITION_BOUND,
    ImprovementMode,
    best_response_dynamics,
    iter_coalitions,
)
from .errors import EnumerationLimitExceeded, InputError, LimitError
from .rational import fmt
from .resource_model import validate_configuration
from .reward_model import check_cauchy_linearity, check_egalitarianism, check_sybil_resilience, evaluate
from .scenario import DynamicsParams, ScenarioFile, load_scenario
from .tokenomics import Halving, emission

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _set(s: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def _utilities(d: dict[int, Fraction]) -> str:
    return " ".join(f"{i}:{fmt(v)}" for i, v in sorted(d.items()))


@contextmanager
def _csv_target(path: str | None, fallback):
    if path is None:
        yield fallback
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _writer(fh) -> csv.writer:
    return csv.writer(fh, lineterminator="\n")


def cmd_axioms(sc: ScenarioFile, args, out) -> int:
    universe, reward = sc.require("universe", "reward")
    bound = args.max_owners or DEFAULT_PAIR_BOUND
    denominator = args.denominator or universe.n
    rows = []

    for name, check in (("sybil_resilience", check_sybil_resilience), ("egalitarianism", check_egalitarianism)):
        w = check(reward, universe, bound)
        if w is None:
            print(f"{name}: ok", file=out)
            rows.append([name, "ok", "", "", ""])
        else:
            sets = " ".join(_set(s) for s in w.sets)
            print(
                f"{name}: violated sets={sets} measures={','.join(fmt(m) for m in w.measures)}"
                f" lhs={fmt(w.lhs)} rhs={fmt(w.rhs)}",
                file=out,
            )
            rows.append([name, "violated", sets, fmt(w.lhs), fmt(w.rhs)])

    cw = check_cauchy_linearity(reward, denominator)
    if cw is None:
        print(f"cauchy_linearity(N={denominator}): ok", file=out)
        rows.append(["cauchy_linearity", "ok", "", "", ""])
    else:
        print(
            f"cauchy_linearity(N={denominator}): violated k={cw.k} value={fmt(cw.value)} expected={fmt(cw.expected)}",
            file=out,
        )
        rows.append(["cauchy_linearity", "violated", f"k={cw.k}", fmt(cw.value), fmt(cw.expected)])

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = _writer(fh)
            w.writerow(["check", "status", "witness", "lhs", "rhs"])
            w.writerows(rows)
    return EXIT_OK if all(r[1] == "ok" for r in rows) else EXIT_FAILED


def cmd_equilibrium(sc: ScenarioFile, args, out) -> int:
    inst = sc.instance()
    cfg = sc.require("configuration")
    u = inst.universe
    validate_configuration(u, cfg)
    mode = ImprovementMode(args.mode) if args.mode else sc.mode
    bound = args.max_owners or DEFAULT_COALITION_BOUND
    if u.n > bound:
        raise EnumerationLimitExceeded(u.n, bound)

    print(f"owners: {u.n}", file=out)
    print(f"mode: {mode.value}", file=out)
    if isinstance(inst.cost, OperatorLinearCost):
        print(
            f"spread_condition: {str(satisfies_prop1_condition(inst.cost)).lower()}"
            f" (delta={fmt(delta(inst.cost))}, min_fixed={fmt(min(inst.cost.fixed))})",
            file=out,
        )
    for index, pool in enumerate(cfg.pools):
        sigma = u.measure(pool)
        rho, c = evaluate(inst.reward, sigma), cost(inst.cost, u, pool)
        eff = is_cost_efficient(pool, inst.cost, u, max(bound, DEFAULT_SUBSET_BOUND))
        line = (
            f"pool {index} {_set(pool)}: measure={fmt(sigma)} reward={fmt(rho)} cost={fmt(c)}"
            f" viable={str(rho >= c).lower()} cost_efficient={str(eff.efficient).lower()}"
        )
        if not eff.efficient:
            line += f" witness={_set(eff.witness)}"
        if isinstance(inst.cost, OperatorLinearCost):
            line += f" operator={operator_of(inst.cost, pool)}"
        print(line, file=out)

    certificate, checked, rows = None, 0, []
    for outcome in iter_coalitions(inst, cfg, mode, bound):
        if certificate is None:
            checked += 1
            certificate = outcome.certificate
        c = outcome.certificate
        rows.append(
            [
                _set(outcome.coalition),
                outcome.deviations_checked,
                "true" if c else "false",
                " ".join(_set(b) for b in c.partition) if c else "",
                _set(c.inactive) if c else "",
            ]
        )
        if certificate is not None and not args.csv:
            break

    print(f"verdict: {'StrongNash' if certificate is None else 'NotStrongNash'}", file=out)
    print(f"coalitions_checked: {checked}", file=out)
    if certificate is not None:
        print(f"coalition: {_set(certificate.coalition)}", file=out)
        print(f"partition: {' '.join(_set(b) for b in certificate.partition) or '-'}", file=out)
        print(f"inactive: {_set(certificate.inactive)}", file=out)
        print(f"old_utilities: {_utilities(certificate.old_utilities)}", file=out)
        print(f"new_utilities: {_utilities(certificate.new_utilities)}", file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = _writer(fh)
            w.writerow(["coalition", "deviations_checked", "improving", "partition", "inactive"])
            w.writerows(rows)
    return EXIT_OK if certificate is None else EXIT_FAILED


def cmd_dynamics(sc: ScenarioFile, args, out) -> int:
    inst = sc.instance()
    cfg = sc.require("configuration")
    params = sc.dynamics or DynamicsParams()
    seed = params.seed if args.seed is None else args.seed
    max_iter = params.max_iter if args.max_iter is None else args.max_iter
    trace = best_response_dynamics(inst, cfg, params.moves, max_iter, seed)
    u = inst.universe

    with _csv_target(args.csv, out) as fh:
        w = _writer(fh)
        w.writerow(
            ["iteration", "mover", "move", "pool_count", "min_pool_measure", "max_pool_measure",
             "utility_before", "utility_after"]
        )
        for step in trace.steps:
            measures = [u.measure(p) for p in step.configuration.pools]
            w.writerow(
                [
                    step.iteration,
                    step.mover,
                    str(step.move),
                    len(measures),
                    fmt(min(measures)) if measures else "",
                    fmt(max(measures)) if measures else "",
                    fmt(step.utility_before),
                    fmt(step.utility_after),
                ]
            )
    final = trace.final
    print(
        f"converged={str(trace.converged).lower()} iterations={trace.iterations} steps={len(trace.steps)}"
        f" pools={len(final.pools)} final={' '.join(_set(p) for p in final.pools) or '-'}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_simulate(sc: ScenarioFile, args, out) -> int:
    inst = sc.instance()
    cfg, schedule, params = sc.require("configuration", "schedule", "blueprint")
    scenario = bp.Scenario(
        instance=inst,
        configuration=cfg,
        k=params.k,
        epochs=params.epochs if args.epochs is None else args.epochs,
        schedule=schedule,
        treasury_rate=params.treasury_rate,
        fees_per_epoch=params.fees_per_epoch,
        performance=params.performance,
        seed=params.seed if args.seed is None else args.seed,
    )
    records = bp.run(scenario)
    n, pools = inst.universe.n, len(cfg.pools)
    totals = {i: Fraction(0) for i in range(n)}
    with _csv_target(args.csv, out) as fh:
        w = _writer(fh)
        w.writerow(
            ["epoch", "emission", "fees", "treasury", "committee"]
            + [f"pool_{p}_reward" for p in range(pools)]
            + [f"owner_{i}_cumulative" for i in range(n)]
        )
        for r in records:
            for i, amount in r.owner_rewards.items():
                totals[i] += amount
            w.writerow(
                [r.epoch, fmt(r.pot.emission), fmt(r.pot.fees), fmt(r.treasury), ";".join(map(str, r.committee))]
                + [fmt(r.pool_rewards.get(p, Fraction(0))) for p in range(pools)]
                + [fmt(totals[i]) for i in range(n)]
            )
    treasury = sum((r.treasury for r in records), Fraction(0))
    print(
        f"epochs={len(records)} treasury_total={fmt(treasury)} "
        f"owner_totals={_utilities(totals)} baseline=stake_proportional standby_reward=0 fees_taxed=true",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_emission(sc: ScenarioFile, args, out) -> int:
    schedule = sc.require("schedule")
    through = args.through
    if through is None:
        through = (sc.blueprint.epochs - 1) if sc.blueprint and sc.blueprint.epochs else 9
    if through < 0:
        raise InputError("--through must be >= 0")
    with _csv_target(args.csv, out) as fh:
        w = _writer(fh)
        w.writerow(["epoch", "emission", "cumulative"])
        total = Fraction(0)
        for epoch in range(through + 1):
            e = emission(schedule, epoch)
            total += e
            w.writerow([epoch, fmt(e), fmt(total)])
    summary = f"cumulative={fmt(total)}"
    if isinstance(schedule, Halving):
        summary += f" supremum={fmt(schedule.supremum)}"
    print(summary, file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "axioms": cmd_axioms,
    "equilibrium": cmd_equilibrium,
    "dynamics": cmd_dynamics,
    "simulate": cmd_simulate,
    "emission": cmd_emission,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", required=True, help="path to a JSON scenario file")
    common.add_argument("--mode", choices=["strict", "pareto"], help="coalition improvement notion")
    common.add_argument("--max-owners", type=int, help="enumeration bound on the number of owners")
    common.add_argument("--csv", help="write the CSV table to this path")
    common.add_argument("--seed", type=int, help="override the scenario seed")
    common.add_argument("--epochs", type=int, help="override the number of simulated epochs")

    parser = argparse.ArgumentParser(prog="poolgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("axioms", parents=[common], help="check reward axioms and grid linearity")
    p.add_argument("--denominator", type=int, help="grid denominator for the linearity check (default: n)")
    sub.add_parser("equilibrium", parents=[common], help="verify a configuration is a Strong Nash equilibrium")
    p = sub.add_parser("dynamics", parents=[common], help="run best-response dynamics, CSV trace")
    p.add_argument("--max-iter", type=int, help="maximum number of full rounds")
    sub.add_parser("simulate", parents=[common], help="simulate committee selection and epoch rewards")
    p = sub.add_parser("emission", parents=[common], help="tabulate an emission schedule")
    p.add_argument("--through", type=int, help="last epoch to tabulate (inclusive)")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for name in ("max_iter", "denominator", "through"):
        if not hasattr(args, name):
            setattr(args, name, None)
    try:
        sc = load_scenario(args.scenario)
        return COMMANDS[args.command](sc, args, out)
    except LimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
