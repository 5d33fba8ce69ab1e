"""JSON scenario files.

Rationals are written as ``"p/q"`` strings (or integer literals) and parsed
exactly; JSON floats are rejected. Every section is optional at parse time
and each command checks for the sections it needs. Unknown keys are errors.

Example::

    {
      "universe": ["1/2", "1/4", "1/4"],
      "cost": {"kind": "operator_linear", "fixed": [5, 3, 4], "marginal": [1, 2, 1]},
      "reward": {"kind": "linear", "gamma": 10},
      "configuration": {"pools": [[0, 1, 2]]},
      "mode": "strict",
      "schedule": {"kind": "halving", "initial": 50, "interval": 10},
      "blueprint": {"k": 1, "epochs": 10, "treasury_rate": "1/5",
                    "fees_per_epoch": 0, "performance": {"0": 1}, "seed": 7},
      "dynamics": {"max_iter": 20, "seed": 0}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cost_model import CostModel, OperatorLinearCost, TabulatedCost
from .equilibrium import ImprovementMode, Instance, MoveRules
from .errors import InputError
from .rational import fmt, to_fraction
from .resource_model import PoolingConfiguration, ResourceUniverse, new_universe
from .reward_model import Capped, Linear, PowerConvex, RewardModel, Tabulated
from .splitting import FairShare, OperatorMargin, SplittingStrategy
from .tokenomics import Constant, Custom, CustomRange, EmissionSchedule, Halving


@dataclass(frozen=True)
class BlueprintParams:
    k: int = 1
    epochs: int = 0
    treasury_rate: Fraction = Fraction(0)
    fees_per_epoch: Fraction = Fraction(0)
    performance: dict[int, Fraction] = field(default_factory=dict)
    seed: int = 0


@dataclass(frozen=True)
class DynamicsParams:
    max_iter: int = 100
    seed: int = 0
    moves: MoveRules = MoveRules()


@dataclass(frozen=True)
class ScenarioFile:
    universe: ResourceUniverse | None = None
    cost: CostModel | None = None
    reward: RewardModel | None = None
    configuration: PoolingConfiguration | None = None
    mode: ImprovementMode = ImprovementMode.ALL_STRICTLY_BETTER
    schedule: EmissionSchedule | None = None
    blueprint: BlueprintParams | None = None
    dynamics: DynamicsParams | None = None

    def require(self, *names: str):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise InputError(f"scenario lacks required section(s): {', '.join(missing)}")
        values = tuple(getattr(self, n) for n in names)
        return values[0] if len(values) == 1 else values

    def instance(self) -> Instance:
        universe, cost, reward = self.require("universe", "cost", "reward")
        return Instance(universe, cost, reward)


def _obj(value: Any, where: str, allowed: set[str], required: set[str] = frozenset()) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(value) - allowed
    if unknown:
        raise InputError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = set(required) - set(value)
    if missing:
        raise InputError(f"{where}: missing field(s) {sorted(missing)}")
    return value


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _rat(value: Any, where: str) -> Fraction:
    try:
        return to_fraction(value)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list")
    return value


def _parse_cost(d: Any) -> CostModel:
    kind = _obj(d, "cost", {"kind", "fixed", "marginal", "table"}, {"kind"})["kind"]
    if kind == "operator_linear":
        _obj(d, "cost", {"kind", "fixed", "marginal"}, {"kind", "fixed", "marginal"})
        fixed = [_rat(v, "cost.fixed") for v in _list(d["fixed"], "cost.fixed")]
        marginal = [_rat(v, "cost.marginal") for v in _list(d["marginal"], "cost.marginal")]
        return OperatorLinearCost(tuple(fixed), tuple(marginal))
    if kind == "tabulated":
        _obj(d, "cost", {"kind", "table"}, {"kind", "table"})
        table = {}
        for row in _list(d["table"], "cost.table"):
            _obj(row, "cost.table[]", {"owners", "cost"}, {"owners", "cost"})
            owners = frozenset(_int(i, "cost.table[].owners") for i in _list(row["owners"], "owners"))
            table[owners] = _rat(row["cost"], "cost.table[].cost")
        return TabulatedCost(table)
    raise InputError(f"cost: unknown kind {kind!r}")


def _parse_reward(d: Any) -> RewardModel:
    kind = _obj(d, "reward", {"kind", "gamma", "beta", "exponent", "grid"}, {"kind"})["kind"]
    if kind == "linear":
        _obj(d, "reward", {"kind", "gamma"}, {"kind", "gamma"})
        return Linear(_rat(d["gamma"], "reward.gamma"))
    if kind == "capped":
        _obj(d, "reward", {"kind", "gamma", "beta"}, {"kind", "gamma", "beta"})
        return Capped(_rat(d["gamma"], "reward.gamma"), _rat(d["beta"], "reward.beta"))
    if kind == "power":
        _obj(d, "reward", {"kind", "gamma", "exponent"}, {"kind", "gamma", "exponent"})
        return PowerConvex(_rat(d["gamma"], "reward.gamma"), _int(d["exponent"], "reward.exponent"))
    if kind == "tabulated":
        _obj(d, "reward", {"kind", "grid"}, {"kind", "grid"})
        grid = []
        for point in _list(d["grid"], "reward.grid"):
            if not isinstance(point, list) or len(point) != 2:
                raise InputError("reward.grid: points must be [measure, value] pairs")
            grid.append((_rat(point[0], "reward.grid"), _rat(point[1], "reward.grid")))
        return Tabulated(tuple(grid))
    raise InputError(f"reward: unknown kind {kind!r}")


def _parse_splitting(d: Any) -> SplittingStrategy:
    kind = _obj(d, "splitting", {"kind", "operator", "margin"}, {"kind"})["kind"]
    if kind == "fair_share":
        _obj(d, "splitting", {"kind"})
        return FairShare()
    if kind == "operator_margin":
        _obj(d, "splitting", {"kind", "operator", "margin"}, {"kind", "operator", "margin"})
        return OperatorMargin(_int(d["operator"], "splitting.operator"), _rat(d["margin"], "splitting.margin"))
    raise InputError(f"splitting: unknown kind {kind!r}")


def _parse_configuration(d: Any) -> PoolingConfiguration:
    _obj(d, "configuration", {"pools", "splitting"}, {"pools"})
    pools = tuple(
        frozenset(_int(i, "configuration.pools") for i in _list(p, "configuration.pools[]"))
        for p in _list(d["pools"], "configuration.pools")
    )
    splitting = tuple(_parse_splitting(s) for s in _list(d.get("splitting", []), "configuration.splitting"))
    if splitting and len(splitting) != len(pools):
        raise InputError("configuration: need one splitting entry per pool")
    return PoolingConfiguration(pools, splitting)


def _parse_schedule(d: Any) -> EmissionSchedule:
    kind = _obj(d, "schedule", {"kind", "rate", "initial", "interval", "table"}, {"kind"})["kind"]
    if kind == "constant":
        _obj(d, "schedule", {"kind", "rate"}, {"kind", "rate"})
        return Constant(_rat(d["rate"], "schedule.rate"))
    if kind == "halving":
        _obj(d, "schedule", {"kind", "initial", "interval"}, {"kind", "initial", "interval"})
        return Halving(_rat(d["initial"], "schedule.initial"), _int(d["interval"], "schedule.interval"))
    if kind == "custom":
        _obj(d, "schedule", {"kind", "table"}, {"kind", "table"})
        rows = []
        for row in _list(d["table"], "schedule.table"):
            _obj(row, "schedule.table[]", {"start", "end", "rate"}, {"start", "rate"})
            end = row.get("end")
            rows.append(
                CustomRange(
                    _int(row["start"], "schedule.table[].start"),
                    None if end is None else _int(end, "schedule.table[].end"),
                    _rat(row["rate"], "schedule.table[].rate"),
                )
            )
        return Custom(tuple(rows))
    raise InputError(f"schedule: unknown kind {kind!r}")


def _parse_blueprint(d: Any) -> BlueprintParams:
    _obj(d, "blueprint", {"k", "epochs", "treasury_rate", "fees_per_epoch", "performance", "seed"})
    perf = d.get("performance", {})
    if not isinstance(perf, dict):
        raise InputError("blueprint.performance: expected an object mapping pool index to factor")
    performance = {}
    for key, value in perf.items():
        try:
            pool = int(key)
        except ValueError:
            raise InputError(f"blueprint.performance: pool key {key!r} is not an integer") from None
        performance[pool] = _rat(value, "blueprint.performance")
    return BlueprintParams(
        k=_int(d.get("k", 1), "blueprint.k"),
        epochs=_int(d.get("epochs", 0), "blueprint.epochs"),
        treasury_rate=_rat(d.get("treasury_rate", 0), "blueprint.treasury_rate"),
        fees_per_epoch=_rat(d.get("fees_per_epoch", 0), "blueprint.fees_per_epoch"),
        performance=dict(sorted(performance.items())),
        seed=_int(d.get("seed", 0), "blueprint.seed"),
    )


def _parse_dynamics(d: Any) -> DynamicsParams:
    _obj(d, "dynamics", {"max_iter", "seed", "moves"})
    moves = _obj(d.get("moves", {}), "dynamics.moves", {"create", "join", "leave"})
    for key, value in moves.items():
        if not isinstance(value, bool):
            raise InputError(f"dynamics.moves.{key}: expected a boolean")
    return DynamicsParams(
        max_iter=_int(d.get("max_iter", 100), "dynamics.max_iter"),
        seed=_int(d.get("seed", 0), "dynamics.seed"),
        moves=MoveRules(**moves),
    )


TOP_LEVEL = {"universe", "cost", "reward", "configuration", "mode", "schedule", "blueprint", "dynamics"}


def parse_scenario(data: Any) -> ScenarioFile:
    _obj(data, "scenario", TOP_LEVEL)
    universe = None
    if "universe" in data:
        universe = new_universe([_rat(w, "universe") for w in _list(data["universe"], "universe")])
    mode = ImprovementMode.ALL_STRICTLY_BETTER
    if "mode" in data:
        try:
            mode = ImprovementMode(data["mode"])
        except ValueError:
            raise InputError(f"mode: expected 'strict' or 'pareto', got {data['mode']!r}") from None
    return ScenarioFile(
        universe=universe,
        cost=_parse_cost(data["cost"]) if "cost" in data else None,
        reward=_parse_reward(data["reward"]) if "reward" in data else None,
        configuration=_parse_configuration(data["configuration"]) if "configuration" in data else None,
        mode=mode,
        schedule=_parse_schedule(data["schedule"]) if "schedule" in data else None,
        blueprint=_parse_blueprint(data["blueprint"]) if "blueprint" in data else None,
        dynamics=_parse_dynamics(data["dynamics"]) if "dynamics" in data else None,
    )


def load_scenario(path: str | Path) -> ScenarioFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read scenario {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"scenario {path} is not valid JSON: {exc}") from None
    return parse_scenario(data)


def _dump_cost(c: CostModel) -> dict:
    if isinstance(c, OperatorLinearCost):
        return {"kind": "operator_linear", "fixed": [fmt(v) for v in c.fixed], "marginal": [fmt(v) for v in c.marginal]}
    rows = sorted(c.table.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    return {"kind": "tabulated", "table": [{"owners": sorted(k), "cost": fmt(v)} for k, v in rows]}


def _dump_reward(r: RewardModel) -> dict:
    if isinstance(r, Linear):
        return {"kind": "linear", "gamma": fmt(r.gamma)}
    if isinstance(r, Capped):
        return {"kind": "capped", "gamma": fmt(r.gamma), "beta": fmt(r.beta)}
    if isinstance(r, PowerConvex):
        return {"kind": "power", "gamma": fmt(r.gamma), "exponent": r.exponent}
    return {"kind": "tabulated", "grid": [[fmt(m), fmt(v)] for m, v in r.grid]}


def _dump_splitting(s: SplittingStrategy) -> dict:
    if isinstance(s, OperatorMargin):
        return {"kind": "operator_margin", "operator": s.operator, "margin": fmt(s.margin)}
    return {"kind": "fair_share"}


def _dump_schedule(s: EmissionSchedule) -> dict:
    if isinstance(s, Constant):
        return {"kind": "constant", "rate": fmt(s.rate)}
    if isinstance(s, Halving):
        return {"kind": "halving", "initial": fmt(s.initial), "interval": s.interval}
    table = []
    for row in s.table:
        entry = {"start": row.start, "rate": fmt(row.rate)}
        if row.end is not None:
            entry["end"] = row.end
        table.append(entry)
    return {"kind": "custom", "table": table}


def dump_scenario(s: ScenarioFile) -> dict:
    """Inverse of :func:`parse_scenario`; rationals come out as ``"p/q"`` strings."""
    out: dict[str, Any] = {}
    if s.universe is not None:
        out["universe"] = [fmt(w) for w in s.universe.weights]
    if s.cost is not None:
        out["cost"] = _dump_cost(s.cost)
    if s.reward is not None:
        out["reward"] = _dump_reward(s.reward)
    if s.configuration is not None:
        out["configuration"] = {
            "pools": [sorted(p) for p in s.configuration.pools],
            "splitting": [_dump_splitting(x) for x in s.configuration.splitting],
        }
    out["mode"] = s.mode.value
    if s.schedule is not None:
        out["schedule"] = _dump_schedule(s.schedule)
    if s.blueprint is not None:
        b = s.blueprint
        out["blueprint"] = {
            "k": b.k,
            "epochs": b.epochs,
            "treasury_rate": fmt(b.treasury_rate),
            "fees_per_epoch": fmt(b.fees_per_epoch),
            "performance": {str(p): fmt(f) for p, f in b.performance.items()},
            "seed": b.seed,
        }
    if s.dynamics is not None:
        d = s.dynamics
        out["dynamics"] = {
            "max_iter": d.max_iter,
            "seed": d.seed,
            "moves": {"create": d.moves.create, "join": d.moves.join, "leave": d.moves.leave},
        }
    return out


def dumps_scenario(s: ScenarioFile) -> str:
    return json.dumps(dump_scenario(s), indent=2) + "\n"
