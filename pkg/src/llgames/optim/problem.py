"""Generic LP/MIP problem description and solver result containers."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

CONTINUOUS = "c"
BINARY = "b"

LE, EQ, GE = "<=", "=", ">="

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"
ITER_LIMIT = "IterLimit"
NODE_LIMIT = "NodeLimit"


@dataclass
class Constraint:
    coeffs: list[tuple[int, float]]
    rel: str
    rhs: float
    name: str = ""
    strict: bool = False


class OptProblem:
    """Sparse-rows LP/MIP description.

    Binary variables always carry bounds [0, 1].  Rows flagged ``strict`` are
    realized at solve time as ``lhs >= rhs + eps_strict`` (resp. ``<= rhs -
    eps_strict``); only inequality rows may be strict.
    """

    def __init__(self, name: str = "", sense: str = "min"):
        assert sense in ("min", "max")
        self.name = name
        self.sense = sense
        self.var_names: list[str] = []
        self.lb: list[float] = []
        self.ub: list[float] = []
        self.kind: list[str] = []
        self.obj: list[float] = []
        self.constraints: list[Constraint] = []

    def add_var(self, name: str = "", lb: float = 0.0, ub: float = math.inf,
                kind: str = CONTINUOUS, obj: float = 0.0) -> int:
        if kind == BINARY:
            lb, ub = 0.0, 1.0
        idx = len(self.var_names)
        self.var_names.append(name or f"x{idx}")
        self.lb.append(lb)
        self.ub.append(ub)
        self.kind.append(kind)
        self.obj.append(obj)
        return idx

    def add_constraint(self, coeffs, rel: str, rhs: float, name: str = "",
                       strict: bool = False):
        if isinstance(coeffs, dict):
            coeffs = sorted(coeffs.items())
        coeffs = [(v, c) for v, c in coeffs if c != 0.0]
        for v, _ in coeffs:
            assert 0 <= v < len(self.var_names), f"unknown variable {v}"
        assert rel in (LE, EQ, GE)
        assert not (strict and rel == EQ), "strict rows must be inequalities"
        self.constraints.append(Constraint(coeffs, rel, rhs,
                                           name or f"c{len(self.constraints)}",
                                           strict))

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    @property
    def num_binary(self) -> int:
        return sum(1 for k in self.kind if k == BINARY)

    def num_nonzeros(self) -> int:
        return sum(len(c.coeffs) for c in self.constraints)

    def objective_value(self, x: np.ndarray) -> float:
        return float(np.dot(self.obj, x))

    def feasibility_violation(self, x: np.ndarray) -> float:
        """Max constraint/bound violation of a candidate point."""
        worst = 0.0
        for j in range(self.num_vars):
            worst = max(worst, self.lb[j] - x[j], x[j] - self.ub[j])
        for c in self.constraints:
            lhs = sum(coef * x[v] for v, coef in c.coeffs)
            if c.rel == LE:
                worst = max(worst, lhs - c.rhs)
            elif c.rel == GE:
                worst = max(worst, c.rhs - lhs)
            else:
                worst = max(worst, abs(lhs - c.rhs))
        return worst


@dataclass
class OptSolution:
    status: str
    x: np.ndarray | None = None
    objective: float = math.nan
    dual_objective: float = math.nan
    duals: np.ndarray | None = None
    iterations: int = 0
    node_count: int = 0
    wall_time: float = 0.0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _term_str(coef: float, name: str, first: bool) -> str:
    sign = "-" if coef < 0 else ("" if first else "+")
    mag = float(abs(coef))
    return f"{sign} {mag!r} {name} "


def export_lp(problem: OptProblem) -> str:
    """Render in the standard human-readable LP text format."""
    out = [f"\\ {problem.name or 'problem'}"]
    out.append("Maximize" if problem.sense == "max" else "Minimize")
    terms = "".join(_term_str(c, problem.var_names[j], j == 0 or not any(
        problem.obj[:j])) for j, c in enumerate(problem.obj) if c != 0.0)
    out.append(f" obj: {terms.strip() or '0 ' + problem.var_names[0]}")
    out.append("Subject To")
    for c in problem.constraints:
        terms = ""
        for k, (v, coef) in enumerate(c.coeffs):
            terms += _term_str(coef, problem.var_names[v], k == 0)
        rel = c.rel if c.rel != EQ else "="
        strict = "  \\ strict" if c.strict else ""
        out.append(f" {c.name}: {terms.strip()} {rel} {float(c.rhs)!r}{strict}")
    out.append("Bounds")
    for j in range(problem.num_vars):
        lo, hi = float(problem.lb[j]), float(problem.ub[j])
        name = problem.var_names[j]
        if lo == -math.inf and hi == math.inf:
            out.append(f" {name} free")
        elif hi == math.inf:
            out.append(f" {name} >= {lo!r}")
        else:
            out.append(f" {lo!r} <= {name} <= {hi!r}")
    binaries = [problem.var_names[j] for j in range(problem.num_vars)
                if problem.kind[j] == BINARY]
    if binaries:
        out.append("Binaries")
        out.append(" " + " ".join(binaries))
    out.append("End")
    return "\n".join(out) + "\n"


_SECTIONS = {"maximize": "max", "minimize": "min", "subject": "st",
             "bounds": "bounds", "binaries": "bin", "binary": "bin",
             "end": "end"}
_TERM_RE = re.compile(r"([+-]?)\s*(\d+\.?\d*(?:e[+-]?\d+)?)?\s*([A-Za-z_][\w.\[\]()]*)")


def parse_lp(text: str) -> OptProblem:
    """Parse the subset of the LP format written by :func:`export_lp`."""
    problem = OptProblem(sense="min")
    var_idx: dict[str, int] = {}

    def var(name):
        if name not in var_idx:
            var_idx[name] = problem.add_var(name)
        return var_idx[name]

    section = None
    for raw in text.splitlines():
        strict = "\\ strict" in raw
        line = raw.split("\\", 1)[0].strip()
        if not line:
            continue
        word = line.split()[0].lower()
        if word in _SECTIONS:
            section = _SECTIONS[word]
            if section in ("max", "min"):
                problem.sense = section
            continue
        if section in ("max", "min"):
            body = line.split(":", 1)[-1]
            for sign, mag, name in _TERM_RE.findall(body):
                coef = float(mag or 1.0) * (-1 if sign == "-" else 1)
                problem.obj[var(name)] = coef
        elif section == "st":
            name, _, body = line.partition(":")
            m = re.search(r"(<=|>=|=)", body)
            if not m:
                raise ValueError(f"constraint without relation: {line!r}")
            lhs, rel, rhs = body[:m.start()], m.group(1), body[m.end():]
            coeffs = {}
            for sign, mag, vname in _TERM_RE.findall(lhs):
                coef = float(mag or 1.0) * (-1 if sign == "-" else 1)
                coeffs[var(vname)] = coeffs.get(var(vname), 0.0) + coef
            problem.add_constraint(coeffs, rel, float(rhs),
                                   name=name.strip(), strict=strict)
        elif section == "bounds":
            if line.endswith(" free"):
                j = var(line.rsplit(None, 1)[0])
                problem.lb[j], problem.ub[j] = -math.inf, math.inf
            else:
                parts = re.split(r"(<=|>=)", line)
                parts = [p.strip() for p in parts]
                if len(parts) == 5:  # lo <= x <= hi
                    j = var(parts[2])
                    problem.lb[j], problem.ub[j] = float(parts[0]), float(parts[4])
                elif len(parts) == 3 and parts[1] == ">=":
                    j = var(parts[0])
                    problem.lb[j] = float(parts[2])
                elif len(parts) == 3:
                    j = var(parts[0])
                    problem.ub[j] = float(parts[2])
        elif section == "bin":
            for name in line.split():
                j = var(name)
                problem.kind[j] = BINARY
                problem.lb[j], problem.ub[j] = 0.0, 1.0
    return problem
