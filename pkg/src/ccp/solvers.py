"""Uniform front door over the two cone solvers.

The walk route establishes general position first and translates the
answer back to the original instance; the local-search route runs on the
instance as given.  Both return a certified choice plus the stats the
reports want.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .instance import (
    CcpInstance,
    ColorfulChoice,
    map_solution_back,
    perturb_to_general_position,
)
from .localsearch import run_local_search
from .paramspace import derive_constants
from .walk import DEFAULT_BUDGET, run_standard_walk

METHODS = ("ppad", "pls")


@dataclass(frozen=True)
class SolveOutcome:
    method: str
    choice: ColorfulChoice
    steps: int
    details: dict = field(default_factory=dict)


def solve_instance(
    inst: CcpInstance,
    method: str = "ppad",
    c_exponent: int = 12,
    budget: int = DEFAULT_BUDGET,
    best: bool = False,
    trace: Optional[Callable[[dict], None]] = None,
) -> SolveOutcome:
    if method == "pls":
        res = run_local_search(
            inst, budget=budget, best=best, trace=trace
        )
        return SolveOutcome(
            method="pls",
            choice=res.choice,
            steps=res.steps,
            details={"start": list(res.start)},
        )
    if method == "ppad":
        ground, pmap = perturb_to_general_position(inst)
        consts = derive_constants(ground, c_exponent=c_exponent)
        walk = run_standard_walk(ground, consts, budget=budget, trace=trace)
        mapped = map_solution_back(pmap, walk.choice)
        return SolveOutcome(
            method="ppad",
            choice=mapped,
            steps=walk.steps,
            details={
                "fast_path": pmap.fast_path,
                "inverted": walk.inverted,
                "nodes_visited": walk.nodes_visited,
                "ground_basis": [j + 1 for j in walk.basis],
                "c_exponent": c_exponent,
            },
        )
    raise ValueError("unknown method %r; expected one of %s" % (method, METHODS))
