from typing import List, Optional

from ortools.sat.python import cp_model

from models.hypergraph import Hypergraph
from models.limits import EngineLimits
from utils.deadline import Deadline
from utils.errors import CapExceededError


def create_coloring_model(hypergraph: Hypergraph, m: int):
    """
    Boolean model of an m-coloring: x[v][c] = 1 means vertex v takes color c + 1.

    Every vertex takes exactly one color and no edge may be entirely colored c, for
    every c. The highest-degree vertex is pinned to the first color.
    """
    model = cp_model.CpModel()
    x = [[model.NewBoolVar(f"x[{v},{c}]") for c in range(m)] for v in range(hypergraph.vertex_count)]
    for v in range(hypergraph.vertex_count):
        model.AddExactlyOne(x[v])
    for edge in hypergraph.edges:
        for c in range(m):
            model.AddBoolOr([x[v][c].Not() for v in edge])
    if hypergraph.vertex_count:
        degrees = hypergraph.degrees()
        anchor = max(range(hypergraph.vertex_count), key=lambda v: (degrees[v], -v))
        model.Add(x[anchor][0] == 1)
    return model, x


def find_coloring_cpsat(hypergraph: Hypergraph, m: int, limits: EngineLimits,
                        deadline: Optional[Deadline] = None) -> Optional[List[int]]:
    """
    Solve the coloring model with CP-SAT.

    Returns:
        Optional[List[int]]: Colors 1..m per vertex, or None when CP-SAT proves infeasibility

    Raises:
        CapExceededError: CP-SAT stopped on the time budget without an answer
    """
    model, x = create_coloring_model(hypergraph, m)
    solver = cp_model.CpSolver()
    solver.parameters.num_workers = limits.threads
    solver.parameters.random_seed = limits.cpsat_seed
    remaining = deadline.remaining() if deadline is not None else None
    if remaining is not None:
        solver.parameters.max_time_in_seconds = remaining

    status = solver.Solve(model)
    if status in (cp_model.OPTIMAL, cp_model.FEASIBLE):
        return [
            next(c + 1 for c in range(m) if solver.Value(x[v][c]))
            for v in range(hypergraph.vertex_count)
        ]
    if status == cp_model.INFEASIBLE:
        return None
    raise CapExceededError("time_budget_seconds", limits.time_budget_seconds,
                           f"CP-SAT returned {solver.StatusName(status)} for m={m}")
