"""The four end-to-end planners.

* plan_naive: complete search in the composite space of exact positions.
* plan_subgraph: complete search over configuration tuples, then a
  deterministic resolution of the abstract plan into concrete moves.
* plan_prioritised: per-robot sequential search; earlier robots replay
  their committed plans and are never replanned.
* plan_prioritised_subgraph: the prioritised scheme lifted to abstract
  states, with one joint resolution at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import search as searchlib
from .plans import Arrangement, PlanStep, induce
from .roadmap import reduce_graph
from .structures import build_structures, config_range, covers


@dataclass(frozen=True)
class AbstractPlan:
    """Alternating configuration tuples and subgraph-crossing steps."""
    gammas: tuple
    transitions: tuple

    def __post_init__(self):
        if len(self.gammas) != len(self.transitions) + 1:
            raise ValueError("abstract plan shape mismatch")


@dataclass
class PlanResult:
    steps: object  # list of PlanStep, or None on failure
    metrics: object  # SearchMetrics (for prioritised: last robot's search)
    abstract: object = None  # AbstractPlan for subgraph modes
    per_robot_metrics: object = None  # list, prioritised modes

    @property
    def solved(self):
        return self.steps is not None


def _gamma_key(gamma):
    return tuple(c.key() for c in gamma)


def _robot_subgraph(gamma, robot):
    for sid, cfg in enumerate(gamma):
        if robot in config_range(cfg):
            return sid
    raise ValueError(f"robot {robot} in no configuration")


# ---------------------------------------------------------------------------
# naive centralised planning


def _naive_expand(rm, active_robots=None):
    def expand(arr):
        robots = sorted(arr.robots()) if active_robots is None else active_robots
        for r in robots:
            u = arr.vertex_of(r)
            for v in rm.neighbors_out(u):
                if arr.robot_at(v) is None:
                    step = PlanStep(r, u, v)
                    yield step, arr.remove(r).place(r, v)
    return expand


def plan_naive(rm, start, goal, strategy="bfs", **limits):
    """Complete search over exact arrangements (one robot moves per step)."""
    heuristic = None
    if strategy == "best-first":
        table = searchlib.shortest_path_table(rm)
        heuristic = searchlib.sum_distance_heuristic(table, goal)
    actions, _, metrics = searchlib.search(
        start,
        _naive_expand(rm),
        lambda a: a == goal,
        heuristic=heuristic,
        strategy=strategy,
        **limits,
    )
    return PlanResult(steps=actions, metrics=metrics)


# ---------------------------------------------------------------------------
# subgraph abstraction planning


def _abstract_expand(rm, partition, structures, reduced, robots):
    """Successors of a configuration tuple: all legal subgraph crossings.

    Choice order is fixed: robots by id, destination subgraphs by id,
    connecting edges by (u, v), resulting configurations by canonical key.
    """
    def expand(gamma):
        for r in robots:
            sx = _robot_subgraph(gamma, r)
            for sy in reduced.neighbors(sx):
                for u, v in reduced.connecting_edges[(sx, sy)]:
                    exits = structures[sx].exit(gamma[sx], r, u)
                    if not exits:
                        continue
                    (exit_cfg,) = exits
                    enters = structures[sy].enter(gamma[sy], r, v)
                    for enter_cfg in sorted(enters, key=lambda c: c.key()):
                        new = list(gamma)
                        new[sx] = exit_cfg
                        new[sy] = enter_cfg
                        step = PlanStep(r, u, v)
                        new = tuple(new)
                        yield (step, new), new
    return expand


def gamma_of(structures, partition, arr):
    return tuple(
        st.config_of(induce(arr, partition[sid])) for sid, st in enumerate(structures)
    )


def _abstract_goal_test(structures, partition, goal):
    goals = [induce(goal, partition[sid]) for sid in range(len(structures))]

    def is_goal(gamma):
        return all(
            st.can_terminate(cfg, goals[sid])
            for sid, (st, cfg) in enumerate(zip(structures, gamma))
        )

    return is_goal


def _abstract_heuristic(rm, partition, goal):
    table = searchlib.shortest_path_table(rm)
    h = searchlib.subgraph_max_heuristic(table, partition, goal)

    def value(gamma):
        assignment = {}
        for sid, cfg in enumerate(gamma):
            for r in config_range(cfg):
                assignment[r] = sid
        return h(assignment)

    return value


def plan_subgraph(rm, partition, start, goal, strategy="bfs", **limits):
    """Abstract search over configuration tuples plus deterministic
    resolution.  Complete with respect to the composite space."""
    structures = build_structures(rm, partition)
    reduced = reduce_graph(rm, partition)
    robots = sorted(start.robots())
    gamma0 = gamma_of(structures, partition, start)
    heuristic = None
    if strategy == "best-first":
        heuristic = _abstract_heuristic(rm, partition, goal)
    actions, _, metrics = searchlib.search(
        gamma0,
        _abstract_expand(rm, partition, structures, reduced, robots),
        _abstract_goal_test(structures, partition, goal),
        key=_gamma_key,
        heuristic=heuristic,
        strategy=strategy,
        **limits,
    )
    if actions is None:
        return PlanResult(steps=None, metrics=metrics)
    gammas = [gamma0] + [g for _, g in actions]
    abstract = AbstractPlan(tuple(gammas), tuple(s for s, _ in actions))
    steps = resolve(rm, partition, abstract, start, goal)
    return PlanResult(steps=steps, metrics=metrics, abstract=abstract)


def resolve(rm, partition, abstract, start, goal):
    """Expand an abstract plan into concrete moves without search.

    For every transition the source subgraph walks the robot to the
    crossing vertex, the destination subgraph clears the entry vertex,
    the robot crosses, and after the last transition every subgraph
    moves its occupants to their final positions.
    """
    structures = build_structures(rm, partition)
    arrs = [induce(start, partition[sid]) for sid in range(len(structures))]
    goals = [induce(goal, partition[sid]) for sid in range(len(structures))]
    steps = []
    transitions = abstract.transitions
    for t, step in enumerate(transitions):
        r, u, v = step
        sx = partition.subgraph_of(u)
        sy = partition.subgraph_of(v)
        exit_steps, arr_x = structures[sx].resolve_exit(
            arrs[sx], r, u, abstract.gammas[t + 1][sx]
        )
        next_action = _next_action_on(transitions, t + 1, partition, sy, goals[sy])
        enter_steps, arr_y = structures[sy].resolve_enter(
            arrs[sy], r, v, abstract.gammas[t + 1][sy], next_action
        )
        steps.extend(exit_steps)
        steps.extend(enter_steps)
        steps.append(step)
        arrs[sx] = arr_x.remove(r)
        arrs[sy] = arr_y.place(r, v)
    for sid, st in enumerate(structures):
        steps.extend(st.resolve_terminate(arrs[sid], goals[sid]))
    return steps


def _next_action_on(transitions, start_index, partition, sid, goal_arr):
    """The next abstract action touching subgraph `sid` at or after
    start_index: an exit from it, or termination in place."""
    for step in transitions[start_index:]:
        if partition.subgraph_of(step.frm) == sid:
            return ("exit", step.robot, step.frm)
        if partition.subgraph_of(step.to) == sid:
            return None  # an entry happens first; nothing to pre-arrange
    return ("terminate", goal_arr)


def abstract_from_concrete(rm, partition, start, steps):
    """Project a concrete plan onto its subgraph transitions.

    Returns an AbstractPlan built from the configuration tuples observed
    at each crossing step.  Used to check that concrete solvability
    implies abstract solvability.
    """
    structures = build_structures(rm, partition)
    arr = start
    gammas = [gamma_of(structures, partition, arr)]
    transitions = []
    for step in steps:
        arr = arr.remove(step.robot).place(step.robot, step.to)
        if partition.subgraph_of(step.frm) != partition.subgraph_of(step.to):
            transitions.append(step)
            gammas.append(gamma_of(structures, partition, arr))
    return AbstractPlan(tuple(gammas), tuple(transitions))


def check_abstract_plan(rm, partition, abstract):
    """Verify every transition of an abstract plan against the structure
    operators; returns None or an error string."""
    structures = build_structures(rm, partition)
    for t, step in enumerate(abstract.transitions):
        r, u, v = step
        sx = partition.subgraph_of(u)
        sy = partition.subgraph_of(v)
        before, after = abstract.gammas[t], abstract.gammas[t + 1]
        exits = structures[sx].exit(before[sx], r, u)
        if not exits or not any(covers(c, after[sx]) or covers(after[sx], c) for c in exits):
            return f"transition {t}: exit of r{r} via {u} does not yield source config"
        enters = structures[sy].enter(before[sy], r, v)
        if not any(covers(c, after[sy]) or covers(after[sy], c) for c in enters):
            return f"transition {t}: enter of r{r} at {v} does not yield target config"
        for sid in range(len(structures)):
            if sid not in (sx, sy) and before[sid] != after[sid]:
                return f"transition {t}: unrelated subgraph {sid} changed"
    return None


# ---------------------------------------------------------------------------
# prioritised planning


def plan_prioritised(rm, start, goal, priority=None, strategy="bfs", **limits):
    """Sequential per-robot planning with committed-plan replay.

    Robot i is planned with robots 1..i-1 replaying their committed
    plans step by step; a replayed step whose destination is occupied
    fails that branch.  No backtracking across robots.
    """
    if priority is None:
        priority = sorted(start.robots())
    if not priority:
        return PlanResult(
            steps=[],
            metrics=searchlib.SearchMetrics(outcome=searchlib.SOLVED),
            per_robot_metrics=[],
        )
    committed = []  # per-robot own plans, in priority order
    overall = []
    per_metrics = []
    table = None
    for i, robot in enumerate(priority):
        active = priority[: i + 1]
        sub_start = Arrangement({start.vertex_of(r): r for r in active})
        sub_goal = Arrangement({goal.vertex_of(r): r for r in active})
        heuristic = None
        if strategy == "best-first":
            if table is None:
                table = searchlib.shortest_path_table(rm)
            h = searchlib.sum_distance_heuristic(table, sub_goal)
            heuristic = lambda state: h(state[0])

        def expand(state):
            arr, indices = state
            for j, plan in enumerate(committed):
                if indices[j] >= len(plan):
                    continue
                step = plan[indices[j]]
                if arr.robot_at(step.to) is None:
                    nxt = indices[:j] + (indices[j] + 1,) + indices[j + 1:]
                    yield step, (arr.remove(step.robot).place(step.robot, step.to), nxt)
            u = arr.vertex_of(robot)
            for v in rm.neighbors_out(u):
                if arr.robot_at(v) is None:
                    step = PlanStep(robot, u, v)
                    yield step, (arr.remove(robot).place(robot, v), indices)

        actions, _, metrics = searchlib.search(
            (sub_start, (0,) * len(committed)),
            expand,
            lambda state: state[0] == sub_goal,
            key=lambda state: (state[0], state[1]),
            heuristic=heuristic,
            strategy=strategy,
            **limits,
        )
        per_metrics.append(metrics)
        if actions is None:
            return PlanResult(steps=None, metrics=metrics, per_robot_metrics=per_metrics)
        committed.append([s for s in actions if s.robot == robot])
        overall = actions  # the cut: this joint plan is now fixed
    return PlanResult(steps=overall, metrics=per_metrics[-1], per_robot_metrics=per_metrics)


def plan_prioritised_subgraph(
    rm, partition, start, goal, priority=None, strategy="bfs", **limits
):
    """Prioritised planning over abstract states.

    Each robot searches for an abstract plan while earlier robots replay
    their committed transitions (branching over the entry configurations
    each replayed crossing allows).  Resolution happens once, jointly,
    from the last robot's full abstract solution.
    """
    if priority is None:
        priority = sorted(start.robots())
    if not priority:
        return PlanResult(
            steps=[],
            metrics=searchlib.SearchMetrics(outcome=searchlib.SOLVED),
            per_robot_metrics=[],
        )
    structures = build_structures(rm, partition)
    reduced = reduce_graph(rm, partition)
    committed = []  # per-robot transition sequences
    per_metrics = []
    final_actions = []
    gamma0_final = None
    for i, robot in enumerate(priority):
        active = priority[: i + 1]
        sub_start = Arrangement({start.vertex_of(r): r for r in active})
        sub_goal = Arrangement({goal.vertex_of(r): r for r in active})
        gamma0 = gamma_of(structures, partition, sub_start)
        goal_test = _abstract_goal_test(structures, partition, sub_goal)
        heuristic = None
        if strategy == "best-first":
            h = _abstract_heuristic(rm, partition, sub_goal)
            heuristic = lambda state: h(state[0])

        def expand(state):
            gamma, indices = state
            for j, plan in enumerate(committed):
                if indices[j] >= len(plan):
                    continue
                step = plan[indices[j]]
                r, u, v = step
                sx = partition.subgraph_of(u)
                sy = partition.subgraph_of(v)
                exits = structures[sx].exit(gamma[sx], r, u)
                if not exits:
                    continue
                (exit_cfg,) = exits
                enters = structures[sy].enter(gamma[sy], r, v)
                nxt = indices[:j] + (indices[j] + 1,) + indices[j + 1:]
                for enter_cfg in sorted(enters, key=lambda c: c.key()):
                    new = list(gamma)
                    new[sx] = exit_cfg
                    new[sy] = enter_cfg
                    new = tuple(new)
                    yield (step, new), (new, nxt)
            sx = _robot_subgraph(gamma, robot)
            for sy in reduced.neighbors(sx):
                for u, v in reduced.connecting_edges[(sx, sy)]:
                    exits = structures[sx].exit(gamma[sx], robot, u)
                    if not exits:
                        continue
                    (exit_cfg,) = exits
                    enters = structures[sy].enter(gamma[sy], robot, v)
                    for enter_cfg in sorted(enters, key=lambda c: c.key()):
                        new = list(gamma)
                        new[sx] = exit_cfg
                        new[sy] = enter_cfg
                        new = tuple(new)
                        step = PlanStep(robot, u, v)
                        yield (step, new), (new, indices)

        actions, _, metrics = searchlib.search(
            (gamma0, (0,) * len(committed)),
            expand,
            lambda state: goal_test(state[0]),
            key=lambda state: (_gamma_key(state[0]), state[1]),
            heuristic=heuristic,
            strategy=strategy,
            **limits,
        )
        per_metrics.append(metrics)
        if actions is None:
            return PlanResult(steps=None, metrics=metrics, per_robot_metrics=per_metrics)
        committed.append([s for s, _ in actions if s.robot == robot])
        final_actions = actions
        gamma0_final = gamma0
    gammas = [gamma0_final] + [g for _, g in final_actions]
    abstract = AbstractPlan(tuple(gammas), tuple(s for s, _ in final_actions))
    steps = resolve(rm, partition, abstract, start, goal)
    return PlanResult(
        steps=steps,
        metrics=per_metrics[-1],
        abstract=abstract,
        per_robot_metrics=per_metrics,
    )
