"""Per-structure configuration calculus.

Each subgraph kind implements six methods behind one interface:

* ``config_of``      canonical configuration of an arrangement
* ``enter`` / ``exit``  the set-valued entry/removal operators
* ``can_terminate``  can the occupants reach the goal placement in place
* ``resolve_enter`` / ``resolve_exit`` / ``resolve_terminate``
                     deterministic intra-subgraph plan construction

Configurations are immutable values.  For chains (stacks and halls) a
configuration is the robot order; for cliques a robot set, with full
cliques locked; for rings a cyclic order, locked when full.  Locked
cliques created by an entry use a least-commitment form recording only
the locking robot and its vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .plans import Arrangement, PlanStep
from .roadmap import CLIQUE, HALL, RING, SINGLETON, STACK


class StructureError(ValueError):
    """Contract violation in a resolve method (indicates a planner bug)."""


# ---------------------------------------------------------------------------
# configuration values


@dataclass(frozen=True)
class ChainConfig:
    """Robot order along a stack (head-first) or hall (canonical end first)."""
    order: tuple

    def key(self):
        return ("chain", self.order)

    def __str__(self):
        return "chain:[" + ",".join(f"r{r}" for r in self.order) + "]"


@dataclass(frozen=True)
class CliqueConfig:
    """Unlocked clique: just the set of occupants."""
    robots: frozenset

    def key(self):
        return ("clique", tuple(sorted(self.robots)))

    def __str__(self):
        return "clique:{" + ",".join(f"r{r}" for r in sorted(self.robots)) + "}"


@dataclass(frozen=True)
class CliqueLocked:
    """Full clique with every position pinned (sorted (vertex, robot) pairs)."""
    placement: tuple

    def key(self):
        return ("clique-locked", self.placement)

    def __str__(self):
        inner = ",".join(f"{v}:r{r}" for v, r in self.placement)
        return "clique-locked:{" + inner + "}"


@dataclass(frozen=True)
class CliqueLockedLC:
    """Full clique under least commitment: only the locking robot's
    position is pinned; the others may be in any permutation."""
    robots: frozenset
    lock_robot: int
    lock_vertex: int

    def key(self):
        return ("clique-lc", tuple(sorted(self.robots)), self.lock_robot, self.lock_vertex)

    def __str__(self):
        inner = ",".join(f"r{r}" for r in sorted(self.robots))
        return f"clique-lc:{{{inner}}}@r{self.lock_robot}:{self.lock_vertex}"


@dataclass(frozen=True)
class RingConfig:
    """Unlocked ring: cyclic robot order, rotated so the smallest robot
    id comes first."""
    order: tuple

    def key(self):
        return ("ring", self.order)

    def __str__(self):
        return "ring:(" + ",".join(f"r{r}" for r in self.order) + ")"


@dataclass(frozen=True)
class RingLocked:
    """Full ring: robots listed by member-vertex index."""
    placement: tuple

    def key(self):
        return ("ring-locked", self.placement)

    def __str__(self):
        return "ring-locked:(" + ",".join(f"r{r}" for r in self.placement) + ")"


@dataclass(frozen=True)
class SingletonConfig:
    robot: object  # robot id or None

    def key(self):
        return ("singleton", -1 if self.robot is None else self.robot)

    def __str__(self):
        return "singleton:[]" if self.robot is None else f"singleton:[r{self.robot}]"


def config_range(cfg):
    """The robot set of a configuration."""
    if isinstance(cfg, (ChainConfig,)):
        return frozenset(cfg.order)
    if isinstance(cfg, CliqueConfig):
        return cfg.robots
    if isinstance(cfg, CliqueLocked):
        return frozenset(r for _, r in cfg.placement)
    if isinstance(cfg, CliqueLockedLC):
        return cfg.robots
    if isinstance(cfg, RingConfig):
        return frozenset(cfg.order)
    if isinstance(cfg, RingLocked):
        return frozenset(cfg.placement)
    if isinstance(cfg, SingletonConfig):
        return frozenset() if cfg.robot is None else frozenset((cfg.robot,))
    raise TypeError(f"not a configuration: {cfg!r}")


def covers(general, exact):
    """True iff configuration `general` subsumes `exact`.

    Equal configurations cover each other; a least-commitment locked
    clique additionally covers every pinned full-clique placement with
    the same robots and the locking robot on its vertex.
    """
    if general == exact:
        return True
    if isinstance(general, CliqueLockedLC) and isinstance(exact, CliqueLocked):
        placement = dict(exact.placement)
        return (
            config_range(general) == config_range(exact)
            and placement.get(general.lock_vertex) == general.lock_robot
        )
    return False


def _canonical_rotation(seq):
    """Rotate a cyclic sequence so its smallest element is first."""
    if not seq:
        return tuple(seq)
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


# ---------------------------------------------------------------------------
# structures


class Structure:
    """Interface shared by all subgraph kinds."""

    def __init__(self, sub, rm):
        self.sub = sub
        self.rm = rm
        self.n = len(sub.vertices)

    def _check_inside(self, arr):
        for v, _ in arr.items():
            if v not in self.sub.member_set():
                raise StructureError(f"vertex {v} outside subgraph {self.sub.id}")

    def config_of(self, arr):
        raise NotImplementedError

    def enter(self, cfg, robot, at):
        raise NotImplementedError

    def exit(self, cfg, robot, via):
        raise NotImplementedError

    def can_terminate(self, cfg, goal):
        raise NotImplementedError

    def resolve_enter(self, arr, robot, at, target, next_action=None):
        raise NotImplementedError

    def resolve_exit(self, arr, robot, via, target):
        raise NotImplementedError

    def resolve_terminate(self, arr, goal):
        raise NotImplementedError


class ChainStructure(Structure):
    """Shared machinery for stacks and halls.

    Vertices are indexed 1..n along the canonical order (head = 1 for a
    stack).  The raw entry/removal operators obey the same insertion and
    exit bounds for both kinds; a stack simply only ever gets used at
    index 1 when embedded in a map.
    """

    def __init__(self, sub, rm):
        super().__init__(sub, rm)
        self._index = {v: i + 1 for i, v in enumerate(sub.vertices)}

    def _pos(self, v):
        if v not in self._index:
            raise StructureError(f"vertex {v} not in subgraph {self.sub.id}")
        return self._index[v]

    def _vertex(self, pos):
        return self.sub.vertices[pos - 1]

    def config_of(self, arr):
        self._check_inside(arr)
        occupied = sorted((self._pos(v), r) for v, r in arr.items())
        return ChainConfig(tuple(r for _, r in occupied))

    def enter(self, cfg, robot, at):
        order = cfg.order
        k = len(order)
        if k >= self.n or robot in order:
            return ()
        i = self._pos(at)
        lo = max(0, k - (self.n - i))
        hi = min(i - 1, k)
        return tuple(
            ChainConfig(order[:j] + (robot,) + order[j:]) for j in range(lo, hi + 1)
        )

    def exit(self, cfg, robot, via):
        order = cfg.order
        if robot not in order:
            return ()
        j = order.index(robot) + 1  # 1-based order index
        i = self._pos(via)
        k = len(order)
        if j <= i <= self.n - (k - j):
            return (ChainConfig(tuple(r for r in order if r != robot)),)
        return ()

    def can_terminate(self, cfg, goal):
        return self.config_of(goal) == cfg

    # -- resolution ---------------------------------------------------

    def _shuffle(self, arr, targets):
        """Move robots to target positions preserving order.

        targets maps robot -> 1-based position; positions must be
        monotone in the current robot order.  Right-movers go first,
        processed rightmost-first, then left-movers leftmost-first.
        """
        pos = {r: self._pos(v) for v, r in arr.items()}
        steps = []

        def walk(r, dest):
            cur = pos[r]
            step = 1 if dest > cur else -1
            while cur != dest:
                steps.append(PlanStep(r, self._vertex(cur), self._vertex(cur + step)))
                cur += step
            pos[r] = dest

        order = [r for _, r in sorted((p, r) for r, p in pos.items())]
        for r in reversed(order):
            if targets[r] > pos[r]:
                walk(r, targets[r])
        for r in order:
            if targets[r] < pos[r]:
                walk(r, targets[r])
        final = Arrangement({self._vertex(p): r for r, p in pos.items()})
        return steps, final

    def resolve_exit(self, arr, robot, via, target):
        self._check_inside(arr)
        cfg = self.config_of(arr)
        if target not in self.exit(cfg, robot, via):
            raise StructureError("exit target not reachable")
        order = cfg.order
        j = order.index(robot) + 1
        i = self._pos(via)
        k = len(order)
        # pack the j-1 robots ahead just left of the exit, the rest just right
        targets = {}
        for idx, r in enumerate(order, start=1):
            if idx < j:
                targets[r] = i - (j - idx)
            elif idx == j:
                targets[r] = i
            else:
                targets[r] = i + (idx - j)
        return self._shuffle(arr, targets)

    def resolve_enter(self, arr, robot, at, target, next_action=None):
        self._check_inside(arr)
        cfg = self.config_of(arr)
        if target not in self.enter(cfg, robot, at):
            raise StructureError("enter target not reachable")
        order = cfg.order
        i = self._pos(at)
        j = target.order.index(robot)  # robots placed before the entrant
        targets = {}
        for idx, r in enumerate(order):
            if idx < j:
                targets[r] = i - (j - idx)
            else:
                targets[r] = i + (idx - j) + 1
        return self._shuffle(arr, targets)

    def resolve_terminate(self, arr, goal):
        self._check_inside(arr)
        if not self.can_terminate(self.config_of(arr), goal):
            raise StructureError("terminate goal not reachable")
        targets = {r: self._pos(v) for v, r in goal.items()}
        steps, _ = self._shuffle(arr, targets)
        return steps


class StackStructure(ChainStructure):
    """A dead-end chain; the head is vertex index 1."""


class HallStructure(ChainStructure):
    """A chain with entrances anywhere along its length."""


class CliqueStructure(Structure):
    def config_of(self, arr):
        self._check_inside(arr)
        if len(arr) == self.n:
            return CliqueLocked(tuple(sorted(arr.items())))
        return CliqueConfig(frozenset(r for _, r in arr.items()))

    def enter(self, cfg, robot, at):
        occupants = config_range(cfg)
        if len(occupants) >= self.n or robot in occupants:
            return ()
        if isinstance(cfg, (CliqueLocked, CliqueLockedLC)):
            return ()  # full cliques cannot be entered
        if at not in self.sub.member_set():
            raise StructureError(f"vertex {at} not in subgraph {self.sub.id}")
        if len(occupants) + 1 == self.n:
            return (CliqueLockedLC(occupants | {robot}, robot, at),)
        return (CliqueConfig(occupants | {robot}),)

    def exit(self, cfg, robot, via):
        if via not in self.sub.member_set():
            raise StructureError(f"vertex {via} not in subgraph {self.sub.id}")
        occupants = config_range(cfg)
        if robot not in occupants:
            return ()
        remaining = CliqueConfig(occupants - {robot})
        if isinstance(cfg, CliqueConfig):
            return (remaining,)
        if isinstance(cfg, CliqueLocked):
            placement = dict(cfg.placement)
            return (remaining,) if placement.get(via) == robot else ()
        if isinstance(cfg, CliqueLockedLC):
            if robot == cfg.lock_robot:
                return (remaining,) if via == cfg.lock_vertex else ()
            return (remaining,) if via != cfg.lock_vertex else ()
        raise TypeError(cfg)

    def can_terminate(self, cfg, goal):
        goal_robots = frozenset(r for _, r in goal.items())
        if config_range(cfg) != goal_robots:
            return False
        if isinstance(cfg, CliqueConfig):
            return True
        if isinstance(cfg, CliqueLocked):
            return cfg.placement == tuple(sorted(goal.items()))
        if isinstance(cfg, CliqueLockedLC):
            return goal.vertex_of(cfg.lock_robot) == cfg.lock_vertex
        raise TypeError(cfg)

    # -- resolution ---------------------------------------------------

    def _rearrange(self, arr, target):
        """Move robots to a full target placement (robot -> vertex).

        Standard cycle-following with any free vertex as buffer; the
        clique is totally connected so every hop is a single step.
        """
        pos = {r: v for v, r in arr.items()}
        steps = []
        members = set(self.sub.member_set())
        while True:
            misplaced = sorted(r for r in pos if pos[r] != target[r])
            if not misplaced:
                break
            free = members - set(pos.values())
            movable = [r for r in misplaced if target[r] in free]
            if movable:
                r = min(movable, key=lambda r: target[r])
            else:
                # all misplaced targets are occupied: break a cycle via a buffer
                r = misplaced[0]
                buffer = min(free)
                steps.append(PlanStep(r, pos[r], buffer))
                pos[r] = buffer
                continue
            steps.append(PlanStep(r, pos[r], target[r]))
            pos[r] = target[r]
        return steps, Arrangement({v: r for r, v in pos.items()})

    def _vacate(self, arr, at):
        """Move the occupant of `at` (if any) to the smallest free vertex."""
        occupant = arr.robot_at(at)
        if occupant is None:
            return [], arr
        free = sorted(self.sub.member_set() - {v for v, _ in arr.items()})
        if not free:
            raise StructureError("cannot vacate a full clique")
        dest = free[0]
        step = PlanStep(occupant, at, dest)
        return [step], arr.remove(occupant).place(occupant, dest)

    def resolve_enter(self, arr, robot, at, target, next_action=None):
        self._check_inside(arr)
        cfg = self.config_of(arr)
        if not any(covers(t, target) or covers(target, t) for t in self.enter(cfg, robot, at)):
            raise StructureError("enter target not reachable")
        locking = len(arr) + 1 == self.n
        if not locking:
            return self._vacate(arr, at)

        # the entry will lock the clique: commit the other robots now,
        # guided by the next action that will involve this clique
        if next_action is not None and next_action[0] == "exit":
            _, exit_robot, exit_vertex = next_action
            if exit_robot == robot:
                return self._vacate(arr, at)
            placement = {r: v for v, r in arr.items()}
            desired = {exit_robot: exit_vertex}
            taken = {exit_vertex, at}
            for r in sorted(placement, key=lambda r: placement[r]):
                if r == exit_robot:
                    continue
                if placement[r] not in taken:
                    desired[r] = placement[r]
                    taken.add(placement[r])
            rest = sorted(self.sub.member_set() - set(desired.values()) - {at})
            for r in sorted(set(placement) - set(desired)):
                desired[r] = rest.pop(0)
            return self._rearrange(arr, desired)
        if next_action is not None and next_action[0] == "terminate":
            goal = next_action[1]
            desired = {r: goal.vertex_of(r) for r in arr.robots()}
            return self._rearrange(arr, desired)
        return self._vacate(arr, at)

    def resolve_exit(self, arr, robot, via, target):
        self._check_inside(arr)
        if robot not in arr.robots():
            raise StructureError(f"robot {robot} not in subgraph {self.sub.id}")
        if len(arr) == self.n:
            if arr.robot_at(via) != robot:
                raise StructureError("locked clique exit without prior arrangement")
            return [], arr
        steps = []
        cur = arr
        if cur.robot_at(via) not in (robot, None):
            vac, cur = self._vacate(cur, via)
            steps.extend(vac)
        if cur.vertex_of(robot) != via:
            steps.append(PlanStep(robot, cur.vertex_of(robot), via))
            cur = cur.remove(robot).place(robot, via)
        return steps, cur

    def resolve_terminate(self, arr, goal):
        self._check_inside(arr)
        if not self.can_terminate(self.config_of(arr), goal):
            raise StructureError("terminate goal not reachable")
        if len(arr) == self.n:
            if arr != goal:
                raise StructureError("locked clique not pre-arranged for terminate")
            return []
        desired = {r: goal.vertex_of(r) for r in arr.robots()}
        steps, _ = self._rearrange(arr, desired)
        return steps


class RingStructure(Structure):
    def __init__(self, sub, rm):
        super().__init__(sub, rm)
        self._index = {v: i for i, v in enumerate(sub.vertices)}

    def _idx(self, v):
        if v not in self._index:
            raise StructureError(f"vertex {v} not in subgraph {self.sub.id}")
        return self._index[v]

    def _cyclic_order(self, arr):
        """Robots read around the ring in member order, as a cyclic tuple."""
        return tuple(
            arr.robot_at(v) for v in self.sub.vertices if arr.robot_at(v) is not None
        )

    def config_of(self, arr):
        self._check_inside(arr)
        if len(arr) == self.n:
            return RingLocked(tuple(arr.robot_at(v) for v in self.sub.vertices))
        return RingConfig(_canonical_rotation(self._cyclic_order(arr)))

    def enter(self, cfg, robot, at):
        occupants = config_range(cfg)
        if robot in occupants:
            return ()
        if isinstance(cfg, RingLocked):
            return ()
        self._idx(at)
        k = len(cfg.order)
        if k >= self.n:
            return ()
        if k == 0:
            if self.n == 1:
                return (RingLocked((robot,)),)
            return (RingConfig((robot,)),)
        results = []
        if k + 1 == self.n:
            # locking entry: the entrant's vertex plus the cyclic order
            # pins every position
            i = self._idx(at)
            for gap in range(k):
                rotated = cfg.order[gap:] + cfg.order[:gap]  # successor first
                placement = [None] * self.n
                placement[i] = robot
                for off, r in enumerate(rotated, start=1):
                    placement[(i + off) % self.n] = r
                results.append(RingLocked(tuple(placement)))
        else:
            for gap in range(max(k, 1)):
                new_order = cfg.order[:gap] + (robot,) + cfg.order[gap:]
                results.append(RingConfig(_canonical_rotation(new_order)))
        return tuple(dict.fromkeys(results))

    def exit(self, cfg, robot, via):
        self._idx(via)
        occupants = config_range(cfg)
        if robot not in occupants:
            return ()
        if isinstance(cfg, RingLocked):
            if cfg.placement[self._idx(via)] != robot:
                return ()
            order = tuple(r for r in cfg.placement if r != robot)
            return (RingConfig(_canonical_rotation(order)),)
        order = tuple(r for r in cfg.order if r != robot)
        return (RingConfig(_canonical_rotation(order)),)

    def can_terminate(self, cfg, goal):
        goal_robots = frozenset(r for _, r in goal.items())
        if config_range(cfg) != goal_robots:
            return False
        if isinstance(cfg, RingLocked):
            return self.config_of(goal) == cfg
        return _canonical_rotation(self._cyclic_order(goal)) == cfg.order

    # -- resolution ---------------------------------------------------

    def _rotate_once(self, pos, direction, steps):
        """Advance every robot by one vertex in the given direction."""
        occupied = set(pos.values())
        free = min(i for i in range(self.n) if i not in occupied)
        by_vertex = {v: r for r, v in pos.items()}
        cur = free
        for _ in range(self.n - 1):
            prev = (cur - direction) % self.n
            if prev in by_vertex:
                r = by_vertex.pop(prev)
                steps.append(
                    PlanStep(r, self.sub.vertices[prev], self.sub.vertices[cur])
                )
                by_vertex[cur] = r
                pos[r] = cur
            cur = prev

    def _shuffle(self, arr, target):
        """Move robots (k < n) to exact target indices, preserving the
        cyclic order: rotate an anchor robot home, then shuffle the rest
        as a chain on the remaining vertices."""
        pos = {r: self._idx(v) for v, r in arr.items()}
        steps = []
        if not pos:
            return steps, arr
        anchor = min(pos)
        delta = (target[anchor] - pos[anchor]) % self.n
        if delta <= self.n - delta:
            direction, count = 1, delta
        else:
            direction, count = -1, self.n - delta
        for _ in range(count):
            self._rotate_once(pos, direction, steps)
        # remaining vertices form a chain starting just after the anchor
        chain = [(target[anchor] + off) % self.n for off in range(1, self.n)]
        chain_pos = {idx: c + 1 for c, idx in enumerate(chain)}
        others = [r for r in pos if r != anchor]
        cur = {r: chain_pos[pos[r]] for r in others}
        dest = {r: chain_pos[target[r]] for r in others}

        def walk(r):
            c, d = cur[r], dest[r]
            step = 1 if d > c else -1
            while c != d:
                frm = chain[c - 1]
                to = chain[c + step - 1]
                steps.append(PlanStep(r, self.sub.vertices[frm], self.sub.vertices[to]))
                c += step
            cur[r] = d

        order = [r for _, r in sorted((c, r) for r, c in cur.items())]
        for r in reversed(order):
            if dest[r] > cur[r]:
                walk(r)
        for r in order:
            if dest[r] < cur[r]:
                walk(r)
        final = Arrangement(
            {self.sub.vertices[target[r]]: r for r in pos}
        )
        return steps, final

    def resolve_enter(self, arr, robot, at, target, next_action=None):
        self._check_inside(arr)
        cfg = self.config_of(arr)
        if target not in self.enter(cfg, robot, at):
            raise StructureError("enter target not reachable")
        i = self._idx(at)
        if isinstance(target, RingLocked):
            targets = {r: idx for idx, r in enumerate(target.placement) if r != robot}
        else:
            if len(arr) == 0:
                return [], arr
            # place the entrant's successors consecutively after the entry
            order = list(target.order)
            j = order.index(robot)
            after = order[j + 1:] + order[:j]
            targets = {r: (i + 1 + off) % self.n for off, r in enumerate(after)}
        return self._shuffle(arr, targets)

    def resolve_exit(self, arr, robot, via, target):
        self._check_inside(arr)
        cfg = self.config_of(arr)
        if target not in self.exit(cfg, robot, via):
            raise StructureError("exit target not reachable")
        if isinstance(cfg, RingLocked):
            return [], arr  # robot is already at its recorded position
        i = self._idx(via)
        occupants = self._cyclic_order(arr)
        j = occupants.index(robot)
        after = occupants[j + 1:] + occupants[:j]
        targets = {robot: i}
        for off, r in enumerate(after, start=1):
            targets[r] = (i + off) % self.n
        return self._shuffle(arr, targets)

    def resolve_terminate(self, arr, goal):
        self._check_inside(arr)
        cfg = self.config_of(arr)
        if not self.can_terminate(cfg, goal):
            raise StructureError("terminate goal not reachable")
        if isinstance(cfg, RingLocked):
            return []
        targets = {r: self._idx(v) for v, r in goal.items()}
        steps, _ = self._shuffle(arr, targets)
        return steps


class SingletonStructure(Structure):
    def _vertex(self):
        return self.sub.vertices[0]

    def config_of(self, arr):
        self._check_inside(arr)
        return SingletonConfig(arr.robot_at(self._vertex()))

    def enter(self, cfg, robot, at):
        if at != self._vertex():
            raise StructureError(f"vertex {at} not in subgraph {self.sub.id}")
        if cfg.robot is not None or cfg.robot == robot:
            return ()
        return (SingletonConfig(robot),)

    def exit(self, cfg, robot, via):
        if via != self._vertex():
            raise StructureError(f"vertex {via} not in subgraph {self.sub.id}")
        if cfg.robot != robot:
            return ()
        return (SingletonConfig(None),)

    def can_terminate(self, cfg, goal):
        return cfg.robot == goal.robot_at(self._vertex())

    def resolve_enter(self, arr, robot, at, target, next_action=None):
        if len(arr) != 0:
            raise StructureError("singleton occupied")
        return [], arr

    def resolve_exit(self, arr, robot, via, target):
        if arr.robot_at(self._vertex()) != robot:
            raise StructureError("robot not at singleton")
        return [], arr

    def resolve_terminate(self, arr, goal):
        if not self.can_terminate(self.config_of(arr), goal):
            raise StructureError("terminate goal not reachable")
        return []


_STRUCTURES = {
    STACK: StackStructure,
    HALL: HallStructure,
    CLIQUE: CliqueStructure,
    RING: RingStructure,
    SINGLETON: SingletonStructure,
}


def structure_for(sub, rm):
    return _STRUCTURES[sub.kind](sub, rm)


def build_structures(rm, partition):
    """One Structure per subgraph, indexed by subgraph id."""
    return [structure_for(s, rm) for s in partition.subgraphs]
