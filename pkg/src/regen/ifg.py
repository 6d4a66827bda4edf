"""Information flow graphs: repair simulation, exact min-cuts and brute-force oracles.

A graph is an immutable record of node *incarnations*.  Incarnation ``i`` owns
two vertices, ``in`` and ``out``, joined by an edge of capacity ``alpha``;
initial incarnations hang off the source by infinite edges and every repaired
incarnation receives ``beta`` from the ``out`` vertex of each of its ``d``
helpers.  A data collector is modelled by merging the chosen ``out`` vertices
into a super-sink.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import InvalidHelperSet, PreconditionViolation, SearchSpaceTooLarge
from .formulas import bhs_mincut
from .model import GroupPartition, SystemParams, build_family_plus_partition, build_family_structure, ceil_div
from .rational import INF, Scalar, as_scalar, format_scalar, is_inf

__all__ = [
    "Incarnation",
    "InfoFlowGraph",
    "HelperPolicy",
    "new_ifg",
    "fail_and_repair",
    "max_flow",
    "min_cut",
    "min_cut_over_collectors",
    "fhs_policy",
    "family_plus_policy",
    "stationary_policy",
    "random_policy",
    "fhs_failure_orders",
    "oracle_fhs_mincut",
    "adversary_forces",
    "oracle_bhs_mincut",
    "oracle_policy_mincut",
    "find_m_set",
    "find_m2_set",
    "converse_adversary",
    "Witness",
    "random_repaired_graph",
    "simulate",
    "MAX_ORACLE_N",
]

MAX_ORACLE_N = 8


@dataclass(frozen=True)
class Incarnation:
    id: int  # position in the graph's chronology; initial incarnations are 0..n-1
    node: int  # storage index 1..n
    inc: int  # 0 for the initial incarnation
    helpers: Tuple[int, ...] = ()  # incarnation ids of the helpers

    @property
    def repaired(self) -> bool:
        return self.inc > 0

    @property
    def in_name(self) -> str:
        return f"in:{self.node}:{self.inc}"

    @property
    def out_name(self) -> str:
        return f"out:{self.node}:{self.inc}"


@dataclass(frozen=True)
class InfoFlowGraph:
    n: int
    alpha: Scalar
    beta: Scalar
    d: Optional[int]
    incarnations: Tuple[Incarnation, ...]
    active: Tuple[int, ...]  # active[node-1] is the current incarnation id
    history: Tuple[int, ...] = ()  # failed storage indices, in order

    def current(self, node: int) -> Incarnation:
        return self.incarnations[self.active[node - 1]]

    def active_incarnations(self) -> List[Incarnation]:
        return [self.incarnations[i] for i in self.active]

    @property
    def all_repaired(self) -> bool:
        return all(self.incarnations[i].repaired for i in self.active)

    def is_helper(self, older: Incarnation, younger: Incarnation) -> bool:
        """Whether there is an edge from ``older``'s out vertex to ``younger``'s in vertex."""
        return older.id in younger.helpers

    @property
    def num_vertices(self) -> int:
        return 1 + 2 * len(self.incarnations)

    def edges(self) -> List[Tuple[str, str, Scalar]]:
        out = []
        for inc in self.incarnations:
            if not inc.repaired:
                out.append(("s", inc.in_name, INF))
            out.append((inc.in_name, inc.out_name, self.alpha))
            for h in inc.helpers:
                out.append((self.incarnations[h].out_name, inc.in_name, self.beta))
        return out

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v} {format_scalar(c)}\n" for u, v, c in self.edges())

    def with_capacities(self, alpha, beta) -> "InfoFlowGraph":
        return replace(self, alpha=as_scalar(alpha), beta=as_scalar(beta))


def new_ifg(n: int, alpha, beta, d: Optional[int] = None) -> InfoFlowGraph:
    if n < 2:
        raise ValueError("need at least two storage nodes")
    incs = tuple(Incarnation(i, i + 1, 0) for i in range(n))
    return InfoFlowGraph(n, as_scalar(alpha), as_scalar(beta), d, incs, tuple(range(n)))


def fail_and_repair(g: InfoFlowGraph, node: int, helpers: Iterable[int]) -> InfoFlowGraph:
    helpers = tuple(sorted(set(helpers)))
    if not 1 <= node <= g.n:
        raise InvalidHelperSet(f"node {node} is not in 1..{g.n}")
    if node in helpers:
        raise InvalidHelperSet(f"node {node} cannot help its own repair")
    if any(not 1 <= h <= g.n for h in helpers):
        raise InvalidHelperSet(f"helpers {helpers} must be storage indices in 1..{g.n}")
    d = g.d if g.d is not None else len(helpers)
    if len(helpers) != d:
        raise InvalidHelperSet(f"expected {d} distinct helpers, got {helpers}")
    new_id = len(g.incarnations)
    old = g.current(node)
    inc = Incarnation(new_id, node, old.inc + 1, tuple(g.active[h - 1] for h in helpers))
    active = list(g.active)
    active[node - 1] = new_id
    return InfoFlowGraph(g.n, g.alpha, g.beta, d, g.incarnations + (inc,), tuple(active), g.history + (node,))


# -- max-flow ----------------------------------------------------------------


def max_flow(edges: Iterable[Tuple[object, object, object]], source, sink) -> Tuple[Scalar, Set[object]]:
    """Edmonds-Karp on exact capacities; returns the flow value and the source side of a min cut.

    Infinite capacities are replaced by one more than the sum of the finite ones,
    so a flow reaching that value certifies an infinite cut.  The returned cut is
    checked against the flow value before returning.
    """
    edges = list(edges)
    finite = sum((c for _, _, c in edges if not is_inf(c)), 0)
    big = finite + 1
    index: Dict[object, int] = {source: 0, sink: 1}
    for u, v, _ in edges:
        index.setdefault(u, len(index))
        index.setdefault(v, len(index))
    adj: List[List[int]] = [[] for _ in index]
    head: List[int] = []  # arc -> target vertex; arc ^ 1 is its reverse
    cap: List[object] = []
    for u, v, c in edges:
        a, b = index[u], index[v]
        adj[a].append(len(head))
        head.append(b)
        cap.append(big if is_inf(c) else c)
        adj[b].append(len(head))
        head.append(a)
        cap.append(0)

    flow = 0
    while True:
        via = [-1] * len(index)  # arc used to reach each vertex
        via[0] = -2
        queue = deque([0])
        while queue and via[1] == -1:
            u = queue.popleft()
            for arc in adj[u]:
                w = head[arc]
                if via[w] == -1 and cap[arc] > 0:
                    via[w] = arc
                    queue.append(w)
        if via[1] == -1:
            break
        push = None
        w = 1
        while w:
            arc = via[w]
            push = cap[arc] if push is None or cap[arc] < push else push
            w = head[arc ^ 1]
        w = 1
        while w:
            arc = via[w]
            cap[arc] -= push
            cap[arc ^ 1] += push
            w = head[arc ^ 1]
        flow += push

    names = list(index)
    side = {names[i] for i, a in enumerate(via) if a != -1}
    cut = sum((big if is_inf(c) else c) for u, v, c in edges if u in side and v not in side)
    if cut != flow:  # pragma: no cover - would indicate a bug in the augmentation
        raise AssertionError(f"max-flow {flow} disagrees with cut {cut}")
    if flow >= big:
        return INF, side
    return flow, side


def _ancestors(g: InfoFlowGraph, roots: Iterable[int]) -> Set[int]:
    seen = set()
    stack = list(roots)
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        seen.add(i)
        stack.extend(g.incarnations[i].helpers)
    return seen


def _scale(alpha: Scalar, beta: Scalar) -> int:
    dens = [x.denominator for x in (alpha, beta) if not is_inf(x)]
    return lcm(*dens) if dens else 1


def _cut_value(g: InfoFlowGraph, collector_ids: Sequence[int], alpha: Scalar, beta: Scalar) -> Scalar:
    keep = _ancestors(g, collector_ids)
    scale = _scale(alpha, beta)
    a = INF if is_inf(alpha) else int(alpha * scale)
    b = INF if is_inf(beta) else int(beta * scale)
    edges = []
    for i in keep:
        inc = g.incarnations[i]
        if not inc.repaired:
            edges.append((-1, 2 * i, INF))
        edges.append((2 * i, 2 * i + 1, a))
        for h in inc.helpers:
            edges.append((2 * h + 1, 2 * i, b))
    for i in collector_ids:
        edges.append((2 * i + 1, -2, INF))
    value, _ = max_flow(edges, -1, -2)
    return value if is_inf(value) else Fraction(value, scale)


def min_cut(g: InfoFlowGraph, collector: Iterable[int], alpha=None, beta=None) -> Scalar:
    """Exact s-t min-cut for a collector attached to the given storage indices."""
    alpha = g.alpha if alpha is None else as_scalar(alpha)
    beta = g.beta if beta is None else as_scalar(beta)
    ids = [g.active[v - 1] for v in collector]
    return _cut_value(g, ids, alpha, beta)


def min_cut_over_collectors(g: InfoFlowGraph, k: int, alpha=None, beta=None, with_collector: bool = False):
    """Minimum over all ``C(n, k)`` collectors of the exact min-cut."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} must lie in 1..{g.n}")
    best, arg = None, None
    for nodes in itertools.combinations(range(1, g.n + 1), k):
        v = min_cut(g, nodes, alpha, beta)
        if best is None or v < best:
            best, arg = v, nodes
    return (best, arg) if with_collector else best


# -- helper policies ---------------------------------------------------------


@dataclass(frozen=True)
class HelperPolicy:
    """Dynamic helper selection: maps the failure history (ending with the
    failing node) to the helper set of the newcomer."""

    name: str
    n: int
    d: int
    choose: Callable[[Tuple[int, ...]], FrozenSet[int]] = field(compare=False)

    def __call__(self, history: Sequence[int]) -> FrozenSet[int]:
        return frozenset(self.choose(tuple(history)))


def stationary_policy(helper_sets: Sequence[Iterable[int]], name: str = "stationary") -> HelperPolicy:
    sets = [frozenset(s) for s in helper_sets]
    d = len(sets[0])
    return HelperPolicy(name, len(sets), d, lambda hist: sets[hist[-1] - 1])


def fhs_policy(n: int, d: int) -> HelperPolicy:
    return stationary_policy(build_family_structure(n, d).helper_sets, name="fhs")


def family_plus_policy(n: int, d: int, parts: Optional[GroupPartition] = None) -> HelperPolicy:
    """FHS run independently inside each group of the partition."""
    parts = parts or build_family_plus_partition(n, d)
    sets: List[FrozenSet[int]] = []
    for start, nb in zip(parts.offsets(), parts.parts):
        fs = build_family_structure(nb, d)
        sets.extend(frozenset(h + start - 1 for h in s) for s in fs.helper_sets)
    return stationary_policy(sets, name="family-plus")


def random_policy(n: int, d: int, seed: int = 0) -> HelperPolicy:
    """Uniform helpers, reproducible: the draw is seeded by ``seed`` and the history."""

    def choose(hist):
        rng = random.Random(f"{seed}:{','.join(map(str, hist))}")
        others = [v for v in range(1, n + 1) if v != hist[-1]]
        return frozenset(rng.sample(others, d))

    return HelperPolicy("random", n, d, choose)


def _apply(g: InfoFlowGraph, policy: HelperPolicy, node: int) -> InfoFlowGraph:
    return fail_and_repair(g, node, policy(g.history + (node,)))


# -- oracles -----------------------------------------------------------------


def _multiset_orders(labels: Sequence[int], symmetric: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Distinct orderings of ``labels``; ``symmetric`` labels are interchangeable, so only
    orderings where they first appear in increasing order are produced."""
    counts: Dict[int, int] = {}
    for v in labels:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    sym = sorted(symmetric)
    total = len(labels)
    prefix: List[int] = []
    started: Set[int] = set()

    def rec():
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for v in keys:
            if not counts[v]:
                continue
            if v in sym and v not in started:
                pos = sym.index(v)
                if pos and sym[pos - 1] not in started:
                    continue
            counts[v] -= 1
            prefix.append(v)
            fresh = v not in started
            if fresh:
                started.add(v)
            yield from rec()
            if fresh:
                started.discard(v)
            prefix.pop()
            counts[v] += 1

    yield from rec()


def fhs_failure_orders(n: int, d: int, collapse: bool = True) -> Iterator[Tuple[int, ...]]:
    """Node orders for one FHS failure round.

    Nodes sharing a family index are interchangeable, and so are the complete
    families other than the signed last one, so with ``collapse`` only one
    order per equivalence class is produced.  Without it all ``n!`` orders are.
    """
    if not collapse:
        yield from itertools.permutations(range(1, n + 1))
        return
    fs = build_family_structure(n, d)
    sym = range(1, fs.c + (0 if fs.incomplete_size else 1))
    for seq in _multiset_orders(fs.family_index, list(sym)):
        pools: Dict[int, List[int]] = {}
        for node, lab in enumerate(fs.family_index, start=1):
            pools.setdefault(lab, []).append(node)
        used = {lab: 0 for lab in pools}
        order = []
        for lab in seq:
            order.append(pools[lab][used[lab]])
            used[lab] += 1
        yield tuple(order)


def oracle_fhs_mincut(
    p: SystemParams,
    alpha,
    beta,
    extra_rounds: int = 0,
    seed: int = 0,
    collapse: bool = True,
) -> Scalar:
    """Brute-force FHS min-cut: every single-round failure order, then every collector.

    ``extra_rounds`` further random rounds of failures (seeded) are run on top
    of random single-round graphs; they can only confirm the minimum.
    """
    n, k, d = p.as_tuple()
    if n > MAX_ORACLE_N:
        raise SearchSpaceTooLarge(f"order enumeration is limited to n <= {MAX_ORACLE_N}")
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    policy = fhs_policy(n, d)
    best = None
    for order in fhs_failure_orders(n, d, collapse):
        g = new_ifg(n, alpha, beta, d)
        for node in order:
            g = _apply(g, policy, node)
        v = min_cut_over_collectors(g, k)
        if best is None or v < best:
            best = v
    rng = random.Random(seed)
    for _ in range(extra_rounds):
        g = new_ifg(n, alpha, beta, d)
        for node in rng.sample(range(1, n + 1), n):
            g = _apply(g, policy, node)
        for _ in range(n):
            g = _apply(g, policy, rng.randint(1, n))
        best = min(best, min_cut_over_collectors(g, k))
    return best


def _prune(g: InfoFlowGraph) -> InfoFlowGraph:
    """Drop incarnations that cannot reach any active one; relabel ids chronologically."""
    keep = sorted(_ancestors(g, g.active))
    remap = {old: new for new, old in enumerate(keep)}
    incs = tuple(
        Incarnation(remap[i], g.incarnations[i].node, g.incarnations[i].inc, tuple(remap[h] for h in g.incarnations[i].helpers))
        for i in keep
    )
    return replace(g, incarnations=incs, active=tuple(remap[i] for i in g.active))


def _signature(g: InfoFlowGraph) -> tuple:
    """Isomorphism key of a pruned graph, ignoring storage labels and initial-node order.

    Repaired incarnations keep their chronological ranks; each initial
    incarnation is described by whether it is active and which repaired ranks
    it helps, and those descriptions are compared as a multiset.
    """
    active = set(g.active)
    repaired = [inc for inc in g.incarnations if inc.repaired]
    rank = {inc.id: r for r, inc in enumerate(repaired)}
    body = tuple(
        (tuple(sorted(rank[h] for h in inc.helpers if h in rank)), inc.id in active, sum(1 for h in inc.helpers if h not in rank))
        for inc in repaired
    )
    helped: Dict[int, List[int]] = {inc.id: [] for inc in g.incarnations if not inc.repaired}
    for inc in repaired:
        for h in inc.helpers:
            if h in helped:
                helped[h].append(rank[inc.id])
    initial = tuple(sorted((i in active, tuple(sorted(r))) for i, r in helped.items()))
    return body, initial


def oracle_bhs_mincut(
    p: SystemParams,
    points: Sequence[Tuple[object, object]],
    failures: Optional[int] = None,
) -> Dict[Tuple[Scalar, Scalar], Scalar]:
    """Adversarial search over failures *and* helper choices, up to ``failures`` repairs.

    Returns, for each ``(alpha, beta)`` in ``points``, the smallest min-cut over
    collectors found on any reachable graph.  Isomorphic graphs (after pruning
    incarnations that no longer matter) are expanded once, from their shallowest
    occurrence.
    """
    n, k, d = p.as_tuple()
    failures = n if failures is None else failures
    pts = [(as_scalar(a), as_scalar(b)) for a, b in points]
    best = {pt: None for pt in pts}
    seen: Dict[tuple, int] = {}

    def evaluate(g, newcomer=None):
        # a collector avoiding the newcomer sees the same ancestors as in the parent graph
        if newcomer is None:
            collectors = list(itertools.combinations(range(1, n + 1), k))
        else:
            rest = [v for v in range(1, n + 1) if v != newcomer]
            collectors = [c + (newcomer,) for c in itertools.combinations(rest, k - 1)]
        for a, b in pts:
            for c in collectors:
                v = min_cut(g, c, a, b)
                if best[(a, b)] is None or v < best[(a, b)]:
                    best[(a, b)] = v

    frontier = [new_ifg(n, 0, 0, d)]
    seen[_signature(frontier[0])] = 0
    evaluate(frontier[0])
    for depth in range(1, failures + 1):
        nxt = []
        for g in frontier:
            for node in range(1, n + 1):
                others = [v for v in range(1, n + 1) if v != node]
                for hs in itertools.combinations(others, d):
                    h = _prune(fail_and_repair(g, node, hs))
                    key = _signature(h)
                    if key in seen:
                        continue
                    seen[key] = depth
                    evaluate(h, node)
                    nxt.append(h)
        frontier = nxt
    return best


def oracle_policy_mincut(policy: HelperPolicy, p: SystemParams, alpha, beta, budget: int) -> Scalar:
    """Smallest collector cut over every failure sequence of length at most ``budget``.

    This bounds the true minimum from above; it is exact only when every graph
    the policy can produce is reached within the budget.
    """
    n, k, d = p.as_tuple()
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    best = min_cut_over_collectors(new_ifg(n, alpha, beta, d), k)

    def rec(g, left):
        nonlocal best
        if not left:
            return
        for node in range(1, n + 1):
            h = _apply(g, policy, node)
            best = min(best, min_cut_over_collectors(h, k))
            rec(h, left - 1)

    rec(new_ifg(n, alpha, beta, d), budget)
    return best


def adversary_forces(p: SystemParams, alpha, beta, threshold, failures: int) -> bool:
    """Whether every dynamic policy can be driven to a collector cut ``<= threshold``.

    The adversary picks which node fails, at most ``failures`` times; the policy
    answers each failure with any ``d`` helpers and knows the whole history.  A
    ``True`` answer caps every policy at ``threshold``; ``False`` means some
    policy survives this many failures above it.  Positions are memoized on the
    pruned-graph signature, which fixes every collector cut.
    """
    n, k, d = p.as_tuple()
    alpha, beta, threshold = as_scalar(alpha), as_scalar(beta), as_scalar(threshold)
    memo: Dict[Tuple[tuple, int], bool] = {}

    def wins(g, left):
        key = (_signature(g), left)
        if key not in memo:
            memo[key] = min_cut_over_collectors(g, k, alpha, beta) <= threshold or (
                left > 0
                and any(
                    all(
                        wins(_prune(fail_and_repair(g, node, hs)), left - 1)
                        for hs in itertools.combinations([u for u in range(1, n + 1) if u != node], d)
                    )
                    for node in range(1, n + 1)
                )
            )
        return memo[key]

    return wins(new_ifg(n, alpha, beta, d), failures)


# -- m-sets and the converse -------------------------------------------------


def _chrono(g: InfoFlowGraph, nodes: Optional[Iterable[int]] = None) -> List[Incarnation]:
    pool = g.active_incarnations() if nodes is None else [g.current(v) for v in nodes]
    return sorted((inc for inc in pool if inc.repaired), key=lambda inc: inc.id)


def _connected(g: InfoFlowGraph, group: Sequence[Incarnation], exempt_oldest_pair: bool) -> bool:
    for j, young in enumerate(group):
        for i in range(j):
            if exempt_oldest_pair and (i, j) == (0, 1):
                continue
            if not g.is_helper(group[i], young):
                return False
    return True


def find_m_set(g: InfoFlowGraph, m: int, among: Optional[Iterable[int]] = None) -> Optional[Tuple[Incarnation, ...]]:
    """``m`` repaired active incarnations, each older one a helper of each younger one."""
    cands = _chrono(g, among)
    for group in itertools.combinations(cands, m):
        if _connected(g, group, False):
            return group
    return None


def find_m2_set(g: InfoFlowGraph, m: int, among: Optional[Iterable[int]] = None) -> Optional[Tuple[Incarnation, ...]]:
    """Like :func:`find_m_set` but the edge between the two oldest members is not required."""
    cands = _chrono(g, among)
    for group in itertools.combinations(cands, m):
        if _connected(g, group, True):
            return group
    return None


@dataclass(frozen=True)
class Witness:
    graph: InfoFlowGraph
    collector: Tuple[int, ...]  # storage indices
    cut: Scalar
    condition: str


def converse_adversary(policy: HelperPolicy, p: SystemParams, alpha, beta) -> Witness:
    """Drive ``policy`` into a graph whose collector cut is no larger than the blind-selection value."""
    n, k, d = p.as_tuple()
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    m = ceil_div(n, n - d)
    cond_ii = k <= m
    cond_i = d == 1 and k == 3 and n % 2 == 1
    if not (cond_i or cond_ii):
        raise PreconditionViolation(f"(n,k,d)=({n},{k},{d}) meets neither converse condition")

    g = new_ifg(n, alpha, beta, d)
    for node in range(1, n + 1):
        g = _apply(g, policy, node)

    if cond_ii:
        group = find_m_set(g, m)
        if group is None:  # pragma: no cover - guaranteed to exist
            raise AssertionError("no m-set in a fully repaired graph")
        collector = tuple(inc.node for inc in group[:k])
        condition = "ii"
    else:
        pairs: List[Tuple[int, int]] = []  # (helper x, newcomer y) storage indices
        while True:
            busy = {v for pair in pairs for v in pair}
            w = min(v for v in range(1, n + 1) if v not in busy)
            g = _apply(g, policy, w)
            (x,) = g.current(w).helpers
            x_node = g.incarnations[x].node
            hit = next((pr for pr in pairs if x_node in pr), None)
            if hit is not None:
                collector = (hit[0], hit[1], w)
                break
            pairs.append((x_node, w))
        condition = "i"

    cut = min_cut(g, collector)
    bound = bhs_mincut(p, alpha, beta)
    if cut > bound:  # pragma: no cover - contradicts the converse argument
        raise AssertionError(f"witness cut {cut} exceeds {bound}")
    return Witness(g, collector, cut, condition)


# -- simulation helpers ------------------------------------------------------


def random_repaired_graph(n: int, d: int, rng: random.Random, extra: int = 0, alpha=1, beta=1) -> InfoFlowGraph:
    """Every node fails once in random order with uniformly random helpers, then ``extra`` more failures."""
    g = new_ifg(n, alpha, beta, d)
    order = rng.sample(range(1, n + 1), n) + [rng.randint(1, n) for _ in range(extra)]
    for node in order:
        others = [v for v in range(1, n + 1) if v != node]
        g = fail_and_repair(g, node, rng.sample(others, d))
    return g


@dataclass(frozen=True)
class SimulationReport:
    graph: InfoFlowGraph
    steps: Tuple[Tuple[int, Tuple[int, ...]], ...]
    mincut: Scalar
    collector: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "d": self.graph.d,
            "alpha": format_scalar(self.graph.alpha),
            "beta": format_scalar(self.graph.beta),
            "steps": [{"failed": v, "helpers": list(h)} for v, h in self.steps],
            "mincut": format_scalar(self.mincut),
            "collector": list(self.collector),
        }


def simulate(policy: HelperPolicy, p: SystemParams, failures: Sequence[int], alpha, beta) -> SimulationReport:
    n, k, d = p.as_tuple()
    g = new_ifg(n, alpha, beta, d)
    steps = []
    for node in failures:
        g = _apply(g, policy, node)
        inc = g.current(node)
        steps.append((node, tuple(sorted(g.incarnations[h].node for h in inc.helpers))))
    value, collector = min_cut_over_collectors(g, k, with_collector=True)
    return SimulationReport(g, tuple(steps), value, collector)
