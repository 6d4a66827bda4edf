import itertools
import json
import random
from fractions import Fraction as F

import networkx as nx
import pytest

from regen.errors import InvalidHelperSet, PreconditionViolation, SearchSpaceTooLarge
from regen.formulas import bhs_mincut, fhs_mincut
from regen.model import SystemParams as P, ceil_div
from regen.ifg import (
    adversary_forces,
    fail_and_repair,
    family_plus_policy,
    fhs_failure_orders,
    fhs_policy,
    find_m2_set,
    find_m_set,
    converse_adversary,
    max_flow,
    min_cut,
    min_cut_over_collectors,
    new_ifg,
    oracle_bhs_mincut,
    oracle_fhs_mincut,
    oracle_policy_mincut,
    random_policy,
    random_repaired_graph,
    simulate,
    stationary_policy,
)
from regen.rational import INF


# -- construction ------------------------------------------------------------


def test_fresh_graph_shape():
    g = new_ifg(4, 1, 1)
    assert g.num_vertices == 9
    caps = [c for _, _, c in g.edges()]
    assert caps.count(INF) == 4 and caps.count(1) == 4
    assert new_ifg(6, 1, 1).num_vertices == 13
    assert new_ifg(2, 1, 1).num_vertices == 5


def test_repair_adds_beta_edges():
    g = fail_and_repair(new_ifg(4, 1, F(1, 2), 2), 1, {3, 4})
    into = [(u, c) for u, v, c in g.edges() if v == "in:1:1"]
    assert sorted(into) == [("out:3:0", F(1, 2)), ("out:4:0", F(1, 2))]
    assert g.current(1).inc == 1 and g.history == (1,)
    g = fail_and_repair(g, 1, {2, 3})
    assert g.current(1).inc == 2 and len(g.incarnations) == 6
    # the second incarnation of node 1 is gone and cannot help
    assert g.current(1).helpers == (1, 2)


@pytest.mark.parametrize("node,helpers", [(1, {1, 2}), (1, {2}), (1, {2, 3, 4}), (5, {1, 2}), (1, {2, 9})])
def test_repair_rejects_bad_helpers(node, helpers):
    with pytest.raises(InvalidHelperSet):
        fail_and_repair(new_ifg(4, 1, 1, 2), node, helpers)


def test_edge_list_dump():
    g = fail_and_repair(new_ifg(3, 2, F(1, 3), 1), 2, {1})
    lines = g.to_edge_list().splitlines()
    assert "s in:1:0 inf" in lines
    assert "in:2:1 out:2:1 2" in lines
    assert "out:1:0 in:2:1 1/3" in lines


# -- max-flow ----------------------------------------------------------------


def nx_value(edges, s, t):
    G = nx.DiGraph()
    G.add_nodes_from([s, t])
    for u, v, c in edges:
        if G.has_edge(u, v):
            G[u][v]["capacity"] += c
        else:
            G.add_edge(u, v, capacity=c)
    return nx.maximum_flow_value(G, s, t)


def test_max_flow_against_networkx():
    rng = random.Random(7)
    for _ in range(200):
        nv = rng.randint(2, 9)
        edges = [
            (u, v, F(rng.randint(0, 12), rng.randint(1, 4)))
            for u in range(nv)
            for v in range(nv)
            if u != v and rng.random() < 0.35
        ]
        value, side = max_flow(edges, 0, nv - 1)
        assert value == nx_value(edges, 0, nv - 1)
        assert 0 in side and nv - 1 not in side
        assert value == sum(c for u, v, c in edges if u in side and v not in side)


def test_max_flow_infinite():
    assert max_flow([("s", "a", INF), ("a", "t", INF)], "s", "t")[0] is INF
    assert max_flow([("s", "a", INF), ("a", "t", 3)], "s", "t")[0] == 3
    assert max_flow([("s", "a", 3)], "s", "t")[0] == 0


def test_collector_cut_against_networkx():
    rng = random.Random(3)
    for _ in range(30):
        g = random_repaired_graph(5, 2, rng, extra=3, alpha=F(3, 2), beta=1)
        G = nx.DiGraph()
        for u, v, c in g.edges():
            G.add_edge(u, v, capacity=float("inf") if c is INF else c)
        for nodes in itertools.combinations(range(1, 6), 3):
            H = G.copy()
            for v in nodes:
                H.add_edge(g.current(v).out_name, "t", capacity=float("inf"))
            assert min_cut(g, nodes) == nx.maximum_flow_value(H, "s", "t")


# -- collectors and oracles --------------------------------------------------


def test_fresh_graph_collector_cut():
    assert min_cut_over_collectors(new_ifg(5, F(3, 2), 1), 3) == F(9, 2)
    assert min_cut_over_collectors(new_ifg(5, INF, 1), 2) is INF


def test_rfip_round_4_3_2():
    g = new_ifg(4, 1, 1, 2)
    pol = fhs_policy(4, 2)
    for v in (1, 3, 2, 4):
        g = fail_and_repair(g, v, pol((v,)))
    assert min_cut_over_collectors(g, 3) == 2 == fhs_mincut(P(4, 3, 2), 1, 1)


def test_single_round_5_3_2():
    g = new_ifg(5, 2, 1, 2)
    pol = fhs_policy(5, 2)
    for v in range(1, 6):
        g = fail_and_repair(g, v, pol((v,)))
    assert min_cut_over_collectors(g, 3) >= 4
    assert oracle_fhs_mincut(P(5, 3, 2), 2, 1) == 4


@pytest.mark.parametrize(
    "p,alpha,beta,expected",
    [(P(4, 3, 2), 2, 1, 4), (P(5, 3, 2), 1, 1, 2), (P(6, 4, 4), 4, 1, 11)],
    ids=str,
)
def test_fhs_oracle_examples(p, alpha, beta, expected):
    assert oracle_fhs_mincut(p, alpha, beta) == expected == fhs_mincut(p, alpha, beta)


def test_fhs_oracle_guard():
    with pytest.raises(SearchSpaceTooLarge):
        oracle_fhs_mincut(P(9, 3, 3), 1, 1)


@pytest.mark.parametrize("n,d", [(4, 2), (5, 2), (5, 3), (6, 4)])
def test_collapsed_orders_cover_full_enumeration(n, d):
    full = list(fhs_failure_orders(n, d, collapse=False))
    assert len(full) == len(set(full)) == len(list(itertools.permutations(range(n))))
    assert len(list(fhs_failure_orders(n, d))) < len(full)
    for k in range(1, n):
        for alpha in (1, d):
            p = P(n, k, d)
            assert oracle_fhs_mincut(p, alpha, 1) == oracle_fhs_mincut(p, alpha, 1, collapse=False)


def test_random_deepening_never_goes_lower():
    for p in (P(5, 3, 2), P(6, 4, 4), P(6, 5, 3)):
        for alpha in (1, p.d):
            assert oracle_fhs_mincut(p, alpha, 1, extra_rounds=6, seed=11) == fhs_mincut(p, alpha, 1)


def test_bhs_oracle_4_2_2():
    got = oracle_bhs_mincut(P(4, 2, 2), [(INF, 1), (1, 1), (F(3, 2), 1)], failures=4)
    assert got[(INF, 1)] == 3
    for (a, b), v in got.items():
        assert v == bhs_mincut(P(4, 2, 2), a, b)


def test_policy_oracle():
    p = P(4, 3, 2)
    assert oracle_policy_mincut(fhs_policy(4, 2), p, F(5, 2), 1, budget=0) == F(15, 2)
    got = oracle_policy_mincut(fhs_policy(4, 2), p, 2, 1, budget=4)
    assert got >= fhs_mincut(p, 2, 1)
    assert got == 4


# -- m-sets ------------------------------------------------------------------


def is_chain(g, group, exempt):
    for j in range(len(group)):
        for i in range(j):
            if exempt and (i, j) == (0, 1):
                continue
            if group[i].id not in group[j].helpers:
                return False
    return all(x.repaired for x in group) and [x.id for x in group] == sorted(x.id for x in group)


@pytest.mark.parametrize("n,d", [(n, d) for n in range(2, 9) for d in range(1, n)])
def test_m_set_exists_in_repaired_graphs(n, d):
    rng = random.Random(n * 100 + d)
    m = ceil_div(n, n - d)
    for _ in range(100):
        g = random_repaired_graph(n, d, rng, extra=rng.randint(0, n))
        group = find_m_set(g, m)
        assert group is not None and len(group) == m
        assert is_chain(g, group, False)


def test_m_set_trivial_sizes():
    g = fail_and_repair(new_ifg(4, 1, 1, 2), 2, {3, 4})
    assert [x.node for x in find_m_set(g, 1)] == [2]
    assert find_m_set(new_ifg(4, 1, 1, 2), 1) is None
    g = fail_and_repair(g, 1, {3, 4})
    # two repaired nodes that do not help each other: only the (m,2) form accepts them
    assert find_m_set(g, 2) is None
    assert find_m2_set(g, 2) is not None


@pytest.mark.parametrize("d", [2, 4])
def test_m2_set_exists_for_two_spare_nodes(d):
    n = d + 2
    rng = random.Random(d)
    for _ in range(40):
        g = random_repaired_graph(n, d, rng, extra=rng.randint(0, n))
        for l in range(2, n + 1, 2):
            for subset in itertools.combinations(range(1, n + 1), l):
                group = find_m2_set(g, l // 2 + 1, among=subset)
                assert group is not None, (subset, g.history)
                assert is_chain(g, group, True)


# -- converse ----------------------------------------------------------------


def test_converse_condition_ii():
    p = P(6, 3, 4)
    w = converse_adversary(fhs_policy(6, 4), p, INF, 1)
    assert w.condition == "ii"
    assert w.cut == 9 == bhs_mincut(p, INF, 1)
    assert min_cut(w.graph, w.collector) == w.cut


@pytest.mark.parametrize("seed", range(5))
def test_converse_condition_i(seed):
    p = P(7, 3, 1)
    for pol in (random_policy(7, 1, seed), fhs_policy(7, 1), family_plus_policy(7, 1)):
        w = converse_adversary(pol, p, INF, 1)
        assert w.condition == "i"
        assert w.cut <= 1 == bhs_mincut(p, INF, 1)


def test_converse_precondition():
    with pytest.raises(PreconditionViolation):
        converse_adversary(fhs_policy(6, 4), P(6, 4, 4), INF, 1)


def test_converse_bound_on_random_policies():
    for n in range(3, 8):
        for d in range(1, n):
            for k in range(1, n):
                p = P(n, k, d)
                try:
                    w = converse_adversary(random_policy(n, d, n * k), p, 3, 1)
                except PreconditionViolation:
                    continue
                assert w.cut <= bhs_mincut(p, 3, 1)


# -- simulation --------------------------------------------------------------


def test_simulate_reports_steps():
    rep = simulate(fhs_policy(4, 2), P(4, 3, 2), [1, 3, 2, 4], 1, 1)
    assert [s[0] for s in rep.steps] == [1, 3, 2, 4]
    assert rep.steps[0][1] == (3, 4)
    assert rep.mincut == 2
    doc = rep.to_json()
    json.dumps(doc)
    assert doc["mincut"] == "2" and len(doc["collector"]) == 3


def test_random_policy_is_reproducible():
    a = simulate(random_policy(6, 3, 5), P(6, 4, 3), [1, 2, 3, 1, 6], 3, 1)
    b = simulate(random_policy(6, 3, 5), P(6, 4, 3), [1, 2, 3, 1, 6], 3, 1)
    assert a.steps == b.steps and a.mincut == b.mincut


def test_stationary_policy_and_family_plus_groups():
    pol = family_plus_policy(8, 2)
    assert pol((1,)) <= {1, 2, 3, 4}
    assert pol((6,)) <= {5, 6, 7, 8}
    sp = stationary_policy([{2}, {1}, {1}])
    assert sp((3,)) == {1}


def test_adversary_game_small_cases():
    # one failure already lets the adversary close a collector over the newcomer and its helpers
    assert adversary_forces(P(4, 3, 2), 1, 1, 2, failures=1)
    assert not adversary_forces(P(4, 3, 2), 1, 1, 2, failures=0)
    # blind-optimal shape: the adversary reaches the closed form, and no lower
    p = P(4, 2, 2)
    assert adversary_forces(p, INF, 1, bhs_mincut(p, INF, 1), failures=4)
    assert not adversary_forces(p, INF, 1, bhs_mincut(p, INF, 1) - 1, failures=4)
