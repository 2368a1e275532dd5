import random

import pytest
from hypothesis import given

from conftest import contexts, ctx
from tsep.graph import parse_edge_list
from tsep.lawcheck import random_graph, random_subset
from tsep.oracle import (
    MAX_BRUTE_FORCE_W,
    OracleScopeError,
    brute_force_splitting,
    brute_force_splittings,
    is_dag,
    pearl_d_separated,
    pearl_d_separated_naive,
    simple_paths,
)
from tsep.graph import CondContext, Graph
from tsep.relation import Relation, VertexSet
from tsep.separation import SplitCertificate, d_separated, verify_splitting


def random_dag(rng, n, p):
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(tuple(f"v{i}" for i in range(n)), Relation.from_pairs(n, pairs))


class TestIsDag:
    def test_examples(self, chain):
        assert is_dag(chain)
        assert not is_dag(parse_edge_list("a -> b\nb -> a"))
        assert not is_dag(parse_edge_list("a -> a"))


class TestPearl:
    def test_examples(self, chain, collider, fork):
        assert pearl_d_separated(chain, chain.vertex_set(["m"]), "a", "c")
        assert not pearl_d_separated(collider, collider.vertex_set(["w"]), "a", "c")
        assert not pearl_d_separated(fork, VertexSet.empty(3), "a", "c")

    def test_descendant_of_collider_opens_path(self):
        g = parse_edge_list("a -> w\nc -> w\nw -> d")
        assert not pearl_d_separated(g, g.vertex_set(["d"]), "a", "c")
        assert pearl_d_separated(g, VertexSet.empty(4), "a", "c")

    def test_scope_errors(self, chain):
        with pytest.raises(OracleScopeError, match="acyclic"):
            pearl_d_separated(parse_edge_list("a -> b\nb -> a\nc -> a"), VertexSet.empty(3), "a", "c")
        with pytest.raises(OracleScopeError, match="same vertex"):
            pearl_d_separated(chain, VertexSet.empty(3), "a", "a")
        with pytest.raises(OracleScopeError, match="outside"):
            pearl_d_separated(chain, chain.vertex_set(["a"]), "a", "c")

    def test_simple_paths_of_diamond(self):
        g = parse_edge_list("a -> b\na -> c\nb -> d\nc -> d")
        paths = {tuple(g.names[v] for v in p.vertices) for p in simple_paths(g, 0, 3)}
        assert paths == {("a", "b", "d"), ("a", "c", "d")}

    def test_pruned_search_matches_full_enumeration(self):
        rng = random.Random(11)
        for _ in range(400):
            n = rng.randint(2, 7)
            g = random_dag(rng, n, rng.choice([0.2, 0.4, 0.6]))
            w = random_subset(rng, n, 0.3)
            out = [v for v in range(n) if v not in w]
            for b in out:
                for c in out:
                    if b < c:
                        assert pearl_d_separated(g, w, b, c) == pearl_d_separated_naive(g, w, b, c)

    def test_relational_verdict_matches_on_dags(self):
        rng = random.Random(5)
        for _ in range(300):
            n = rng.randint(2, 8)
            g = random_dag(rng, n, rng.choice([0.2, 0.4]))
            c = CondContext(g, random_subset(rng, n, 0.3))
            out = [v for v in range(n) if v not in c.w]
            for b in out:
                for x in out:
                    if b != x:
                        assert pearl_d_separated(g, c.w, b, x) == d_separated(c, b, x)


class TestBruteForceSplitting:
    def test_examples(self, chain, collider, fork):
        got = brute_force_splitting(ctx(chain, "m"), ["a"], ["c"])
        assert got == SplitCertificate(chain.vertex_set(["m"]), VertexSet.empty(3))
        assert brute_force_splitting(ctx(collider, "w"), ["a"], ["c"]) is None
        g = parse_edge_list("a -> b\nnode c")
        empty = brute_force_splitting(ctx(g), ["a"], ["c"])
        assert empty == SplitCertificate(VertexSet.empty(3), VertexSet.empty(3))

    def test_enumeration_order(self):
        g = parse_edge_list("node b\nnode c\nnode x\nnode y")
        found = list(brute_force_splittings(ctx(g, "x", "y"), ["b"], ["c"]))
        assert [f.w_b.mask for f in found] == [0b0000, 0b0100, 0b1000, 0b1100]

    def test_scope_guard(self):
        n = MAX_BRUTE_FORCE_W + 3
        g = Graph(tuple(f"v{i}" for i in range(n)), Relation.empty(n))
        c = CondContext(g, VertexSet.of(n, range(2, n)))
        with pytest.raises(OracleScopeError):
            brute_force_splitting(c, [0], [1])

    @given(contexts(max_n=6))
    def test_every_enumerated_splitting_verifies(self, c):
        free = [v for v in range(c.n) if v not in c.w]
        if len(free) < 2:
            return
        b, x = [free[0]], [free[-1]]
        for cert in brute_force_splittings(c, b, x):
            assert verify_splitting(c, b, x, cert)
