import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import relations, vertex_sets
from tsep.relation import (
    Relation,
    SizeMismatchError,
    VertexSet,
    afterset,
    compose,
    converse,
    diagonal,
    foreset,
    reflexive_transitive_closure,
    subdiagonal,
    transitive_closure,
    transitive_closure_squaring,
)


def rel(n, *pairs):
    return Relation.from_pairs(n, pairs)


def same_size_pair(k=2, max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(*[relations(n=n)] * k))


class TestExamples:
    def test_compose(self):
        assert compose(rel(3, (0, 1)), rel(3, (1, 2))) == rel(3, (0, 2))
        assert compose(rel(4, (0, 1), (0, 2)), rel(4, (1, 3), (2, 3))) == rel(4, (0, 3))

    def test_compose_size_mismatch(self):
        with pytest.raises(SizeMismatchError):
            compose(Relation.empty(2), Relation.empty(3))
        with pytest.raises(SizeMismatchError):
            Relation.empty(2) | Relation.empty(3)

    def test_converse(self):
        assert converse(rel(2, (0, 1))) == rel(2, (1, 0))
        assert converse(diagonal(3)) == diagonal(3)
        sym = rel(2, (0, 1), (1, 0))
        assert converse(sym) == sym

    def test_transitive_closure(self):
        assert transitive_closure(rel(3, (0, 1), (1, 2))) == rel(3, (0, 1), (1, 2), (0, 2))
        assert transitive_closure(rel(3, (0, 1), (1, 2), (2, 0))) == Relation.full(3)
        assert transitive_closure(Relation.empty(3)) == Relation.empty(3)

    def test_reflexive_transitive_closure(self):
        assert reflexive_transitive_closure(Relation.empty(2)) == rel(2, (0, 0), (1, 1))
        assert reflexive_transitive_closure(rel(2, (0, 1))) == rel(2, (0, 0), (1, 1), (0, 1))

    def test_subdiagonal(self):
        assert subdiagonal(VertexSet.of(3, [1])) == rel(3, (1, 1))
        assert subdiagonal(VertexSet.empty(3)) == Relation.empty(3)
        assert subdiagonal(VertexSet.full(3)) == diagonal(3)

    def test_foreset(self):
        r = rel(3, (0, 1), (2, 1))
        assert foreset(r, VertexSet.of(3, [1])) == VertexSet.of(3, [0, 2])
        assert foreset(r, VertexSet.empty(3)) == VertexSet.empty(3)
        assert foreset(diagonal(3), VertexSet.of(3, [0, 2])) == VertexSet.of(3, [0, 2])

    def test_lattice_ops(self):
        assert rel(2, (0, 1)) | rel(2, (1, 0)) == rel(2, (0, 1), (1, 0))
        assert Relation.empty(2).complement() == Relation.full(2)
        assert len(Relation.full(2)) == 4

    def test_predicates(self):
        d = diagonal(3).predicates()
        assert d["reflexive"] and d["symmetric"] and d["transitive"] and d["preorder"]
        single = rel(2, (0, 1)).predicates()
        assert not single["symmetric"] and single["antisymmetric"] and single["transitive"]
        swap = rel(2, (0, 1), (1, 0)).predicates()
        assert swap["symmetric"] and not swap["antisymmetric"] and not swap["transitive"]

    def test_render_is_sorted(self):
        assert rel(3, (2, 0), (0, 2), (0, 1)).render() == "0->1, 0->2, 2->0"

    def test_out_of_range_pair_rejected(self):
        with pytest.raises(ValueError):
            rel(2, (0, 2))
        with pytest.raises(ValueError):
            VertexSet.of(2, [5])


class TestProperties:
    @given(same_size_pair(3))
    def test_compose_associative(self, rst):
        r, s, t = rst
        assert compose(compose(r, s), t) == compose(r, compose(s, t))

    @given(same_size_pair(2))
    def test_converse_anti_homomorphism(self, rs):
        r, s = rs
        assert converse(converse(r)) == r
        assert converse(compose(r, s)) == compose(converse(s), converse(r))

    @given(relations())
    def test_identity_is_neutral(self, r):
        d = diagonal(r.n)
        assert compose(d, r) == r == compose(r, d)

    @given(relations(max_n=8))
    def test_warshall_matches_squaring(self, r):
        assert transitive_closure(r) == transitive_closure_squaring(r)

    @given(relations())
    def test_closure_laws(self, r):
        tc = transitive_closure(r)
        assert r <= tc
        assert tc.is_transitive()
        assert transitive_closure(tc) == tc

    @given(same_size_pair(2))
    def test_closure_monotone(self, rs):
        r, s = rs
        lo = r & s
        assert transitive_closure(lo) <= transitive_closure(r)

    @given(relations())
    def test_rtc_is_fixpoint_within_n_steps(self, r):
        d = diagonal(r.n)
        x = d
        for _ in range(r.n):
            x = d | compose(r, x)
        assert x == reflexive_transitive_closure(r)
        assert d | compose(r, x) == x

    @given(relations())
    def test_rtc_of_preorder_is_itself(self, r):
        p = reflexive_transitive_closure(r)
        assert p.is_preorder()
        assert reflexive_transitive_closure(p) == p

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(relations(n=n), vertex_sets(n), vertex_sets(n))))
    def test_foreset_distributes_over_union(self, args):
        r, c1, c2 = args
        assert foreset(r, c1 | c2) == foreset(r, c1) | foreset(r, c2)
        assert foreset(r, c1) == afterset(converse(r), c1)

    @given(relations())
    def test_foreset_matches_definition(self, r):
        for c in range(r.n):
            expected = {a for a, b in r.pairs() if b == c}
            assert set(foreset(r, VertexSet.of(r.n, [c]))) == expected

    @given(same_size_pair(2))
    def test_compose_matches_definition(self, rs):
        r, s = rs
        expected = {(a, c) for a, b in r.pairs() for b2, c in s.pairs() if b == b2}
        assert set(compose(r, s).pairs()) == expected

    @given(relations())
    def test_boolean_laws(self, r):
        assert r & r.complement() == Relation.empty(r.n)
        assert r.complement().complement() == r
        assert r | r == r == r & r

    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(vertex_sets(n), vertex_sets(n))))
    def test_vertex_set_algebra(self, ab):
        a, b = ab
        assert ~~a == a
        assert a | b == b | a and a & b == b & a
        assert a | a == a and a & a == a
        assert (a - b).isdisjoint(b)

    @given(relations())
    def test_predicates_match_quantified_definitions(self, r):
        pairs = set(r.pairs())
        v = range(r.n)
        flags = r.predicates()
        assert flags["reflexive"] == all((x, x) in pairs for x in v)
        assert flags["symmetric"] == all((y, x) in pairs for x, y in pairs)
        assert flags["antisymmetric"] == all(x == y or (y, x) not in pairs for x, y in pairs)
        assert flags["transitive"] == all(
            (x, z) in pairs for x, y in pairs for y2, z in pairs if y == y2
        )
        assert flags["partial_equivalence"] == (flags["symmetric"] and flags["transitive"])

    @given(relations())
    def test_hash_and_equality_are_canonical(self, r):
        again = Relation.from_pairs(r.n, list(r.pairs()))
        assert again == r and hash(again) == hash(r)
