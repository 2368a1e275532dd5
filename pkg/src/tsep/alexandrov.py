"""Alexandrov topology generated by an arbitrary binary relation.

For a generator ``E`` a set ``O`` is open iff ``afterset(E, O) <= O``; closed
sets are the ones with ``foreset(E, C) <= C`` and the closure of ``B`` is the
``E*``-foreset of ``B``.  The family of open sets is never materialized.
"""

from __future__ import annotations

from .relation import (
    Relation,
    SizeMismatchError,
    VertexSet,
    afterset,
    compose,
    converse,
    foreset,
    iter_bits,
    reflexive_transitive_closure,
)


class GeneratedTopology:
    """The topology ``T_E`` induced by ``generator`` with ``E*`` cached."""

    __slots__ = ("generator", "star", "_star_conv")

    def __init__(self, generator: Relation, star: Relation | None = None):
        self.generator = generator
        self.star = star if star is not None else reflexive_transitive_closure(generator)
        self._star_conv: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return self.generator.n

    def is_open(self, o: VertexSet) -> bool:
        return afterset(self.generator, o).issubset(o)

    def is_closed(self, c: VertexSet) -> bool:
        return foreset(self.generator, c).issubset(c)

    def closure(self, b: VertexSet) -> VertexSet:
        if b.n != self.n:
            raise SizeMismatchError(f"universe sizes differ: {b.n} != {self.n}")
        # foreset of E* = union of converse rows
        if self._star_conv is None:
            self._star_conv = converse(self.star).rows
        conv = self._star_conv
        mask = 0
        for c in iter_bits(b.mask):
            mask |= conv[c]
        return VertexSet(self.n, mask)

    def specialization_preorder(self) -> Relation:
        return self.star

    def connected_components(self) -> list[VertexSet]:
        return connected_components(self.generator)

    def dual(self) -> GeneratedTopology:
        """The dual topology, whose opens are the closed sets of ``self``."""
        return GeneratedTopology(converse(self.generator), converse(self.star))


def topo_closure(t: GeneratedTopology, b: VertexSet) -> VertexSet:
    return t.closure(b)


def connected_components(generator: Relation) -> list[VertexSet]:
    """Classes of ``(E | E^-1)*``, ordered by smallest member."""
    sym = reflexive_transitive_closure(generator | converse(generator))
    seen = 0
    out = []
    for v in range(generator.n):
        if seen >> v & 1:
            continue
        cls = sym.rows[v]
        seen |= cls
        out.append(VertexSet(generator.n, cls))
    return out


def product_closure(t1: GeneratedTopology, t2: GeneratedTopology, rel: Relation) -> Relation:
    """Closure of ``rel`` (a subset of ``V x V``) in the product topology.

    Equals ``E1* . rel . (E2*)^-1``.
    """
    if not (t1.n == t2.n == rel.n):
        raise SizeMismatchError(f"universe sizes differ: {t1.n}, {t2.n}, {rel.n}")
    return compose(compose(t1.star, rel), converse(t2.star))
