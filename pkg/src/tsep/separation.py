"""Conditional relations, d-separation, t-separation and splitting certificates.

Everything here is parametrized by a graph ``(V, E)`` with parent relation
``P = E`` and a conditioning set ``W``:

* ``P^W   = D(W^c) P``              parent steps leaving ``W^c``
* ``B^W   = P (P^W)*``              ancestor chains with intermediates outside ``W``
* ``K^W   = B^-W D(W^c) B^W``       common cause outside ``W``
* ``C^W   = (D(W) K^W D(W))+ | D(W)``  cousinhood, an equivalence on ``W``
* ``A^W   = D | B | B^- | K | (B|K) C (B^-|K)``  active relation
* ``R^W   = D | C (B^- | K)``

where ``D(S)`` is the subdiagonal of ``S``.  Two vertices are d-separated iff
they are not ``A^W``-related; they are t-separated iff the ``P^W``-closures of
their ``R^W``-foresets are disjoint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .alexandrov import GeneratedTopology
from .graph import CondContext, Graph, SchemaError
from .relation import (
    Relation,
    VertexSet,
    compose,
    converse,
    iter_bits,
    reflexive_transitive_closure,
    subdiagonal,
    transitive_closure,
)

Vertex = Union[int, str]
VertexLike = Union[VertexSet, Iterable[Vertex]]


class PreconditionError(ValueError):
    """The query sets violate ``B & C = B & W = C & W = {}``."""


class InvalidCertificateError(ValueError):
    """A certificate that is not a splitting of ``W``."""


@dataclass(frozen=True)
class ConditionalRelations:
    w: VertexSet
    p: Relation
    p_w: Relation
    star: Relation
    star_conv: Relation
    b_w: Relation
    b_minus_w: Relation
    k_w: Relation
    c_w: Relation
    a_w: Relation
    r_w: Relation
    r_minus_w: Relation
    topology: GeneratedTopology

    @property
    def n(self) -> int:
        return self.p.n

    def closure(self, s: VertexSet | int) -> int:
        """``P^W``-closure as a mask; accepts a mask or a VertexSet."""
        mask = s.mask if isinstance(s, VertexSet) else s
        conv = self.star_conv.rows
        out = 0
        for v in iter_bits(mask):
            out |= conv[v]
        return out

    def r_foreset(self, s: VertexSet | int) -> int:
        mask = s.mask if isinstance(s, VertexSet) else s
        conv = self.r_minus_w.rows
        out = 0
        for v in iter_bits(mask):
            out |= conv[v]
        return out

    def active(self, b: int, c: int) -> bool:
        return bool(self.a_w.rows[b] >> c & 1)

    def d_separated(self, b: int, c: int) -> bool:
        return not self.a_w.rows[b] >> c & 1

    def t_separated(self, b: int, c: int) -> bool:
        cb = self.closure(self.r_foreset(1 << b))
        cc = self.closure(self.r_foreset(1 << c))
        return cb & cc == 0


def _build(g: Graph, w: VertexSet) -> ConditionalRelations:
    n = g.n
    p = g.edges
    wc = w.complement()
    p_w = p.restrict(left=wc)
    star = reflexive_transitive_closure(p_w)
    b_w = compose(p, star)
    b_minus_w = converse(b_w)
    k_w = compose(b_minus_w, b_w.restrict(left=wc))
    d_w = subdiagonal(w)
    c_w = transitive_closure(k_w.restrict(w, w)) | d_w
    theta = b_w | k_w
    theta_minus = b_minus_w | k_w
    delta = Relation.identity(n)
    a_w = delta | b_w | b_minus_w | k_w | compose(compose(theta, c_w), theta_minus)
    r_w = delta | compose(c_w, theta_minus)
    star_conv = converse(star)
    return ConditionalRelations(
        w=w,
        p=p,
        p_w=p_w,
        star=star,
        star_conv=star_conv,
        b_w=b_w,
        b_minus_w=b_minus_w,
        k_w=k_w,
        c_w=c_w,
        a_w=a_w,
        r_w=r_w,
        r_minus_w=converse(r_w),
        topology=GeneratedTopology(p_w, star),
    )


_build_cached = lru_cache(maxsize=512)(_build)


def build_conditional(ctx: CondContext) -> ConditionalRelations:
    return _build_cached(ctx.graph, ctx.w)


def _vertex(ctx: CondContext, v: Vertex) -> int:
    if isinstance(v, str):
        return ctx.graph.index(v)
    if not 0 <= v < ctx.n:
        raise IndexError(f"vertex index {v} outside graph of size {ctx.n}")
    return v


def _vset(ctx: CondContext, s: VertexLike) -> VertexSet:
    if isinstance(s, VertexSet):
        if s.n != ctx.n:
            raise ValueError("vertex set lives on a different universe")
        return s
    return VertexSet.of(ctx.n, (_vertex(ctx, v) for v in s))


def d_separated(ctx: CondContext, b: Vertex, c: Vertex) -> bool:
    return build_conditional(ctx).d_separated(_vertex(ctx, b), _vertex(ctx, c))


def t_separated(ctx: CondContext, b: Vertex, c: Vertex) -> bool:
    return build_conditional(ctx).t_separated(_vertex(ctx, b), _vertex(ctx, c))


def check_disjoint(ctx: CondContext, b: VertexSet, c: VertexSet) -> None:
    g, w = ctx.graph, ctx.w
    for label, x, y in (("B and C", b, c), ("B and W", b, w), ("C and W", c, w)):
        common = x.mask & y.mask
        if common:
            raise PreconditionError(f"{label} intersect at {g.labels(common)}")


def t_separated_sets(ctx: CondContext, b: VertexLike, c: VertexLike) -> bool:
    bs, cs = _vset(ctx, b), _vset(ctx, c)
    check_disjoint(ctx, bs, cs)
    rel = build_conditional(ctx)
    return all(rel.t_separated(x, y) for x in bs for y in cs)


@dataclass(frozen=True)
class SplitCertificate:
    w_b: VertexSet
    w_c: VertexSet

    def is_splitting_of(self, w: VertexSet) -> bool:
        return self.w_b.mask & self.w_c.mask == 0 and (self.w_b.mask | self.w_c.mask) == w.mask

    def to_dict(self, g: Graph) -> dict:
        return {"w_b": g.labels(self.w_b), "w_c": g.labels(self.w_c)}

    def to_json(self, g: Graph) -> str:
        return json.dumps(self.to_dict(g), separators=(",", ":"))

    @classmethod
    def from_dict(cls, g: Graph, data: object) -> SplitCertificate:
        if not isinstance(data, dict) or set(data) != {"w_b", "w_c"}:
            raise SchemaError('certificate must be an object with exactly "w_b" and "w_c"')
        for key in ("w_b", "w_c"):
            if not isinstance(data[key], list) or not all(isinstance(x, str) for x in data[key]):
                raise SchemaError(f"certificate field {key!r} must be a list of labels")
        return cls(g.vertex_set(data["w_b"]), g.vertex_set(data["w_c"]))

    @classmethod
    def from_json(cls, g: Graph, text: str) -> SplitCertificate:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid certificate JSON: {exc}") from None
        return cls.from_dict(g, data)


def cousinhood_classes(ctx: CondContext) -> list[VertexSet]:
    """Partition of ``W`` into ``C^W`` classes, ordered by smallest member."""
    rel = build_conditional(ctx)
    rows = rel.c_w.rows
    seen = 0
    out = []
    for v in iter_bits(ctx.w.mask):
        if seen >> v & 1:
            continue
        seen |= rows[v]
        out.append(VertexSet(ctx.n, rows[v]))
    return out


def find_splitting(ctx: CondContext, b: VertexLike, c: VertexLike) -> SplitCertificate | None:
    """Construct a splitting ``W = W_B | W_C`` with disjoint closures, or ``None``.

    ``W_B`` starts from the cousins of the ``R^W``-partners of ``B`` (likewise
    ``W_C``); every cousinhood class of the remainder then joins ``W_B`` when
    its closure misses the closure of ``C | W_C``, and ``W_C`` otherwise.
    """
    bs, cs = _vset(ctx, b), _vset(ctx, c)
    check_disjoint(ctx, bs, cs)
    n, w = ctx.n, ctx.w
    if not cs:
        return SplitCertificate(w, VertexSet.empty(n))
    if not bs:
        return SplitCertificate(VertexSet.empty(n), w)
    rel = build_conditional(ctx)
    if not all(rel.t_separated(x, y) for x in bs for y in cs):
        return None

    # W'_B = C^W (B^-W | K^W) B, a subset of W; R^W = D | C^W (B^-W | K^W)
    w_b = rel.r_foreset(bs.mask) & w.mask
    w_c = rel.r_foreset(cs.mask) & w.mask
    closure_c = rel.closure(cs.mask | w_c)
    remainder = w.mask & ~(w_b | w_c)
    c_rows = rel.c_w.rows
    extra_b = extra_c = 0
    seen = 0
    for v in iter_bits(remainder):
        if seen >> v & 1:
            continue
        part = c_rows[v] & remainder
        seen |= part
        if rel.closure(part) & closure_c == 0:
            extra_b |= part
        else:
            extra_c |= part
    return SplitCertificate(VertexSet(n, w_b | extra_b), VertexSet(n, w_c | extra_c))


def conditional_closure(g: Graph, w: VertexSet | int, s: VertexSet | int) -> int:
    """``P^W``-closure of ``s`` by backward search from ``s`` through parents outside ``W``.

    Does not build any conditional relation; this is the cheap path used for
    certificate checking.
    """
    wmask = w.mask if isinstance(w, VertexSet) else w
    reached = s.mask if isinstance(s, VertexSet) else s
    allowed = ((1 << g.n) - 1) & ~wmask
    parents = g.parent_masks
    frontier = reached
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= parents[v]
        frontier = nxt & allowed & ~reached
        reached |= frontier
    return reached


def verify_splitting(
    ctx: CondContext, b: VertexLike, c: VertexLike, cert: SplitCertificate
) -> bool:
    if not cert.is_splitting_of(ctx.w):
        raise InvalidCertificateError("certificate is not a splitting of W")
    bs, cs = _vset(ctx, b), _vset(ctx, c)
    g, w = ctx.graph, ctx.w
    left = conditional_closure(g, w, bs.mask | cert.w_b.mask)
    right = conditional_closure(g, w, cs.mask | cert.w_c.mask)
    return left & right == 0
