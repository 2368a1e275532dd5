"""Executable identities of the relational calculus, checked on concrete instances.

Each law evaluates both of its sides from relation primitives (compose,
converse, closures, subdiagonals) and compares them exactly.  The relations
are rebuilt here with alternative formulas rather than taken from
:mod:`tsep.separation`, so a bug in the cached bundle cannot hide a failing
law.

Law ids::

    L1  (P^-W)*(P^W)* = D | D(W^c)B | B^- D(W^c) | K
    L2  C (P^-W)*(P^W)* = C (D | B^- D(W^c) | K)
    L3  C (P^-W)*(P^W)* C = C
    L4  C (P^-W)*(P^W)* D(W^c) = C (B^- | K) D(W^c)
    L5  D(W^c) (P^-W)*(P^W)* C = D(W^c) (B | K) C
    L6  D(W^c)(D | (B|K)C) AA C AA (D | C(B^-|K)) D(W^c) = D(W^c)(B|K) C (B^-|K) D(W^c)
    L7  D(W^c) R^- AA R D(W^c) = D(W^c) A D(W^c)
    L8  R^- AA R | R^- B^- D(W) | D(W) B R = A | R^- | R          (extended)
    L9  closure of a union is the union of closures
    L10 closure(S) is the downset of S for the specialization preorder

plus two lemma-level checks, ``witness`` and ``cousinhood``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .graph import CondContext, Graph
from .relation import (
    Relation,
    VertexSet,
    compose,
    converse,
    foreset,
    iter_bits,
    reflexive_transitive_closure,
    subdiagonal,
    transitive_closure,
)

MAX_RANDOM_N = 16
MAX_SPLIT_ENUM_W = 12


class UnknownLawError(KeyError):
    def __str__(self) -> str:
        return f"unknown law id {self.args[0]!r}"


class GeneratorBoundsError(ValueError):
    pass


@dataclass
class LawReport:
    law_id: str
    holds: bool
    counterexample: dict | None = None
    extended: bool = False
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.holds != (self.counterexample is None):
            raise ValueError("a failing report needs a counterexample and a passing one must not have one")

    def to_dict(self) -> dict:
        out: dict = {"law": self.law_id, "holds": self.holds}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.extended:
            out["extended"] = True
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class _Rel:
    """Relations rebuilt from primitives for one ``(graph, W)``."""

    n: int
    w: VertexSet
    wc: VertexSet
    delta: Relation
    d_w: Relation
    d_wc: Relation
    p_w: Relation
    star: Relation
    aa: Relation
    b: Relation
    bm: Relation
    k: Relation
    c: Relation
    a: Relation
    r: Relation
    rm: Relation
    theta: Relation = field(repr=False)
    theta_m: Relation = field(repr=False)


@lru_cache(maxsize=64)
def _relations(g: Graph, w: VertexSet) -> _Rel:
    n = g.n
    p = g.edges
    wc = w.complement()
    d_w, d_wc = subdiagonal(w), subdiagonal(wc)
    delta = Relation.identity(n)
    p_w = compose(d_wc, p)
    pm_w = compose(converse(p), d_wc)
    star = reflexive_transitive_closure(p_w)
    star_m = reflexive_transitive_closure(pm_w)
    b = compose(p, star)
    bm = compose(star_m, converse(p))
    # common cause written as (P^-W)+ (P^W)+
    k = compose(transitive_closure(pm_w), transitive_closure(p_w))
    c = transitive_closure(compose(compose(d_w, k), d_w)) | d_w
    theta = b | k
    theta_m = bm | k
    a = delta | b | bm | k | compose(compose(theta, c), theta_m)
    r = delta | compose(c, theta_m)
    rm = delta | compose(theta, c)
    return _Rel(
        n=n, w=w, wc=wc, delta=delta, d_w=d_w, d_wc=d_wc, p_w=p_w, star=star,
        aa=compose(star_m, star), b=b, bm=bm, k=k, c=c, a=a, r=r, rm=rm,
        theta=theta, theta_m=theta_m,
    )


def _chain(*rels: Relation) -> Relation:
    out = rels[0]
    for r in rels[1:]:
        out = compose(out, r)
    return out


def _law_1(x: _Rel) -> tuple[Relation, Relation]:
    return x.aa, x.delta | compose(x.d_wc, x.b) | compose(x.bm, x.d_wc) | x.k


def _law_2(x: _Rel) -> tuple[Relation, Relation]:
    return compose(x.c, x.aa), compose(x.c, x.delta | compose(x.bm, x.d_wc) | x.k)


def _law_3(x: _Rel) -> tuple[Relation, Relation]:
    return _chain(x.c, x.aa, x.c), x.c


def _law_4(x: _Rel) -> tuple[Relation, Relation]:
    return _chain(x.c, x.aa, x.d_wc), _chain(x.c, x.theta_m, x.d_wc)


def _law_5(x: _Rel) -> tuple[Relation, Relation]:
    return _chain(x.d_wc, x.aa, x.c), _chain(x.d_wc, x.theta, x.c)


def _law_6(x: _Rel) -> tuple[Relation, Relation]:
    left = x.delta | compose(x.theta, x.c)
    right = x.delta | compose(x.c, x.theta_m)
    lhs = _chain(x.d_wc, left, x.aa, x.c, x.aa, right, x.d_wc)
    rhs = _chain(x.d_wc, x.theta, x.c, x.theta_m, x.d_wc)
    return lhs, rhs


def _law_7(x: _Rel) -> tuple[Relation, Relation]:
    return _chain(x.d_wc, x.rm, x.aa, x.r, x.d_wc), _chain(x.d_wc, x.a, x.d_wc)


def _law_8(x: _Rel) -> tuple[Relation, Relation]:
    lhs = _chain(x.rm, x.aa, x.r) | _chain(x.rm, x.bm, x.d_w) | _chain(x.d_w, x.b, x.r)
    return lhs, x.a | x.rm | x.r


def smallest_closed_superset(generator: Relation, s: VertexSet) -> VertexSet:
    """Closure straight from the definition: grow ``s`` until ``foreset(E, s) <= s``."""
    cur = s
    while True:
        nxt = cur | foreset(generator, cur)
        if nxt == cur:
            return cur
        cur = nxt


def _default_family(x: _Rel) -> list[list[VertexSet]]:
    n = x.n
    singles = [VertexSet.of(n, [v]) for v in range(n)]
    fams = [[s, t] for i, s in enumerate(singles) for t in singles[i + 1:]]
    fams.append([VertexSet.of(n, [v]) for v in x.w])
    fams.append([x.w, x.wc])
    return fams


def _default_sets(x: _Rel) -> list[VertexSet]:
    n = x.n
    out = [VertexSet.of(n, [v]) for v in range(n)]
    out += [x.w, x.wc, VertexSet.full(n), VertexSet.empty(n)]
    out += [VertexSet.of(n, [u, v]) for u in range(n) for v in range(u + 1, n)]
    return out


def _union(sets: Iterable[VertexSet], n: int) -> VertexSet:
    out = VertexSet.empty(n)
    for s in sets:
        out = out | s
    return out


def _first_pair(lhs: Relation, rhs: Relation) -> tuple[int, int]:
    return next(iter(lhs.union(rhs) - lhs.intersection(rhs)))


def _graph_dict(g: Graph, w: VertexSet) -> dict:
    return {
        "nodes": list(g.names),
        "edges": [[u, v] for u, v in g.edge_labels()],
        "w": g.labels(w),
    }


# A check returns None when it holds, else a dict describing the offending item.
Check = Callable[[Graph, _Rel, dict], "dict | None"]


def _relational(fn: Callable[[_Rel], tuple[Relation, Relation]]) -> Check:
    def check(g: Graph, x: _Rel, opts: dict) -> dict | None:
        lhs, rhs = fn(x)
        if lhs == rhs:
            return None
        a, b = _first_pair(lhs, rhs)
        return {
            "pair": [g.names[a], g.names[b]],
            "in_lhs": (a, b) in lhs,
            "in_rhs": (a, b) in rhs,
        }

    return check


def _law_9(g: Graph, x: _Rel, opts: dict) -> dict | None:
    fams = opts.get("family")
    fams = [list(fams)] if fams is not None else _default_family(x)
    for fam in fams:
        lhs = smallest_closed_superset(x.p_w, _union(fam, x.n))
        rhs = _union((smallest_closed_superset(x.p_w, s) for s in fam), x.n)
        if lhs != rhs:
            return {"family": [g.labels(s) for s in fam], "lhs": g.labels(lhs), "rhs": g.labels(rhs)}
    return None


def _law_10(g: Graph, x: _Rel, opts: dict) -> dict | None:
    sets = opts.get("sets") or _default_sets(x)
    for s in sets:
        lhs = smallest_closed_superset(x.p_w, s)
        rhs = foreset(x.star, s)
        if lhs != rhs:
            return {"set": g.labels(s), "lhs": g.labels(lhs), "rhs": g.labels(rhs)}
    return None


def _closure_masks(x: _Rel) -> list[int]:
    # closure of each singleton, as a mask
    conv = converse(x.star).rows
    return list(conv)


def _witness_lemma(g: Graph, x: _Rel, opts: dict) -> dict | None:
    """If b A c, b, c outside W and their closures are disjoint, a cousin pair bridges them."""
    cl = _closure_masks(x)
    wm = x.w.mask
    outside = [v for v in range(x.n) if not wm >> v & 1]
    for b in outside:
        for c in outside:
            if b == c or (b, c) not in x.a or cl[b] & cl[c]:
                continue
            near_b = [w for w in iter_bits(wm) if cl[b] & cl[w]]
            near_c = [w for w in iter_bits(wm) if cl[c] & cl[w]]
            if not any((wb, wc) in x.c for wb in near_b for wc in near_c):
                return {"pair": [g.names[b], g.names[c]]}
    return None


def _cousin_classes(x: _Rel) -> list[int]:
    seen = 0
    out = []
    for v in iter_bits(x.w.mask):
        if not seen >> v & 1:
            cls = x.c.rows[v]
            seen |= cls
            out.append(cls)
    return out


def _cousinhood_lemma(g: Graph, x: _Rel, opts: dict) -> dict | None:
    """Distinct cousin classes have disjoint closures; closure-separating splittings never cut a class."""
    cl = _closure_masks(x)

    def closure(mask: int) -> int:
        out = 0
        for v in iter_bits(mask):
            out |= cl[v]
        return out

    classes = _cousin_classes(x)
    closures = [closure(m) for m in classes]
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if closures[i] & closures[j]:
                return {"classes": [g.labels(classes[i]), g.labels(classes[j])]}
    wm = x.w.mask
    if bin(wm).count("1") > MAX_SPLIT_ENUM_W:
        return None
    sub = 0
    while True:
        other = wm & ~sub
        if closure(sub) & closure(other) == 0:
            for cls in classes:
                if cls & sub and cls & other:
                    return {"split": [g.labels(sub), g.labels(other)], "class": g.labels(cls)}
        if sub == wm:
            return None
        sub = (sub - wm) & wm


@dataclass(frozen=True)
class Law:
    law_id: str
    check: Check
    extended: bool = False


LAWS: dict[str, Law] = {
    law.law_id: law
    for law in [
        Law("L1", _relational(_law_1)),
        Law("L2", _relational(_law_2)),
        Law("L3", _relational(_law_3)),
        Law("L4", _relational(_law_4)),
        Law("L5", _relational(_law_5)),
        Law("L6", _relational(_law_6)),
        Law("L7", _relational(_law_7)),
        Law("L8", _relational(_law_8), extended=True),
        Law("L9", _law_9),
        Law("L10", _law_10),
        Law("witness", _witness_lemma),
        Law("cousinhood", _cousinhood_lemma),
    ]
}


def _fails(law: Law, g: Graph, w: VertexSet, opts: dict) -> dict | None:
    return law.check(g, _relations(g, w), opts)


def shrink(law: Law, g: Graph, w: VertexSet, opts: dict | None = None) -> tuple[Graph, VertexSet, dict]:
    """Greedily delete vertices while the law keeps failing."""
    opts = opts or {}
    detail = _fails(law, g, w, opts)
    assert detail is not None
    progress = True
    while progress and g.n > 1:
        progress = False
        for v in range(g.n):
            keep = [u for u in range(g.n) if u != v]
            sg = g.induced_subgraph(keep)
            sw = VertexSet.of(sg.n, [i for i, u in enumerate(keep) if w.mask >> u & 1])
            d = _fails(law, sg, sw, {})
            if d is not None:
                g, w, detail, progress = sg, sw, d, True
                break
    return g, w, detail


def check_law(ctx: CondContext, law_id: str, *, minimize: bool = True, **opts) -> LawReport:
    try:
        law = LAWS[law_id]
    except KeyError:
        raise UnknownLawError(law_id) from None
    detail = _fails(law, ctx.graph, ctx.w, opts)
    if detail is None:
        return LawReport(law_id, True, extended=law.extended)
    g, w = ctx.graph, ctx.w
    if minimize and not opts:
        g, w, detail = shrink(law, g, w)
    return LawReport(law_id, False, {**_graph_dict(g, w), **detail}, extended=law.extended)


def check_all(ctx: CondContext, *, strict: bool = False) -> list[LawReport]:
    """Every law on one instance; ``strict`` skips the extended ones."""
    return [check_law(ctx, lid) for lid, law in LAWS.items() if not (strict and law.extended)]


def random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    """Each ordered pair, loops included, is an edge with probability ``edge_probability``."""
    if not isinstance(n, int) or not 1 <= n <= MAX_RANDOM_N:
        raise GeneratorBoundsError(f"n must be in [1, {MAX_RANDOM_N}], got {n}")
    if not 0.0 <= edge_probability <= 1.0:
        raise GeneratorBoundsError(f"edge probability must be in [0, 1], got {edge_probability}")
    return random_graph_unchecked(n, edge_probability, seed)


def random_graph_unchecked(n: int, edge_probability: float, seed: int) -> Graph:
    """Same procedure as :func:`random_graph` without the size bound, for benchmarks."""
    rng = random.Random(seed)
    pairs = [(a, b) for a in range(n) for b in range(n) if rng.random() < edge_probability]
    return Graph(tuple(f"v{i}" for i in range(n)), Relation.from_pairs(n, pairs))


def random_subset(rng: random.Random, n: int, p: float = 0.5) -> VertexSet:
    return VertexSet.of(n, [v for v in range(n) if rng.random() < p])


def random_instances(
    count: int, n: int | Sequence[int], p: float | Sequence[float], seed: int
) -> Iterator[tuple[int, CondContext]]:
    """Deterministic stream of ``(graph_seed, context)`` pairs."""
    rng = random.Random(seed)
    ns = [n] if isinstance(n, int) else list(n)
    ps = [p] if isinstance(p, (int, float)) else list(p)
    for _ in range(count):
        gseed = rng.getrandbits(32)
        g = random_graph(rng.choice(ns), rng.choice(ps), gseed)
        yield gseed, CondContext(g, random_subset(rng, g.n))


def all_graphs(n: int) -> Iterator[Graph]:
    """Every graph on ``n`` labelled vertices, loops included."""
    names = tuple(f"v{i}" for i in range(n))
    for code in range(1 << (n * n)):
        rows = tuple((code >> (i * n)) & ((1 << n) - 1) for i in range(n))
        yield Graph(names, Relation(n, rows))


def all_contexts(n: int) -> Iterator[CondContext]:
    for g in all_graphs(n):
        for wm in range(1 << n):
            yield CondContext(g, VertexSet(n, wm))
