"""Independent baselines for cross-validation.

Nothing here touches the relation algebra: the classical criterion walks
simple undirected paths, and the splitting search enumerates every
splitting of ``W`` using plain Python sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import CondContext, Graph
from .relation import VertexSet
from .separation import SplitCertificate, Vertex, VertexLike, _vset, check_disjoint

MAX_BRUTE_FORCE_W = 20


class OracleScopeError(ValueError):
    """The query is outside what the classical baseline covers."""


def _adjacency(g: Graph) -> tuple[list[set[int]], list[set[int]]]:
    children: list[set[int]] = [set() for _ in range(g.n)]
    parents: list[set[int]] = [set() for _ in range(g.n)]
    for a, b in g.edges.pairs():
        children[a].add(b)
        parents[b].add(a)
    return children, parents


def is_dag(g: Graph) -> bool:
    children, _ = _adjacency(g)
    state = [0] * g.n  # 0 new, 1 on stack, 2 done
    for root in range(g.n):
        if state[root]:
            continue
        stack = [(root, iter(children[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for u in it:
                if state[u] == 1:
                    return False
                if state[u] == 0:
                    state[u] = 1
                    stack.append((u, iter(children[u])))
                    break
            else:
                state[v] = 2
                stack.pop()
    return True


@dataclass(frozen=True)
class UndirectedPath:
    """Vertices ``v0 .. vk`` with ``forward[i]`` true iff ``v_i -> v_{i+1}``."""

    vertices: tuple[int, ...]
    forward: tuple[bool, ...]

    def colliders(self) -> list[int]:
        return [
            self.vertices[i]
            for i in range(1, len(self.vertices) - 1)
            if self.forward[i - 1] and not self.forward[i]
        ]


def _descendants(children: list[set[int]], v: int) -> set[int]:
    seen = {v}
    todo = [v]
    while todo:
        x = todo.pop()
        for y in children[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def simple_paths(g: Graph, b: int, c: int) -> Iterator[UndirectedPath]:
    """Every simple path between ``b`` and ``c`` in the skeleton of ``g``."""
    children, parents = _adjacency(g)
    path = [b]
    fwd: list[bool] = []
    on_path = {b}

    def extend(v: int) -> Iterator[UndirectedPath]:
        if v == c:
            yield UndirectedPath(tuple(path), tuple(fwd))
            return
        steps = [(u, True) for u in sorted(children[v])] + [(u, False) for u in sorted(parents[v])]
        for u, forward in steps:
            if u in on_path:
                continue
            path.append(u)
            fwd.append(forward)
            on_path.add(u)
            yield from extend(u)
            on_path.discard(u)
            fwd.pop()
            path.pop()

    yield from extend(b)


def path_is_blocked(path: UndirectedPath, w: set[int], desc: dict[int, set[int]]) -> bool:
    for i in range(1, len(path.vertices) - 1):
        v = path.vertices[i]
        collider = path.forward[i - 1] and not path.forward[i]
        if collider:
            if not desc[v] & w:
                return True
        elif v in w:
            return True
    return False


def pearl_d_separated(g: Graph, w: VertexSet | set[int], b: Vertex, c: Vertex) -> bool:
    """Classical criterion: every simple path from ``b`` to ``c`` is blocked by ``w``.

    A path is blocked when one of its interior vertices is a non-collider in
    ``w`` or a collider none of whose descendants (itself included) is in
    ``w``.  Prefixes that are already blocked are not extended.
    """
    if not is_dag(g):
        raise OracleScopeError("classical d-separation oracle requires an acyclic graph")
    ctx_w = set(w) if not isinstance(w, VertexSet) else set(w.members())
    bi = g.index(b) if isinstance(b, str) else b
    ci = g.index(c) if isinstance(c, str) else c
    if bi == ci:
        raise OracleScopeError("degenerate query: both endpoints are the same vertex")
    if bi in ctx_w or ci in ctx_w:
        raise OracleScopeError("endpoints must lie outside the conditioning set")

    children, parents = _adjacency(g)
    open_collider = {v for v in range(g.n) if _descendants(children, v) & ctx_w}
    on_path = {bi}

    # into_v: whether the edge used to reach v points into v
    def search(v: int, into_v: bool) -> bool:
        for u, forward in [(u, True) for u in children[v]] + [(u, False) for u in parents[v]]:
            if u in on_path:
                continue
            if v != bi:
                if into_v and not forward:
                    if v not in open_collider:
                        continue
                elif v in ctx_w:
                    continue
            if u == ci:
                return True
            on_path.add(u)
            found = search(u, forward)
            on_path.discard(u)
            if found:
                return True
        return False

    return not search(bi, False)


def _closure(parents: list[set[int]], w: set[int], start: set[int]) -> set[int]:
    reached = set(start)
    todo = list(start)
    while todo:
        x = todo.pop()
        for p in parents[x]:
            if p not in w and p not in reached:
                reached.add(p)
                todo.append(p)
    return reached


def brute_force_splittings(ctx: CondContext, b: VertexLike, c: VertexLike) -> Iterator[SplitCertificate]:
    """All valid splittings, in increasing order of the ``W_B`` bitmask."""
    bs, cs = _vset(ctx, b), _vset(ctx, c)
    check_disjoint(ctx, bs, cs)
    if len(ctx.w) > MAX_BRUTE_FORCE_W:
        raise OracleScopeError(f"|W| = {len(ctx.w)} exceeds enumeration bound {MAX_BRUTE_FORCE_W}")
    _, parents = _adjacency(ctx.graph)
    w = set(ctx.w.members())
    wmask = ctx.w.mask
    bset, cset = set(bs.members()), set(cs.members())
    sub = 0
    while True:
        wb = {v for v in w if sub >> v & 1}
        wc = w - wb
        if not _closure(parents, w, bset | wb) & _closure(parents, w, cset | wc):
            yield SplitCertificate(VertexSet.of(ctx.n, wb), VertexSet.of(ctx.n, wc))
        if sub == wmask:
            return
        sub = (sub - wmask) & wmask


def brute_force_splitting(ctx: CondContext, b: VertexLike, c: VertexLike) -> SplitCertificate | None:
    return next(brute_force_splittings(ctx, b, c), None)



def pearl_d_separated_naive(g: Graph, w: VertexSet | set[int], b: int, c: int) -> bool:
    """Same verdict as :func:`pearl_d_separated` by full path enumeration, no pruning."""
    ws = set(w) if not isinstance(w, VertexSet) else set(w.members())
    children, _ = _adjacency(g)
    desc = {v: _descendants(children, v) for v in range(g.n)}
    return all(path_is_blocked(p, ws, desc) for p in simple_paths(g, b, c))
