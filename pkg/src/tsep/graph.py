"""Graphs with named vertices, the edge-list text format and the JSON schema.

Edge-list format::

    # comment
    a -> m
    m -> c
    node z        # isolated vertex

Vertices are indexed in order of first appearance.  The parent relation is
the edge relation itself: ``b P c`` iff ``b -> c`` is an edge.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .relation import Relation, VertexSet, converse_rows, iter_bits


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class EmptyGraphError(GraphError):
    def __init__(self):
        super().__init__("graph has no vertices")


class SchemaError(GraphError):
    pass


class UnknownVertexError(GraphError, KeyError):
    def __init__(self, label: str):
        super().__init__(f"unknown vertex {label}")
        self.label = label

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class Graph:
    names: tuple[str, ...]
    edges: Relation
    _index: dict[str, int] = field(init=False, repr=False, compare=False)
    _parents: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if any(not isinstance(x, str) or not x for x in names):
            raise GraphError("vertex labels must be non-empty strings")
        if len(set(names)) != len(names):
            raise GraphError("vertex labels must be unique")
        if self.edges.n != len(names):
            raise GraphError(
                f"edge relation has universe {self.edges.n}, expected {len(names)}"
            )
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(names)})
        object.__setattr__(self, "_parents", converse_rows(self.edges.rows))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], nodes: Iterable[str] = ()) -> Graph:
        names: dict[str, int] = {}
        for x in nodes:
            names.setdefault(x, len(names))
        pairs = []
        for u, v in edges:
            names.setdefault(u, len(names))
            names.setdefault(v, len(names))
            pairs.append((names[u], names[v]))
        return cls(tuple(names), Relation.from_pairs(len(names), pairs))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def parent_masks(self) -> tuple[int, ...]:
        """``parent_masks[v]`` has bit ``u`` set iff ``u -> v``."""
        return self._parents

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertexError(label) from None

    def vertex_set(self, labels: Iterable[str]) -> VertexSet:
        return VertexSet.of(self.n, (self.index(x) for x in labels))

    def labels(self, s: VertexSet | int) -> list[str]:
        mask = s.mask if isinstance(s, VertexSet) else s
        return [self.names[i] for i in iter_bits(mask)]

    def edge_labels(self) -> list[tuple[str, str]]:
        return [(self.names[a], self.names[b]) for a, b in self.edges.pairs()]

    def induced_subgraph(self, keep: Sequence[int]) -> Graph:
        keep = sorted(keep)
        pos = {v: i for i, v in enumerate(keep)}
        pairs = [(pos[a], pos[b]) for a, b in self.edges.pairs() if a in pos and b in pos]
        return Graph(tuple(self.names[v] for v in keep), Relation.from_pairs(len(keep), pairs))


@dataclass(frozen=True)
class CondContext:
    graph: Graph
    w: VertexSet

    def __post_init__(self) -> None:
        if self.w.n != self.graph.n:
            raise GraphError("conditioning set lives on a different universe")

    @classmethod
    def of(cls, graph: Graph, w_labels: Iterable[str] = ()) -> CondContext:
        return cls(graph, graph.vertex_set(w_labels))

    @property
    def n(self) -> int:
        return self.graph.n


def parent_relation(g: Graph) -> Relation:
    return g.edges


_EDGE_RE = re.compile(r"^(\S+)\s*->\s*(\S+)$")
_NODE_RE = re.compile(r"^node\s+(\S+)$")


def parse_edge_list(text: str) -> Graph:
    names: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _NODE_RE.match(line)
        if m:
            names.setdefault(m.group(1), len(names))
            continue
        m = _EDGE_RE.match(line)
        if not m or "->" in m.group(1) or "->" in m.group(2):
            raise ParseError(lineno, f"expected 'u -> v' or 'node u', got {raw.strip()!r}")
        u, v = m.groups()
        names.setdefault(u, len(names))
        names.setdefault(v, len(names))
        pairs.append((names[u], names[v]))
    if not names:
        raise EmptyGraphError()
    return Graph(tuple(names), Relation.from_pairs(len(names), pairs))


def render_edge_list(g: Graph) -> str:
    """Canonical text: every vertex declared in index order, then edges sorted by index."""
    lines = [f"node {x}" for x in g.names]
    lines += [f"{u} -> {v}" for u, v in g.edge_labels()]
    return "\n".join(lines) + "\n"


def to_dict(g: Graph) -> dict:
    return {"nodes": list(g.names), "edges": [[u, v] for u, v in g.edge_labels()]}


def from_dict(data: object) -> Graph:
    if not isinstance(data, dict):
        raise SchemaError("graph JSON must be an object")
    extra = set(data) - {"nodes", "edges"}
    if extra:
        raise SchemaError(f"unknown field(s): {', '.join(sorted(extra))}")
    nodes = data.get("nodes", [])
    edges = data.get("edges", [])
    if not isinstance(nodes, list) or not all(isinstance(x, str) and x for x in nodes):
        raise SchemaError("'nodes' must be a list of non-empty strings")
    if len(set(nodes)) != len(nodes):
        raise SchemaError("'nodes' contains duplicates")
    if not isinstance(edges, list):
        raise SchemaError("'edges' must be a list of [u, v] pairs")
    for e in edges:
        if not (
            isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) and x for x in e)
        ):
            raise SchemaError(f"malformed edge {e!r}; expected [u, v] with string labels")
    g = Graph.from_edges(((u, v) for u, v in edges), nodes=nodes)
    if g.n == 0:
        raise EmptyGraphError()
    return g


def to_json(g: Graph) -> str:
    return json.dumps(to_dict(g))


def from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_dict(data)


def load_graph(text: str) -> Graph:
    """Parse either format, choosing JSON when the text starts with ``{``."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_edge_list(text)
