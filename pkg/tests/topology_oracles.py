"""Brute-force topology oracles that only use pair sets and subset enumeration."""

from itertools import product

from tsep.relation import Relation, VertexSet


def subsets(n):
    return [VertexSet(n, m) for m in range(1 << n)]


def opens_by_definition(e: Relation) -> list[int]:
    pairs = list(e.pairs())
    return [m for m in range(1 << e.n) if all(not (m >> a & 1) or m >> b & 1 for a, b in pairs)]


def smallest_closed_superset(e: Relation, mask: int) -> int:
    pairs = list(e.pairs())
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            if mask >> b & 1 and not mask >> a & 1:
                mask |= 1 << a
                changed = True
    return mask


def union_find_components(e: Relation) -> list[set[int]]:
    parent = list(range(e.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in e.pairs():
        parent[find(a)] = find(b)
    groups: dict[int, set[int]] = {}
    for v in range(e.n):
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=min)


def clopen_components(e: Relation) -> list[set[int]]:
    """Component of v as the intersection of every clopen set containing v."""
    opens = set(opens_by_definition(e))
    full = (1 << e.n) - 1
    clopen = [m for m in opens if full & ~m in opens]
    out = []
    for v in range(e.n):
        acc = full
        for m in clopen:
            if m >> v & 1:
                acc &= m
        comp = {u for u in range(e.n) if acc >> u & 1}
        if comp not in out:
            out.append(comp)
    return sorted(out, key=min)


def product_closure_fixpoint(e1: Relation, e2: Relation, rel: Relation) -> Relation:
    """Smallest superset closed under single-coordinate generator steps."""
    pts = set(rel.pairs())
    p1, p2 = list(e1.pairs()), list(e2.pairs())
    changed = True
    while changed:
        changed = False
        for x, y in list(pts):
            for a, b in p1:
                if b == x and (a, y) not in pts:
                    pts.add((a, y))
                    changed = True
            for a, b in p2:
                if b == y and (x, a) not in pts:
                    pts.add((x, a))
                    changed = True
    return Relation.from_pairs(rel.n, pts)


def product_closure_rectangles(e1: Relation, e2: Relation, rel: Relation) -> Relation:
    """(b, c) is in the closure iff every open rectangle around it meets ``rel``."""
    n = rel.n
    o1, o2 = opens_by_definition(e1), opens_by_definition(e2)
    pts = set(rel.pairs())
    out = []
    for b, c in product(range(n), repeat=2):
        if all(
            any(m1 >> x & 1 and m2 >> y & 1 for x, y in pts)
            for m1 in o1 if m1 >> b & 1
            for m2 in o2 if m2 >> c & 1
        ):
            out.append((b, c))
    return Relation.from_pairs(n, out)
