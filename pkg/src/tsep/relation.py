"""Finite binary relations over the dense vertex universe ``0..n-1``.

A :class:`Relation` stores one ``n``-bit integer mask per row: bit ``j`` of
row ``i`` is set iff ``(i, j)`` belongs to the relation.  A
:class:`VertexSet` is a single ``n``-bit mask.  Both are immutable values;
every operation returns a fresh object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class SizeMismatchError(ValueError):
    """Raised when two operands live on different vertex universes."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _full(n: int) -> int:
    return (1 << n) - 1


def _check_same(n: int, m: int) -> None:
    if n != m:
        raise SizeMismatchError(f"universe sizes differ: {n} != {m}")


@dataclass(frozen=True, slots=True)
class VertexSet:
    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("universe size must be non-negative")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"members outside universe of size {self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> VertexSet:
        mask = 0
        for m in members:
            if not 0 <= m < n:
                raise ValueError(f"vertex index {m} outside universe of size {n}")
            mask |= 1 << m
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> VertexSet:
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> VertexSet:
        return cls(n, _full(n))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 0 <= i < self.n and bool(self.mask >> i & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def members(self) -> list[int]:
        return list(iter_bits(self.mask))

    def complement(self) -> VertexSet:
        return VertexSet(self.n, _full(self.n) & ~self.mask)

    def union(self, other: VertexSet) -> VertexSet:
        _check_same(self.n, other.n)
        return VertexSet(self.n, self.mask | other.mask)

    def intersection(self, other: VertexSet) -> VertexSet:
        _check_same(self.n, other.n)
        return VertexSet(self.n, self.mask & other.mask)

    def difference(self, other: VertexSet) -> VertexSet:
        _check_same(self.n, other.n)
        return VertexSet(self.n, self.mask & ~other.mask)

    def issubset(self, other: VertexSet) -> bool:
        _check_same(self.n, other.n)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: VertexSet) -> bool:
        _check_same(self.n, other.n)
        return self.mask & other.mask == 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __invert__ = complement
    __le__ = issubset

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {self.members()})"


class Relation:
    """Immutable binary relation on ``{0, ..., n-1}``."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Iterable[int] | None = None):
        rows = tuple(rows) if rows is not None else (0,) * n
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        full = _full(n)
        for r in rows:
            if r < 0 or r & ~full:
                raise ValueError(f"row mask outside universe of size {n}")
        self.n = n
        self.rows: tuple[int, ...] = rows

    @classmethod
    def _raw(cls, n: int, rows: tuple[int, ...]) -> Relation:
        # trusted constructor for internal results
        obj = object.__new__(cls)
        obj.n = n
        obj.rows = rows
        return obj

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair ({a}, {b}) outside universe of size {n}")
            rows[a] |= 1 << b
        return cls._raw(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Relation:
        return cls._raw(n, (0,) * n)

    @classmethod
    def full(cls, n: int) -> Relation:
        return cls._raw(n, (_full(n),) * n)

    @classmethod
    def identity(cls, n: int) -> Relation:
        return cls._raw(n, tuple(1 << i for i in range(n)))

    def __setattr__(self, name, value):
        if hasattr(self, "rows"):
            raise AttributeError("Relation is immutable")
        object.__setattr__(self, name, value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __contains__(self, pair: object) -> bool:
        a, b = pair  # type: ignore[misc]
        return 0 <= a < self.n and 0 <= b < self.n and bool(self.rows[a] >> b & 1)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return self.pairs()

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def __bool__(self) -> bool:
        return any(self.rows)

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Pairs in lexicographic order."""
        for a, row in enumerate(self.rows):
            for b in iter_bits(row):
                yield a, b

    def render(self) -> str:
        return ", ".join(f"{a}->{b}" for a, b in self.pairs())

    def __repr__(self) -> str:
        return f"Relation({self.n}, {{{self.render()}}})"

    # lattice operations

    def union(self, other: Relation) -> Relation:
        _check_same(self.n, other.n)
        return Relation._raw(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def intersection(self, other: Relation) -> Relation:
        _check_same(self.n, other.n)
        return Relation._raw(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def difference(self, other: Relation) -> Relation:
        _check_same(self.n, other.n)
        return Relation._raw(self.n, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def complement(self) -> Relation:
        full = _full(self.n)
        return Relation._raw(self.n, tuple(full & ~r for r in self.rows))

    def issubset(self, other: Relation) -> bool:
        _check_same(self.n, other.n)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __invert__ = complement
    __le__ = issubset

    def __matmul__(self, other: Relation) -> Relation:
        return compose(self, other)

    def restrict(self, left: VertexSet | None = None, right: VertexSet | None = None) -> Relation:
        """``subdiagonal(left) . self . subdiagonal(right)`` without the two compositions."""
        rows = self.rows
        if right is not None:
            _check_same(self.n, right.n)
            rows = tuple(r & right.mask for r in rows)
        if left is not None:
            _check_same(self.n, left.n)
            rows = tuple(r if left.mask >> i & 1 else 0 for i, r in enumerate(rows))
        return Relation._raw(self.n, rows)

    # predicates

    def is_reflexive(self) -> bool:
        return all(r >> i & 1 for i, r in enumerate(self.rows))

    def is_symmetric(self) -> bool:
        return self == converse(self)

    def is_antisymmetric(self) -> bool:
        return (self & converse(self)).issubset(Relation.identity(self.n))

    def is_transitive(self) -> bool:
        return compose(self, self).issubset(self)

    def is_preorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_partial_equivalence(self) -> bool:
        return self.is_symmetric() and self.is_transitive()

    def is_equivalence(self) -> bool:
        return self.is_reflexive() and self.is_partial_equivalence()

    def predicates(self) -> dict[str, bool]:
        return {
            "reflexive": self.is_reflexive(),
            "symmetric": self.is_symmetric(),
            "antisymmetric": self.is_antisymmetric(),
            "transitive": self.is_transitive(),
            "preorder": self.is_preorder(),
            "partial_equivalence": self.is_partial_equivalence(),
            "equivalence": self.is_equivalence(),
        }


def compose_rows(r: tuple[int, ...], s: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for row in r:
        acc = 0
        while row:
            low = row & -row
            acc |= s[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return tuple(out)


def converse_rows(rows: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(rows)
    for a, row in enumerate(rows):
        bit = 1 << a
        while row:
            low = row & -row
            out[low.bit_length() - 1] |= bit
            row ^= low
    return tuple(out)


def warshall_rows(rows: tuple[int, ...]) -> tuple[int, ...]:
    """Transitive closure of a row-mask matrix (Warshall, bitset rows)."""
    out = list(rows)
    n = len(out)
    for k in range(n):
        bit = 1 << k
        rk = out[k]
        if not rk:
            continue
        for i in range(n):
            if out[i] & bit:
                out[i] |= rk
    return tuple(out)


def compose(r: Relation, s: Relation) -> Relation:
    """``(a, c)`` is in the result iff ``a r d`` and ``d s c`` for some ``d``."""
    _check_same(r.n, s.n)
    return Relation._raw(r.n, compose_rows(r.rows, s.rows))


def converse(r: Relation) -> Relation:
    return Relation._raw(r.n, converse_rows(r.rows))


def transitive_closure(r: Relation) -> Relation:
    return Relation._raw(r.n, warshall_rows(r.rows))


def transitive_closure_squaring(r: Relation) -> Relation:
    """Transitive closure by repeated squaring ``X <- X | X.X``.

    Kept as an independent route for cross-checking :func:`transitive_closure`.
    """
    rows = r.rows
    while True:
        nxt = tuple(a | b for a, b in zip(rows, compose_rows(rows, rows)))
        if nxt == rows:
            return Relation._raw(r.n, rows)
        rows = nxt


def reflexive_transitive_closure(r: Relation) -> Relation:
    rows = warshall_rows(r.rows)
    return Relation._raw(r.n, tuple(row | 1 << i for i, row in enumerate(rows)))


def subdiagonal(b: VertexSet) -> Relation:
    return Relation._raw(b.n, tuple((1 << i) if b.mask >> i & 1 else 0 for i in range(b.n)))


def diagonal(n: int) -> Relation:
    return Relation.identity(n)


def foreset(r: Relation, c: VertexSet) -> VertexSet:
    """``{a : a r x for some x in c}``."""
    _check_same(r.n, c.n)
    cm = c.mask
    mask = 0
    for a, row in enumerate(r.rows):
        if row & cm:
            mask |= 1 << a
    return VertexSet(r.n, mask)


def afterset(r: Relation, b: VertexSet) -> VertexSet:
    """``{x : a r x for some a in b}``."""
    _check_same(r.n, b.n)
    mask = 0
    rows = r.rows
    for a in iter_bits(b.mask):
        mask |= rows[a]
    return VertexSet(r.n, mask)
