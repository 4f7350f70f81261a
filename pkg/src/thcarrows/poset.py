"""Finite posets and monotone maps: a second cartesian closed host category."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional

from .finset import (
    CategoryError,
    Exponential,
    FinMorphism,
    FinObject,
    FinSetCategory,
    Product,
    Pullback,
    Pushout,
    _UnionFind,
)


@dataclass(frozen=True)
class PosetObject(FinObject):
    """A finite poset on ``{0, ..., size-1}``; ``relation`` holds every pair ``(i, j)`` with ``i <= j``."""

    relation: frozenset = field(default=frozenset())

    def __post_init__(self):
        super().__post_init__()
        rel = frozenset(self.relation) | {(i, i) for i in range(self.size)}
        object.__setattr__(self, "relation", rel)
        for i, j in rel:
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise CategoryError(f"relation pair {(i, j)} is outside a poset of size {self.size}")
            if i != j and (j, i) in rel:
                raise CategoryError(f"relation is not antisymmetric at {(i, j)}")
        for i, j in rel:
            for k in range(self.size):
                if (j, k) in rel and (i, k) not in rel:
                    raise CategoryError(f"relation is not transitive: {i}<={j}<={k}")
        object.__setattr__(self, "strict_pairs", tuple(sorted(p for p in rel if p[0] != p[1])))

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash(("PosetObject", self.size, self.construction, self.relation))
        return h

    def le(self, i: int, j: int) -> bool:
        return (i, j) in self.relation


@dataclass(frozen=True, eq=False)
class MonotoneMap(FinMorphism):
    def __post_init__(self):
        super().__post_init__()
        t = self.table
        cod_rel = self.cod.relation
        for i, j in self.dom.strict_pairs:
            if (t[i], t[j]) not in cod_rel:
                raise CategoryError(f"map is not monotone: {i}<={j} but {t[i]} is not <= {t[j]}")

    def __eq__(self, other):
        if other.__class__ is not self.__class__:
            return NotImplemented
        return self.table == other.table and self.dom == other.dom and self.cod == other.cod

    __hash__ = FinMorphism.__hash__


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    m = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        m[i][j] = True
    for k in range(n):
        for i in range(n):
            if m[i][k]:
                row_k = m[k]
                row_i = m[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return m


class PosetCategory(FinSetCategory):
    name = "poset"
    object_type = PosetObject
    morphism_type = MonotoneMap
    lifts = None  # no closed-form lifting test; callers fall back to enumeration

    def obj(self, size: int, relation: Iterable[tuple[int, int]] = (), label: str = "") -> PosetObject:
        return PosetObject(size, relation=frozenset(relation), label=label)

    def chain(self, n: int, label: str = "") -> PosetObject:
        return self.obj(n, [(i, j) for i in range(n) for j in range(i, n)], label)

    def antichain(self, n: int, label: str = "") -> PosetObject:
        return self.obj(n, (), label)

    def hom(self, x: PosetObject, y: PosetObject, fixed: Optional[Mapping[int, int]] = None) -> Iterator[MonotoneMap]:
        """Monotone maps ``x -> y`` in lexicographic table order."""
        fixed = fixed or {}
        n = x.size
        # constraints against earlier positions only, so backtracking stays lexicographic
        below = [[p for p in range(i) if (p, i) in x.relation] for i in range(n)]
        above = [[p for p in range(i) if (i, p) in x.relation] for i in range(n)]
        yrel = y.relation
        table = [0] * n

        def extend(i):
            if i == n:
                yield self._build(x, y, tuple(table))
                return
            values = (fixed[i],) if i in fixed else range(y.size)
            for v in values:
                if not 0 <= v < y.size:
                    continue
                if all((table[p], v) in yrel for p in below[i]) and all((v, table[p]) in yrel for p in above[i]):
                    table[i] = v
                    yield from extend(i + 1)

        yield from extend(0)

    def is_iso(self, f: MonotoneMap) -> bool:
        if not super().is_iso(f):
            return False
        t = f.table
        return all((i, j) in f.dom.relation for i in range(f.dom.size) for j in range(f.dom.size)
                   if (t[i], t[j]) in f.cod.relation)

    def _make_product(self, x, y):
        m = y.size
        rel = frozenset((a * m + b, c * m + d) for (a, c) in x.relation for (b, d) in y.relation)
        return PosetObject(x.size * y.size, Product(x, y), relation=rel)

    def _make_exponential(self, k, x):
        tables = tuple(m.table for m in self.hom(k, x))
        xrel = x.relation
        rel = frozenset(
            (i, j)
            for i, s in enumerate(tables)
            for j, t in enumerate(tables)
            if all((s[p], t[p]) in xrel for p in range(k.size))
        )
        return PosetObject(len(tables), Exponential(k, x, tables), relation=rel)

    def _make_pushout(self, f, g):
        b, c = f.cod, g.cod
        nb = b.size
        uf = self._merge_span(f, g)
        # induced preorder on the set quotient; its cycles are collapsed as well
        while True:
            classes = uf.classes()
            where = {v: idx for idx, members in enumerate(classes) for v in members}
            edges = [(where[i], where[j]) for i, j in b.relation]
            edges += [(where[nb + i], where[nb + j]) for i, j in c.relation]
            m = _closure(len(classes), edges)
            merged = False
            for i in range(len(classes)):
                for j in range(i + 1, len(classes)):
                    if m[i][j] and m[j][i]:
                        uf.union(classes[i][0], classes[j][0])
                        merged = True
            if not merged:
                break
        n = len(classes)
        rel = frozenset((i, j) for i in range(n) for j in range(n) if m[i][j])
        p = PosetObject(n, Pushout(f, g, tuple(classes)), relation=rel)
        return (p, *self._injections(p, b, c, classes))

    def _make_pullback(self, f, g):
        pairs = self._compatible_pairs(f, g)
        brel, crel = f.dom.relation, g.dom.relation
        rel = frozenset(
            (i, j)
            for i, (b1, c1) in enumerate(pairs)
            for j, (b2, c2) in enumerate(pairs)
            if (b1, b2) in brel and (c1, c2) in crel
        )
        q = PosetObject(len(pairs), Pullback(f, g, pairs), relation=rel)
        return (q, *self._projections(q, f.dom, g.dom, pairs))


POSET = PosetCategory()
