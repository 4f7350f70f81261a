"""Finite sets and total maps.

Every constructed object (product, exponential, pushout, pullback) carries a
record of how it was built, and its elements are indexed by a fixed canonical
encoding so that tables are reproducible bit-for-bit:

* products: ``(a, b)`` lives at ``a * |Y| + b``;
* exponentials: a table ``t: K -> X`` lives at its lexicographic rank;
* pushouts: classes of ``B + C`` ordered by their least member (``B`` first);
* pullbacks: compatible pairs ``(b, c)`` in row-major order.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union


class CategoryError(ValueError):
    """Ill-typed composite, malformed table, or a non-commuting (co)cone."""


@dataclass(frozen=True)
class Product:
    left: "FinObject"
    right: "FinObject"


@dataclass(frozen=True)
class Exponential:
    """Function tables ``exponent -> base`` as elements.

    With ``listed`` unset every table is an element, ranked lexicographically by
    arithmetic; otherwise ``listed`` enumerates the admissible tables in order.
    """

    exponent: "FinObject"
    base: "FinObject"
    listed: Optional[tuple[tuple[int, ...], ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.listed is not None:
            object.__setattr__(self, "_ranks", {t: i for i, t in enumerate(self.listed)})

    @property
    def count(self) -> int:
        if self.listed is not None:
            return len(self.listed)
        return self.base.size ** self.exponent.size

    def rank(self, table: tuple[int, ...]) -> int:
        if self.listed is not None:
            return self._ranks[table]
        n = self.base.size
        r = 0
        for v in table:
            r = r * n + v
        return r

    def table(self, index: int) -> tuple[int, ...]:
        if self.listed is not None:
            return self.listed[index]
        n, k = self.base.size, self.exponent.size
        digits = [0] * k
        for i in range(k - 1, -1, -1):
            index, digits[i] = divmod(index, n)
        return tuple(digits)

    def tables(self) -> Iterable[tuple[int, ...]]:
        if self.listed is not None:
            return self.listed
        return itertools.product(range(self.base.size), repeat=self.exponent.size)


@dataclass(frozen=True)
class Pushout:
    left: "FinMorphism"
    right: "FinMorphism"
    # members of each class as indices into the disjoint union B + C
    classes: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)


@dataclass(frozen=True)
class Pullback:
    left: "FinMorphism"
    right: "FinMorphism"
    pairs: tuple[tuple[int, int], ...] = field(compare=False, repr=False)

    def __post_init__(self):
        # pair -> element index
        object.__setattr__(self, "index", {p: i for i, p in enumerate(self.pairs)})


Construction = Union[Product, Exponential, Pushout, Pullback]


@dataclass(frozen=True)
class FinObject:
    """The finite set ``{0, ..., size-1}``, possibly remembering its construction.

    Plain objects of equal size are equal; the label is for reports only.
    """

    size: int
    construction: Optional[Construction] = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 0:
            raise CategoryError(f"object size must be a non-negative integer, got {self.size!r}")

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash((type(self).__name__, self.size, self.construction))
        return h

    def __str__(self) -> str:
        return self.label or describe(self)

    @property
    def elements(self) -> range:
        return range(self.size)


def describe(x: FinObject) -> str:
    c = x.construction
    if c is None:
        return str(x.size)
    if isinstance(c, Product):
        return f"({describe(c.left)}x{describe(c.right)})"
    if isinstance(c, Exponential):
        return f"{describe(c.base)}^{describe(c.exponent)}"
    if isinstance(c, Pushout):
        return f"po[{x.size}]"
    return f"pb[{x.size}]"


@dataclass(frozen=True)
class FinMorphism:
    dom: FinObject
    cod: FinObject
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.dom.size:
            raise CategoryError(
                f"table of length {len(table)} does not match domain {self.dom} of size {self.dom.size}"
            )
        n = self.cod.size
        if table and (min(table) < 0 or max(table) >= n):
            i, v = next((i, v) for i, v in enumerate(table) if not 0 <= v < n)
            raise CategoryError(f"table entry {i} -> {v} is outside codomain {self.cod} of size {n}")

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash((self.dom, self.cod, self.table))
        return h

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, other: "FinMorphism") -> "FinMorphism":
        """Diagrammatic composite: first ``self``, then ``other``."""
        return compose(self, other)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    def __str__(self) -> str:
        return f"{self.dom}->{self.cod} {list(self.table)}"


def _trusted(cls, dom, cod, table: tuple):
    """Build a morphism whose table is valid by construction, skipping validation."""
    m = object.__new__(cls)
    m.__dict__.update(dom=dom, cod=cod, table=table)
    return m


def compose(f: FinMorphism, g: FinMorphism) -> FinMorphism:
    """``g . f``; the result has the class of ``f``."""
    if f.cod != g.dom:
        raise CategoryError(f"cannot compose: codomain {f.cod} of first map != domain {g.dom} of second")
    gt = g.table
    return _trusted(type(f), f.dom, g.cod, tuple([gt[i] for i in f.table]))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # keep the smaller index as root so roots are minimal representatives
            if ri < rj:
                self.parent[rj] = ri
            else:
                self.parent[ri] = rj

    def classes(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), []).append(i)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


_EXP_MAP_CACHE = 4096


class FinSetCategory:
    """The category of finite sets, cartesian closed with pushouts and pullbacks.

    Constructions are memoised per instance; the memo tables double as the
    record of every pushout and pullback built, which the universal-property
    audits replay.
    """

    name = "finset"
    object_type = FinObject
    morphism_type = FinMorphism

    def __init__(self):
        self.reset()

    def reset(self) -> None:
        self._products: dict = {}
        self._exponentials: dict = {}
        self._pushouts: dict = {}
        self._pullbacks: dict = {}
        self._exp_maps: dict = {}
        self._identities: dict = {}

    # -- objects and morphisms -------------------------------------------

    def _build(self, dom, cod, table):
        return _trusted(self.morphism_type, dom, cod, tuple(table))

    def obj(self, size: int, label: str = "") -> FinObject:
        return FinObject(size, label=label)

    def check_object(self, x) -> None:
        if type(x) is not self.object_type:
            raise CategoryError(f"{x!r} is not an object of {self.name}")

    def morphism(self, dom: FinObject, cod: FinObject, table: Iterable[int]) -> FinMorphism:
        self.check_object(dom)
        self.check_object(cod)
        return self.morphism_type(dom, cod, tuple(table))

    def identity(self, x: FinObject) -> FinMorphism:
        i = self._identities.get(x)
        if i is None:
            i = self._identities[x] = self._build(x, x, tuple(range(x.size)))
        return i

    def hom(self, x: FinObject, y: FinObject, fixed: Optional[Mapping[int, int]] = None) -> Iterator[FinMorphism]:
        """All morphisms ``x -> y`` in lexicographic table order.

        ``fixed`` pins selected positions of the table.
        """
        fixed = fixed or {}
        choices = [(fixed[i],) if i in fixed else range(y.size) for i in range(x.size)]
        for v in fixed.values():
            if not 0 <= v < y.size:
                return
        for t in itertools.product(*choices):
            yield self._build(x, y, t)

    def is_iso(self, f: FinMorphism) -> bool:
        return f.dom.size == f.cod.size and f.is_injective()

    def inverse(self, f: FinMorphism) -> FinMorphism:
        if not self.is_iso(f):
            raise CategoryError(f"{f} is not an isomorphism")
        inv = [0] * f.cod.size
        for i, v in enumerate(f.table):
            inv[v] = i
        return self.morphism(f.cod, f.dom, inv)

    # -- cartesian closed structure ---------------------------------------

    def product(self, x: FinObject, y: FinObject) -> FinObject:
        key = (x, y)
        p = self._products.get(key)
        if p is None:
            p = self._make_product(x, y)
            self._products[key] = p
        return p

    def _make_product(self, x: FinObject, y: FinObject) -> FinObject:
        return FinObject(x.size * y.size, Product(x, y))

    def pair_index(self, p: FinObject, a: int, b: int) -> int:
        return a * p.construction.right.size + b

    def product_map(self, f: FinMorphism, g: FinMorphism) -> FinMorphism:
        """``f x g``, acting coordinatewise on row-major pairs."""
        src = self.product(f.dom, g.dom)
        dst = self.product(f.cod, g.cod)
        n, m = g.dom.size, g.cod.size
        table = [f.table[i // n] * m + g.table[i % n] for i in range(src.size)] if n else []
        return self._build(src, dst, tuple(table))

    def swap(self, x: FinObject, y: FinObject) -> FinMorphism:
        src, dst = self.product(x, y), self.product(y, x)
        return self._build(src, dst, tuple(b * x.size + a for a in range(x.size) for b in range(y.size)))

    def exponential(self, k: FinObject, x: FinObject) -> FinObject:
        key = (k, x)
        e = self._exponentials.get(key)
        if e is None:
            e = self._make_exponential(k, x)
            self._exponentials[key] = e
        return e

    def _make_exponential(self, k, x) -> FinObject:
        c = Exponential(k, x)
        return FinObject(c.count, c)

    def exp_map(self, u: FinMorphism, h: FinMorphism) -> FinMorphism:
        """For ``u: L -> K`` and ``h: X -> Y``, the map ``X^K -> Y^L``, ``t |-> h.t.u``."""
        key = (u, h)
        r = self._exp_maps.get(key)
        if r is None:
            src = self.exponential(u.cod, h.dom)
            dst = self.exponential(u.dom, h.cod)
            rank = dst.construction.rank
            ut, ht = u.table, h.table
            table = tuple(rank(tuple([ht[t[j]] for j in ut])) for t in src.construction.tables())
            r = self._build(src, dst, table)
            if len(self._exp_maps) >= _EXP_MAP_CACHE:
                self._exp_maps.clear()
            self._exp_maps[key] = r
        return r

    def _product_factors(self, p: FinObject) -> tuple[FinObject, FinObject]:
        if not isinstance(p.construction, Product):
            raise CategoryError(f"{p} is not a product object")
        return p.construction.left, p.construction.right

    def _exponential_factors(self, e: FinObject) -> Exponential:
        if not isinstance(e.construction, Exponential):
            raise CategoryError(f"{e} is not an exponential object")
        return e.construction

    def curry(self, m: FinMorphism) -> FinMorphism:
        """``m: A x K -> B`` to ``A -> B^K``."""
        a, k = self._product_factors(m.dom)
        e = self.exponential(k, m.cod)
        rank = e.construction.rank
        n = k.size
        t = m.table
        return self._build(a, e, tuple(rank(t[i * n:(i + 1) * n]) for i in range(a.size)))

    def uncurry(self, n: FinMorphism) -> FinMorphism:
        """``n: A -> B^K`` to ``A x K -> B``."""
        exp = self._exponential_factors(n.cod)
        p = self.product(n.dom, exp.exponent)
        table = exp.table
        return self._build(p, exp.base, tuple(v for i in n.table for v in table(i)))

    def curry_left(self, m: FinMorphism) -> FinMorphism:
        """``m: A x K -> B`` to ``K -> B^A`` (currying away the first factor)."""
        a, k = self._product_factors(m.dom)
        e = self.exponential(a, m.cod)
        rank = e.construction.rank
        n = k.size
        t = m.table
        return self._build(k, e, tuple(rank(t[j::n]) for j in range(n)))

    def uncurry_left(self, n: FinMorphism, a: FinObject) -> FinMorphism:
        """``n: K -> B^A`` to ``A x K -> B``."""
        exp = self._exponential_factors(n.cod)
        if exp.exponent != a:
            raise CategoryError(f"exponent {exp.exponent} of {n.cod} does not match {a}")
        k = n.dom
        p = self.product(a, k)
        columns = [exp.table(i) for i in n.table]
        return self._build(p, exp.base, tuple(columns[j][i] for i in range(a.size) for j in range(k.size)))

    # -- finite colimits and limits ---------------------------------------

    def pushout(self, f: FinMorphism, g: FinMorphism) -> tuple[FinObject, FinMorphism, FinMorphism]:
        """Pushout of the span ``B <-f- A -g-> C``: returns ``(P, i_B, i_C)``."""
        if f.dom != g.dom:
            raise CategoryError(f"pushout span legs have different domains: {f.dom} and {g.dom}")
        key = (f, g)
        r = self._pushouts.get(key)
        if r is None:
            r = self._make_pushout(f, g)
            self._pushouts[key] = r
        return r

    def _merge_span(self, f: FinMorphism, g: FinMorphism) -> _UnionFind:
        nb = f.cod.size
        uf = _UnionFind(nb + g.cod.size)
        for a in range(f.dom.size):
            uf.union(f.table[a], nb + g.table[a])
        return uf

    def _make_pushout(self, f, g):
        classes = self._merge_span(f, g).classes()
        p = FinObject(len(classes), Pushout(f, g, tuple(classes)))
        return (p, *self._injections(p, f.cod, g.cod, classes))

    def _injections(self, p, b, c, classes):
        where = {}
        for idx, members in enumerate(classes):
            for v in members:
                where[v] = idx
        nb = b.size
        i_b = self._build(b, p, tuple(where[v] for v in range(nb)))
        i_c = self._build(c, p, tuple(where[nb + v] for v in range(c.size)))
        return i_b, i_c

    def copair(self, p: FinObject, h_b: FinMorphism, h_c: FinMorphism) -> FinMorphism:
        """The map out of a pushout induced by a cocone ``(h_B, h_C)``."""
        po = p.construction
        if not isinstance(po, Pushout):
            raise CategoryError(f"{p} is not a pushout object")
        if h_b.dom != po.left.cod or h_c.dom != po.right.cod or h_b.cod != h_c.cod:
            raise CategoryError("cocone legs do not match the pushout span")
        nb = h_b.dom.size
        table = []
        for members in po.classes:
            values = {h_b.table[v] if v < nb else h_c.table[v - nb] for v in members}
            if len(values) != 1:
                raise CategoryError(f"not a cocone: class {members} is sent to {sorted(values)}")
            table.append(values.pop())
        return self._build(p, h_b.cod, tuple(table))

    def pullback(self, f: FinMorphism, g: FinMorphism) -> tuple[FinObject, FinMorphism, FinMorphism]:
        """Pullback of the cospan ``B -f-> D <-g- C``: returns ``(Q, p_B, p_C)``."""
        if f.cod != g.cod:
            raise CategoryError(f"pullback cospan legs have different codomains: {f.cod} and {g.cod}")
        key = (f, g)
        r = self._pullbacks.get(key)
        if r is None:
            r = self._make_pullback(f, g)
            self._pullbacks[key] = r
        return r

    def _compatible_pairs(self, f, g):
        by_value: dict[int, list[int]] = {}
        for c, v in enumerate(g.table):
            by_value.setdefault(v, []).append(c)
        return tuple((b, c) for b, v in enumerate(f.table) for c in by_value.get(v, ()))

    def _make_pullback(self, f, g):
        pairs = self._compatible_pairs(f, g)
        q = FinObject(len(pairs), Pullback(f, g, pairs))
        return (q, *self._projections(q, f.dom, g.dom, pairs))

    def _projections(self, q, b, c, pairs):
        p_b = self._build(q, b, tuple(p[0] for p in pairs))
        p_c = self._build(q, c, tuple(p[1] for p in pairs))
        return p_b, p_c

    def pair(self, q: FinObject, k_b: FinMorphism, k_c: FinMorphism) -> FinMorphism:
        """The map into a pullback induced by a cone ``(k_B, k_C)``."""
        pb = q.construction
        if not isinstance(pb, Pullback):
            raise CategoryError(f"{q} is not a pullback object")
        if k_b.cod != pb.left.dom or k_c.cod != pb.right.dom or k_b.dom != k_c.dom:
            raise CategoryError("cone legs do not match the pullback cospan")
        index = pb.index
        table = []
        for w, pr in enumerate(zip(k_b.table, k_c.table)):
            i = index.get(pr)
            if i is None:
                raise CategoryError(f"not a cone: element {w} goes to incompatible pair {pr}")
            table.append(i)
        return self._build(k_b.dom, q, tuple(table))

    def constructed_pushouts(self):
        return list(self._pushouts.items())

    def constructed_pullbacks(self):
        return list(self._pullbacks.items())

    # -- lifting ------------------------------------------------------------

    def lifts(self, f: FinMorphism, g: FinMorphism) -> bool:
        """Decide ``f`` has the left lifting property against ``g`` without enumerating squares.

        A square fails to lift iff ``top`` separates two points of an ``f``-fibre
        (possible iff both maps have a fibre with two points), or some point off
        the image of ``f`` is sent off the image of ``g`` (possible iff neither
        map is surjective and a square exists at all).
        """
        f_fat = any(c > 1 for c in Counter(f.table).values())
        g_fat = any(c > 1 for c in Counter(g.table).values())
        if f_fat and g_fat:
            return False
        squares_exist = f.dom.size == 0 or g.dom.size > 0
        if squares_exist and not f.is_surjective() and not g.is_surjective():
            return False
        return True


FINSET = FinSetCategory()


def product(x: FinObject, y: FinObject) -> FinObject:
    return FINSET.product(x, y)


def exponential(k: FinObject, x: FinObject) -> FinObject:
    return FINSET.exponential(k, x)


def curry(f: FinMorphism) -> FinMorphism:
    return FINSET.curry(f)


def uncurry(f: FinMorphism) -> FinMorphism:
    return FINSET.uncurry(f)


def pushout(f: FinMorphism, g: FinMorphism):
    return FINSET.pushout(f, g)


def pullback(f: FinMorphism, g: FinMorphism):
    return FINSET.pullback(f, g)


# -- universal-property audits ---------------------------------------------


def check_pushout(cat, f: FinMorphism, g: FinMorphism, test_objects: Iterable) -> list[str]:
    """Audit a pushout against every cocone into each test object.

    Cocones are counted independently of the union-find quotient, by matching
    ``h_B . f`` against ``h_C . g`` over the two hom-sets. Returns failures.
    """
    p, i_b, i_c = cat.pushout(f, g)
    failures = []
    if i_b.dom != f.cod or compose(f, i_b) != compose(g, i_c):
        failures.append("pushout square does not commute")
        return failures
    for z in test_objects:
        restricted = Counter(compose(g, h).table for h in cat.hom(g.cod, z))
        n_cocones = sum(restricted[compose(f, h).table] for h in cat.hom(f.cod, z))
        images = set()
        for h in cat.hom(p, z):
            images.add((compose(i_b, h).table, compose(i_c, h).table))
        if len(images) != sum(1 for _ in cat.hom(p, z)):
            failures.append(f"injections not jointly epic against {z}")
        if len(images) != n_cocones:
            failures.append(f"{n_cocones} cocones into {z} but {len(images)} factorizations")
    return failures


def check_pullback(cat, f: FinMorphism, g: FinMorphism, test_objects: Iterable) -> list[str]:
    """Dual of :func:`check_pushout`: cones from each test object."""
    q, p_b, p_c = cat.pullback(f, g)
    failures = []
    if compose(p_b, f) != compose(p_c, g):
        failures.append("pullback square does not commute")
        return failures
    for w in test_objects:
        restricted = Counter(compose(k, g).table for k in cat.hom(w, g.dom))
        n_cones = sum(restricted[compose(k, f).table] for k in cat.hom(w, f.dom))
        images = set()
        total = 0
        for k in cat.hom(w, q):
            total += 1
            images.add((compose(k, p_b).table, compose(k, p_c).table))
        if len(images) != total:
            failures.append(f"projections not jointly monic against {w}")
        if len(images) != n_cones:
            failures.append(f"{n_cones} cones from {w} but {len(images)} factorizations")
    return failures
