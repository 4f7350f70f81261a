"""Saturated classes, lifting complements and weak factorization systems in a finite universe.

Everything here is relative to a :class:`Universe`: a finite, composition-
closed set of morphisms between chosen objects. "Saturated" means closed,
inside the universe, under isomorphisms, composition, retracts and those
pushouts whose apex is isomorphic to a universe object. Transfinite
composition is replaced by finite chains, which binary composition covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .finset import CategoryError, FinMorphism
from .leibniz import pullback_lhom, pullback_rhom, pushout_product
from .lifting import has_lifting_property
from .thc import ThcInstance


class UniverseEscape(CategoryError):
    """A construction the caller required to stay inside the universe left it."""


class Universe:
    """A finite subcategory: objects plus a composition-closed set of morphisms.

    Identities of every object and all composites of listed morphisms are
    added at construction. Derived tables (composition, retracts, pushouts,
    pullbacks, lifting) are computed on first use and cached.
    """

    def __init__(self, cat, objects: Iterable, morphisms: Iterable[FinMorphism] = (), name: str = ""):
        self.cat = cat
        self.objects = tuple(dict.fromkeys(objects))
        for x in self.objects:
            cat.check_object(x)
        obj_set = set(self.objects)
        found = list(dict.fromkeys([cat.identity(x) for x in self.objects] + list(morphisms)))
        for m in found:
            if m.dom not in obj_set or m.cod not in obj_set:
                raise CategoryError(f"{m} has an end outside the universe")
        seen = set(found)
        frontier = list(found)
        while frontier:
            fresh = []
            for f in frontier:
                for g in list(seen):
                    for h in ((f.then(g),) if f.cod == g.dom else ()) + ((g.then(f),) if g.cod == f.dom else ()):
                        if h not in seen:
                            seen.add(h)
                            found.append(h)
                            fresh.append(h)
            frontier = fresh
        self.morphisms = tuple(found)
        self._index = {m: i for i, m in enumerate(self.morphisms)}
        self.name = name or f"{cat.name} universe on sizes {sorted(x.size for x in self.objects)}"
        self._cache: dict = {}

    @classmethod
    def full(cls, cat, objects: Iterable, name: str = "") -> "Universe":
        """The full subcategory on ``objects``."""
        objects = tuple(dict.fromkeys(objects))
        return cls(cat, objects, [m for x in objects for y in objects for m in cat.hom(x, y)], name)

    def __len__(self) -> int:
        return len(self.morphisms)

    def __repr__(self) -> str:
        return f"Universe({self.name!r}, {len(self.objects)} objects, {len(self)} morphisms)"

    def index(self, m: FinMorphism) -> int:
        try:
            return self._index[m]
        except KeyError:
            raise CategoryError(f"{m} is not in the universe") from None

    def find(self, m: FinMorphism) -> Optional[int]:
        return self._index.get(m)

    # -- classes ------------------------------------------------------------

    def klass(self, members: Iterable, name: str = "") -> "MorphismClass":
        """A class from morphisms or indices."""
        idx = frozenset(m if isinstance(m, int) else self.index(m) for m in members)
        return MorphismClass(self, idx, name)

    def where(self, pred: Callable[[FinMorphism], bool], name: str = "") -> "MorphismClass":
        return MorphismClass(self, frozenset(i for i, m in enumerate(self.morphisms) if pred(m)), name)

    def everything(self) -> "MorphismClass":
        return MorphismClass(self, frozenset(range(len(self))), "all")

    def empty(self) -> "MorphismClass":
        return MorphismClass(self, frozenset(), "empty")

    def isomorphisms(self) -> "MorphismClass":
        return self.where(self.cat.is_iso, "isomorphisms")

    def identities(self) -> "MorphismClass":
        return self.klass([self.cat.identity(x) for x in self.objects], "identities")

    def injections(self) -> "MorphismClass":
        return self.where(FinMorphism.is_injective, "injections")

    def surjections(self) -> "MorphismClass":
        return self.where(FinMorphism.is_surjective, "surjections")

    # -- derived tables -----------------------------------------------------

    def _cached(self, key, build):
        v = self._cache.get(key)
        if v is None:
            v = self._cache[key] = build()
        return v

    @property
    def iso_indices(self) -> frozenset:
        return self._cached("isos", lambda: self.isomorphisms().members)

    @property
    def composites(self) -> dict:
        """``(i, j) -> k`` with ``morphisms[k] = morphisms[j] . morphisms[i]``."""

        def build():
            by_dom: dict = {}
            for j, g in enumerate(self.morphisms):
                by_dom.setdefault(g.dom, []).append(j)
            return {
                (i, j): self._index[f.then(self.morphisms[j])]
                for i, f in enumerate(self.morphisms)
                for j in by_dom.get(f.cod, ())
            }

        return self._cached("comp", build)

    def represent(self, x) -> Optional[FinMorphism]:
        """An isomorphism ``x -> U`` onto a universe object, first in lexicographic order, or None."""
        reps = self._cached("reps", dict)
        if x in reps:
            return reps[x]
        found = None
        for y in self.objects:
            if y.size != x.size:
                continue
            found = next((h for h in self.cat.hom(x, y) if self.cat.is_iso(h)), None)
            if found is not None:
                break
        reps[x] = found
        return found

    def transport(self, arrow: FinMorphism) -> Optional[int]:
        """Index of a universe morphism isomorphic (in the arrow category) to ``arrow``."""
        i = self.find(arrow)
        if i is not None:
            return i
        s, t = self.represent(arrow.dom), self.represent(arrow.cod)
        if s is None or t is None:
            return None
        return self.find(self.cat.inverse(s).then(arrow).then(t))

    @property
    def retract_of(self) -> dict:
        """``i -> set of j`` such that morphism ``i`` is a retract of morphism ``j``."""
        return self._cached("retracts", self._build_retracts)

    def _sections(self, a, c) -> list:
        # (section a -> c, retraction c -> a) pairs inside the universe
        key = ("sections", a, c)

        def build():
            ins = [m for m in self.morphisms if m.dom == a and m.cod == c]
            outs = [m for m in self.morphisms if m.dom == c and m.cod == a]
            ident = self.cat.identity(a)
            return [(s, r) for s in ins for r in outs if s.then(r) == ident]

        return self._cached(key, build)

    def _build_retracts(self) -> dict:
        out: dict = {i: set() for i in range(len(self))}
        for i, f in enumerate(self.morphisms):
            for j, g in enumerate(self.morphisms):
                if i == j:
                    out[i].add(j)
                    continue
                tops = self._sections(f.dom, g.dom)
                if not tops:
                    continue
                bottoms = self._sections(f.cod, g.cod)
                hit = any(
                    s_t.then(g) == f.then(s_b) and g.then(r_b) == r_t.then(f)
                    for s_t, r_t in tops
                    for s_b, r_b in bottoms
                )
                if hit:
                    out[i].add(j)
        return out

    @property
    def pushouts(self) -> dict:
        """``(g, h) -> k``: pushing ``g`` along ``h`` (same domain) gives morphism ``k``, or None if it escapes."""

        def build():
            table = {}
            for gi, g in enumerate(self.morphisms):
                for hi, h in enumerate(self.morphisms):
                    if h.dom != g.dom:
                        continue
                    p, _, i_c = self.cat.pushout(g, h)
                    rep = self.represent(p)
                    table[(gi, hi)] = None if rep is None else self.find(i_c.then(rep))
            return table

        return self._cached("pushouts", build)

    @property
    def pullbacks(self) -> dict:
        """``(g, h) -> k``: pulling ``g`` back along ``h`` (same codomain) gives ``k``, or None if it escapes."""

        def build():
            table = {}
            for gi, g in enumerate(self.morphisms):
                for hi, h in enumerate(self.morphisms):
                    if h.cod != g.cod:
                        continue
                    q, _, p_c = self.cat.pullback(g, h)
                    rep = self.represent(q)
                    table[(gi, hi)] = None if rep is None else self.find(self.cat.inverse(rep).then(p_c))
            return table

        return self._cached("pullbacks", build)

    def lifts(self, i: int, j: int) -> bool:
        """Morphism ``i`` has the left lifting property against morphism ``j``."""
        matrix = self._cached("lifting", dict)
        key = (i, j)
        v = matrix.get(key)
        if v is None:
            v = matrix[key] = has_lifting_property(self.cat, self.morphisms[i], self.morphisms[j])
        return v


@dataclass(frozen=True)
class MorphismClass:
    universe: Universe = field(compare=False, repr=False)
    members: frozenset
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.universe)
        bad = [i for i in self.members if not 0 <= i < n]
        if bad:
            raise CategoryError(f"indices {sorted(bad)} are not universe morphisms")

    def __contains__(self, m) -> bool:
        if isinstance(m, int):
            return m in self.members
        i = self.universe.find(m)
        return i is not None and i in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "MorphismClass") -> bool:
        return self.members <= other.members

    def __or__(self, other: "MorphismClass") -> "MorphismClass":
        return MorphismClass(self.universe, self.members | other.members)

    def __and__(self, other: "MorphismClass") -> "MorphismClass":
        return MorphismClass(self.universe, self.members & other.members)

    def morphisms(self) -> list[FinMorphism]:
        return [self.universe.morphisms[i] for i in sorted(self.members)]

    def renamed(self, name: str) -> "MorphismClass":
        return MorphismClass(self.universe, self.members, name)


# -- closure operators -------------------------------------------------------


def _close(c: MorphismClass, base_change: dict, tag: str) -> MorphismClass:
    u = c.universe
    comp = u.composites
    retract_of = u.retract_of
    members = set(c.members) | set(u.iso_indices)
    while True:
        added = set()
        for i, j in comp:
            if i in members and j in members:
                k = comp[(i, j)]
                if k not in members:
                    added.add(k)
        for i, sources in retract_of.items():
            if i not in members and not sources.isdisjoint(members):
                added.add(i)
        for (g, h), k in base_change.items():
            if k is not None and g in members and k not in members:
                added.add(k)
        if not added:
            break
        members |= added
    return MorphismClass(u, frozenset(members), f"{tag}({c.name})" if c.name else "")


def saturate(c: MorphismClass) -> MorphismClass:
    """Least saturated class of the universe containing ``c``."""
    return _close(c, c.universe.pushouts, "sat")


def cosaturate(c: MorphismClass) -> MorphismClass:
    """Least class containing ``c`` and closed under isos, composition, retracts and pullbacks."""
    return _close(c, c.universe.pullbacks, "cosat")


def left_complement(m: MorphismClass) -> MorphismClass:
    """Universe morphisms with the left lifting property against every member of ``m``."""
    u = m.universe
    return MorphismClass(u, frozenset(i for i in range(len(u)) if all(u.lifts(i, j) for j in m.members)))


def right_complement(e: MorphismClass) -> MorphismClass:
    u = e.universe
    return MorphismClass(u, frozenset(j for j in range(len(u)) if all(u.lifts(i, j) for i in e.members)))


# -- weak factorization systems ----------------------------------------------


@dataclass(frozen=True)
class WfsReport:
    universe: str
    unfactored: tuple[int, ...]
    left_mismatch: tuple[int, ...]  # symmetric difference of E and the left complement of M
    right_mismatch: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not (self.unfactored or self.left_mismatch or self.right_mismatch)

    def lines(self, show: Callable[[int], str] = lambda i: f"#{i}") -> list[str]:
        def ids(ix):
            return "; ".join(show(i) for i in ix)

        return [
            f"universe: {self.universe}",
            f"factorization: {'ok' if not self.unfactored else 'missing for ' + ids(self.unfactored)}",
            f"E = left complement of M: {'ok' if not self.left_mismatch else 'differs at ' + ids(self.left_mismatch)}",
            f"M = right complement of E: {'ok' if not self.right_mismatch else 'differs at ' + ids(self.right_mismatch)}",
        ]


def is_wfs(e: MorphismClass, m: MorphismClass) -> WfsReport:
    u = e.universe
    if m.universe is not u:
        raise CategoryError("classes live in different universes")
    factored = {u.composites[(i, j)] for i in e.members for j in m.members if (i, j) in u.composites}
    lc = left_complement(m).members
    rc = right_complement(e).members
    return WfsReport(
        universe=u.name,
        unfactored=tuple(i for i in range(len(u)) if i not in factored),
        left_mismatch=tuple(sorted(e.members ^ lc)),
        right_mismatch=tuple(sorted(m.members ^ rc)),
    )


# -- the closure theorem -------------------------------------------------------


@dataclass(frozen=True)
class ClosureReport:
    universe: str
    wfs: bool
    hypothesis: bool  # A (x) S inside E
    conclusion: bool  # sat(A) (x) sat(S) inside E
    saturated_sizes: tuple[int, int]
    products_checked: int
    escaped: int  # products with no isomorphic copy in the universe, decided by lifting against M
    k_contains: bool  # sat(A) lifts against every <<s, m>>
    h_contains: bool  # sat(S) lifts against every <<a, m>>_r
    witness: str = ""

    @property
    def passed(self) -> bool:
        if not self.wfs:
            return False
        if not self.hypothesis:
            return True
        return self.conclusion and self.k_contains and self.h_contains

    def lines(self) -> list[str]:
        sa, ss = self.saturated_sizes
        return [
            f"universe: {self.universe}",
            f"weak factorization system: {'yes' if self.wfs else 'no'}",
            f"hypothesis A(x)S in E: {'holds' if self.hypothesis else 'fails (vacuous)'}",
            f"saturated sizes: A={sa} S={ss}",
            f"products checked: {self.products_checked} (outside universe: {self.escaped})",
            f"conclusion sat(A)(x)sat(S) in E: {'holds' if self.conclusion else 'fails'}",
            f"sat(A) lifts against <<S,M>>: {'yes' if self.k_contains else 'no'}",
            f"sat(S) lifts against <<A,M>>_r: {'yes' if self.h_contains else 'no'}",
        ] + ([f"witness: {self.witness}"] if self.witness else [])


def _in_left_class(u: Universe, e: MorphismClass, m: MorphismClass, arrow, strict: bool) -> tuple[bool, bool]:
    """Membership of a possibly external arrow in E; returns (member, escaped)."""
    k = u.transport(arrow)
    if k is not None:
        return k in e.members, False
    if strict:
        raise UniverseEscape(f"{arrow.dom.size} -> {arrow.cod.size} arrow has no isomorphic copy in the universe")
    return all(has_lifting_property(u.cat, arrow, mm) for mm in m.morphisms()), True


def _products_inside(inst, u, a_cls, s_cls, e, m, strict):
    checked = escaped = 0
    for f in a_cls.morphisms():
        for s in s_cls.morphisms():
            pp = pushout_product(inst, f, s).arrow
            ok, esc = _in_left_class(u, e, m, pp, strict)
            checked += 1
            escaped += esc
            if not ok:
                return False, checked, escaped, f"{f} <> {s} is not in E"
    return True, checked, escaped, ""


def check_closure_theorem(
    inst: ThcInstance,
    a: MorphismClass,
    s: MorphismClass,
    e: MorphismClass,
    m: MorphismClass,
    strict: bool = False,
) -> ClosureReport:
    """Check that ``A (x) S`` in ``E`` forces ``sat(A) (x) sat(S)`` in ``E``.

    Pushout-products whose objects have no isomorphic copy in the universe
    raise :class:`UniverseEscape` when ``strict``; otherwise their membership
    in ``E`` is decided as lifting against every member of ``M``, and counted.
    Alongside the direct check, the mechanism behind it is checked: ``sat(A)``
    lifts against every ``<<s, m>>`` and ``sat(S)`` against every
    ``<<a, m>>_r`` for ``a`` in ``sat(A)``.
    """
    u = a.universe
    wfs = is_wfs(e, m).passed
    sat_a, sat_s = saturate(a), saturate(s)
    sizes = (len(sat_a), len(sat_s))
    if not wfs:
        return ClosureReport(u.name, False, False, False, sizes, 0, 0, False, False, "(E, M) is not a weak factorization system")
    hyp, n1, esc1, why = _products_inside(inst, u, a, s, e, m, strict)
    if not hyp:
        return ClosureReport(u.name, True, False, False, sizes, n1, esc1, False, False, why)
    concl, n2, esc2, why = _products_inside(inst, u, sat_a, sat_s, e, m, strict)

    cat = u.cat
    lhoms = [pullback_lhom(inst, ss, mm).arrow for ss in s.morphisms() for mm in m.morphisms()]
    k_ok = all(has_lifting_property(cat, f, h) for f in sat_a.morphisms() for h in lhoms)
    rhoms = [pullback_rhom(inst, f, mm).arrow for f in sat_a.morphisms() for mm in m.morphisms()]
    h_ok = all(has_lifting_property(cat, ss, r) for ss in sat_s.morphisms() for r in rhoms)
    return ClosureReport(u.name, True, True, concl, sizes, n1 + n2, esc1 + esc2, k_ok, h_ok, why)


def small_universe(cat, max_size: int = 3) -> Universe:
    """Full subcategory on the plain sets ``0 .. max_size``."""
    return Universe.full(cat, [cat.obj(n) for n in range(max_size + 1)])

