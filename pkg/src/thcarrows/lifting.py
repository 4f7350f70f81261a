"""Lifting problems, brute-force lift search, and transport of solutions.

A lifting problem is a commuting square ``left -> right``; a lift is a
diagonal ``d: left.cod -> right.dom`` with ``d . left = top`` and
``right . d = bottom``. The transfers move a lift of ``(f <> u, g)`` to the
corresponding problems ``(f, <<u, g>>)`` and ``(u, <<f, g>>_r)`` and back.
"""

from __future__ import annotations

from dataclasses import dataclass

from .finset import CategoryError, FinMorphism
from .leibniz import Square, phi, phi_r, pullback_lhom, pullback_rhom, pushout_product, squares
from .thc import ThcInstance, counit, counit_right, unit, unit_right


class NotALift(CategoryError):
    pass


class LiftingProblem(Square):
    """A commuting square read as a problem; ``left``/``right`` are its vertical legs."""

    @property
    def left(self) -> FinMorphism:
        return self.source

    @property
    def right(self) -> FinMorphism:
        return self.target

    @classmethod
    def of(cls, sq: Square) -> "LiftingProblem":
        return cls(sq.source, sq.target, sq.top, sq.bottom)


@dataclass(frozen=True)
class Lift:
    problem: Square
    diagonal: FinMorphism

    def __post_init__(self):
        if not solves(self.problem, self.diagonal):
            raise NotALift(f"{self.diagonal} does not split the square into two commuting triangles")


def solves(p: Square, d: FinMorphism) -> bool:
    return (
        d.dom == p.source.cod
        and d.cod == p.target.dom
        and p.source.then(d) == p.top
        and d.then(p.target) == p.bottom
    )


def solve_all(cat, p: Square) -> list[Lift]:
    """All lifts of ``p`` in lexicographic table order."""
    forced = {b: p.top.table[a] for a, b in enumerate(p.source.table)}
    # values forced by two preimages must agree
    for a, b in enumerate(p.source.table):
        if forced[b] != p.top.table[a]:
            return []
    right, bottom = p.target.table, p.bottom.table
    out = []
    for d in cat.hom(p.source.cod, p.target.dom, fixed=forced):
        if all(right[v] == bottom[i] for i, v in enumerate(d.table)):
            out.append(Lift(p, d))
    return out


def has_lift(cat, p: Square) -> bool:
    return bool(solve_all(cat, p))


def has_lifting_property(cat, f: FinMorphism, g: FinMorphism, exhaustive: bool = False) -> bool:
    """``f`` lifts against ``g``: every square ``f -> g`` has a diagonal.

    Uses the category's closed-form test when it has one, unless
    ``exhaustive`` forces enumeration of every square.
    """
    fast = getattr(cat, "lifts", None)
    if fast is not None and not exhaustive:
        return fast(f, g)
    return all(has_lift(cat, p) for p in squares(cat, f, g))


# -- transfers between the three problem forms ---------------------------


def _require_lift(p: Square, d: FinMorphism, where: str) -> None:
    if not solves(p, d):
        raise NotALift(f"{where}: diagonal does not solve the problem")


def to_lhom(inst: ThcInstance, f, u, g, p: Square, alpha: FinMorphism) -> FinMorphism:
    """Lift of ``(f <> u, g)`` to the lift ``lhom(K, alpha) . eta_{B,(K)}`` of ``phi(p)``."""
    _require_lift(p, alpha, "to_lhom input")
    k = u.cod
    d = unit(inst, f.cod, k).then(inst.lhom_map(inst.cat_s.identity(k), alpha))
    _require_lift(phi(inst, f, u, g, p), d, "to_lhom output")
    return d


def from_lhom(inst: ThcInstance, f, u, g, p: Square, beta: FinMorphism) -> FinMorphism:
    """Lift of ``phi(p)`` back to a lift of ``p``: ``eps_{X,(K)} . (beta (x) K)``."""
    _require_lift(phi(inst, f, u, g, p), beta, "from_lhom input")
    k = u.cod
    d = inst.tensor_map(beta, inst.cat_s.identity(k)).then(counit(inst, g.dom, k))
    _require_lift(p, d, "from_lhom output")
    return d


def to_rhom(inst: ThcInstance, f, u, g, p: Square, alpha: FinMorphism) -> FinMorphism:
    """Lift of ``(f <> u, g)`` to the lift ``rhom(B, alpha) . eta^r_{(B),K}`` of ``phi_r(p)``."""
    _require_lift(p, alpha, "to_rhom input")
    b = f.cod
    d = unit_right(inst, b, u.cod).then(inst.rhom_map(inst.cat_a.identity(b), alpha))
    _require_lift(phi_r(inst, f, u, g, p), d, "to_rhom output")
    return d


def from_rhom(inst: ThcInstance, f, u, g, p: Square, gamma: FinMorphism) -> FinMorphism:
    _require_lift(phi_r(inst, f, u, g, p), gamma, "from_rhom input")
    b = f.cod
    d = inst.tensor_map(inst.cat_a.identity(b), gamma).then(counit_right(inst, b, g.dom))
    _require_lift(p, d, "from_rhom output")
    return d


def lhom_to_rhom(inst: ThcInstance, f, u, g, p: Square, beta: FinMorphism) -> FinMorphism:
    """Direct passage between the two hom-side lifts through the primitive transposes."""
    _require_lift(phi(inst, f, u, g, p), beta, "lhom_to_rhom input")
    m = inst.untranspose_left(u.cod, g.dom, beta)
    d = inst.transpose_right(f.cod, u.cod, m)
    _require_lift(phi_r(inst, f, u, g, p), d, "lhom_to_rhom output")
    return d


def rhom_to_lhom(inst: ThcInstance, f, u, g, p: Square, gamma: FinMorphism) -> FinMorphism:
    _require_lift(phi_r(inst, f, u, g, p), gamma, "rhom_to_lhom input")
    m = inst.untranspose_right(f.cod, g.dom, gamma)
    d = inst.transpose_left(f.cod, u.cod, m)
    _require_lift(phi(inst, f, u, g, p), d, "rhom_to_lhom output")
    return d


# -- the three-way equivalence ------------------------------------------------


@dataclass(frozen=True)
class EquivalenceReport:
    """Truth of ``u |> <<f,g>>_r``, ``f |> <<u,g>>`` and ``f<>u |> g``."""

    rhom_side: bool
    lhom_side: bool
    product_side: bool

    @property
    def agree(self) -> bool:
        return self.rhom_side == self.lhom_side == self.product_side


def check_tri_equivalence(inst: ThcInstance, f, u, g, exhaustive: bool = True) -> EquivalenceReport:
    pp = pushout_product(inst, f, u)
    ph = pullback_lhom(inst, u, g)
    pr = pullback_rhom(inst, f, g)
    return EquivalenceReport(
        rhom_side=has_lifting_property(inst.cat_s, u, pr.arrow, exhaustive),
        lhom_side=has_lifting_property(inst.cat_a, f, ph.arrow, exhaustive),
        product_side=has_lifting_property(inst.cat_b, pp.arrow, g, exhaustive),
    )
