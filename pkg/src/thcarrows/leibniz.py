"""Leibniz operations on arrow categories and the bijections between their hom-sets.

For ``f: A -> B``, ``u: L -> K`` and ``g: X -> Y``:

* ``f <> u : P -> B (x) K`` with ``P = (B (x) L) +_{A (x) L} (A (x) K)``;
* ``<<u, g>> : lhom(K, X) -> Q`` with ``Q = lhom(L, X) x_{lhom(L, Y)} lhom(K, Y)``;
* ``<<f, g>>_r : rhom(B, X) -> R`` with ``R = rhom(A, X) x_{rhom(A, Y)} rhom(B, Y)``.

``phi``/``psi`` translate squares ``f <> u -> g`` to squares ``f -> <<u, g>>``
and back; ``phi_r``/``psi_r`` do the same against ``u -> <<f, g>>_r``. They
are written out component by component rather than derived from a generic
adjunction, and re-check the projection/injection equations they rely on.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator

from .finset import CategoryError, FinMorphism, _trusted
from .thc import ThcInstance, counit, counit_right, unit, unit_right


class NonCommutingSquare(CategoryError):
    pass


@dataclass(frozen=True)
class Square:
    """A morphism ``source -> target`` of an arrow category.

    ``top: source.dom -> target.dom`` and ``bottom: source.cod -> target.cod``
    with ``bottom . source = target . top``.
    """

    source: FinMorphism
    target: FinMorphism
    top: FinMorphism
    bottom: FinMorphism

    def __post_init__(self):
        s, t = self.source, self.target
        if self.top.dom != s.dom or self.top.cod != t.dom:
            raise CategoryError(f"top {self.top} does not run {s.dom} -> {t.dom}")
        if self.bottom.dom != s.cod or self.bottom.cod != t.cod:
            raise CategoryError(f"bottom {self.bottom} does not run {s.cod} -> {t.cod}")
        if s.then(self.bottom).table != self.top.then(t).table:
            raise NonCommutingSquare(f"square with top {list(self.top.table)} and bottom "
                                     f"{list(self.bottom.table)} does not commute")

    @classmethod
    def identity(cls, cat, arrow: FinMorphism) -> "Square":
        return cls(arrow, arrow, cat.identity(arrow.dom), cat.identity(arrow.cod))

    def then(self, other: "Square") -> "Square":
        if self.target != other.source:
            raise CategoryError("squares are not composable")
        return Square(self.source, other.target, self.top.then(other.top), self.bottom.then(other.bottom))

    @property
    def key(self) -> tuple:
        return (self.top.table, self.bottom.table)


def _square(source, target, top, bottom) -> Square:
    # commutativity already established by the caller
    sq = object.__new__(Square)
    sq.__dict__.update(source=source, target=target, top=top, bottom=bottom)
    return sq


def squares(cat, f: FinMorphism, g: FinMorphism) -> Iterator[Square]:
    """Every square ``f -> g``, lexicographic in ``(top, bottom)``."""
    gt = g.table
    for top in cat.hom(f.dom, g.dom):
        forced: dict[int, int] = {}
        ok = True
        for a, b in enumerate(f.table):
            v = gt[top.table[a]]
            if forced.setdefault(b, v) != v:
                ok = False
                break
        if not ok:
            continue
        for bottom in cat.hom(f.cod, g.cod, fixed=forced):
            yield _square(f, g, top, bottom)


# -- the three Leibniz operations -------------------------------------------


@dataclass(frozen=True)
class PushoutProduct:
    arrow: FinMorphism  # f <> u : P -> B (x) K
    apex: object  # P
    inj_bl: FinMorphism  # B (x) L -> P
    inj_ak: FinMorphism  # A (x) K -> P


@dataclass(frozen=True)
class PullbackHom:
    arrow: FinMorphism  # hom(B or K, X) -> apex
    apex: object  # Q or R
    proj_x: FinMorphism  # apex -> hom(-, X) corner
    proj_y: FinMorphism  # apex -> hom(-, Y) corner


@functools.lru_cache(maxsize=4096)
def pushout_product(inst: ThcInstance, f: FinMorphism, u: FinMorphism) -> PushoutProduct:
    cat_a, cat_s, cat_b = inst.cat_a, inst.cat_s, inst.cat_b
    a, b = f.dom, f.cod
    el, k = u.dom, u.cod
    p, i_bl, i_ak = cat_b.pushout(inst.tensor_map(f, cat_s.identity(el)), inst.tensor_map(cat_a.identity(a), u))
    arrow = cat_b.copair(p, inst.tensor_map(cat_a.identity(b), u), inst.tensor_map(f, cat_s.identity(k)))
    return PushoutProduct(arrow, p, i_bl, i_ak)


@functools.lru_cache(maxsize=4096)
def pullback_lhom(inst: ThcInstance, u: FinMorphism, g: FinMorphism) -> PullbackHom:
    cat_a, cat_s, cat_b = inst.cat_a, inst.cat_s, inst.cat_b
    el, k = u.dom, u.cod
    x, y = g.dom, g.cod
    q, p_x, p_y = cat_a.pullback(inst.lhom_map(cat_s.identity(el), g), inst.lhom_map(u, cat_b.identity(y)))
    arrow = cat_a.pair(q, inst.lhom_map(u, cat_b.identity(x)), inst.lhom_map(cat_s.identity(k), g))
    return PullbackHom(arrow, q, p_x, p_y)


@functools.lru_cache(maxsize=4096)
def pullback_rhom(inst: ThcInstance, f: FinMorphism, g: FinMorphism) -> PullbackHom:
    cat_a, cat_s, cat_b = inst.cat_a, inst.cat_s, inst.cat_b
    a, b = f.dom, f.cod
    x, y = g.dom, g.cod
    r, p_x, p_y = cat_s.pullback(inst.rhom_map(cat_a.identity(a), g), inst.rhom_map(f, cat_b.identity(y)))
    arrow = cat_s.pair(r, inst.rhom_map(f, cat_b.identity(x)), inst.rhom_map(cat_a.identity(b), g))
    return PullbackHom(arrow, r, p_x, p_y)


# -- action on squares -------------------------------------------------------


def leibniz_on_squares(inst: ThcInstance, sq_f: Square, sq_u: Square) -> Square:
    """``sq_f <> sq_u : f <> u -> f' <> u'``, induced on the pushout corners."""
    alpha, beta = sq_f.top, sq_f.bottom
    lam, kap = sq_u.top, sq_u.bottom
    src = pushout_product(inst, sq_f.source, sq_u.source)
    dst = pushout_product(inst, sq_f.target, sq_u.target)
    top = inst.cat_b.copair(
        src.apex,
        inst.tensor_map(beta, lam).then(dst.inj_bl),
        inst.tensor_map(alpha, kap).then(dst.inj_ak),
    )
    return Square(src.arrow, dst.arrow, top, inst.tensor_map(beta, kap))


def lhom_on_squares(inst: ThcInstance, sq_u: Square, sq_g: Square) -> Square:
    """``<<sq_u, sq_g>> : <<u, g>> -> <<u', g'>>`` for ``sq_u: u' -> u`` and ``sq_g: g -> g'``."""
    lam, kap = sq_u.top, sq_u.bottom
    chi, ups = sq_g.top, sq_g.bottom
    src = pullback_lhom(inst, sq_u.target, sq_g.source)
    dst = pullback_lhom(inst, sq_u.source, sq_g.target)
    bottom = inst.cat_a.pair(
        dst.apex,
        src.proj_x.then(inst.lhom_map(lam, chi)),
        src.proj_y.then(inst.lhom_map(kap, ups)),
    )
    return Square(src.arrow, dst.arrow, inst.lhom_map(kap, chi), bottom)


def rhom_on_squares(inst: ThcInstance, sq_f: Square, sq_g: Square) -> Square:
    """``<<sq_f, sq_g>>_r : <<f, g>>_r -> <<f', g'>>_r`` for ``sq_f: f' -> f`` and ``sq_g: g -> g'``."""
    alpha, beta = sq_f.top, sq_f.bottom
    chi, ups = sq_g.top, sq_g.bottom
    src = pullback_rhom(inst, sq_f.target, sq_g.source)
    dst = pullback_rhom(inst, sq_f.source, sq_g.target)
    bottom = inst.cat_s.pair(
        dst.apex,
        src.proj_x.then(inst.rhom_map(alpha, chi)),
        src.proj_y.then(inst.rhom_map(beta, ups)),
    )
    return Square(src.arrow, dst.arrow, inst.rhom_map(beta, chi), bottom)


# -- the bijections ----------------------------------------------------------


def _expect(cond: bool, what: str) -> None:
    if not cond:
        raise NonCommutingSquare(what)


def _check_source(sq: Square, arrow: FinMorphism, target: FinMorphism) -> None:
    if sq.source != arrow:
        raise CategoryError("square does not start at the computed Leibniz arrow")
    if sq.target != target:
        raise CategoryError("square does not end at the given arrow")


def phi(inst: ThcInstance, f, u, g, sq: Square) -> Square:
    """Square ``(a, b): f <> u -> g``  to  square ``(a^, b^): f -> <<u, g>>``.

    ``a^`` is the mate of ``a . i_{A(x)K}``; ``b^`` is paired into ``Q`` from
    the mates of ``a . i_{B(x)L}`` and of ``b``.
    """
    cat_a, cat_s = inst.cat_a, inst.cat_s
    pp = pushout_product(inst, f, u)
    ph = pullback_lhom(inst, u, g)
    _check_source(sq, pp.arrow, g)
    a, b = sq.top, sq.bottom
    ob_a, ob_b, ob_l, ob_k = f.dom, f.cod, u.dom, u.cod

    a_hat = unit(inst, ob_a, ob_k).then(inst.lhom_map(cat_s.identity(ob_k), pp.inj_ak.then(a)))
    b_lx = unit(inst, ob_b, ob_l).then(inst.lhom_map(cat_s.identity(ob_l), pp.inj_bl.then(a)))
    b_ky = unit(inst, ob_b, ob_k).then(inst.lhom_map(cat_s.identity(ob_k), b))
    b_hat = cat_a.pair(ph.apex, b_lx, b_ky)

    # the square closes iff it closes after each pullback projection
    _expect(a_hat.then(ph.arrow).then(ph.proj_x) == f.then(b_lx), "phi: first projection equation fails")
    _expect(a_hat.then(ph.arrow).then(ph.proj_y) == f.then(b_ky), "phi: second projection equation fails")
    return Square(f, ph.arrow, a_hat, b_hat)


def psi(inst: ThcInstance, f, u, g, sq: Square) -> Square:
    """Square ``(x, y): f -> <<u, g>>``  to  square ``(x~, y~): f <> u -> g``."""
    cat_a, cat_s, cat_b = inst.cat_a, inst.cat_s, inst.cat_b
    pp = pushout_product(inst, f, u)
    ph = pullback_lhom(inst, u, g)
    _check_source(sq, f, ph.arrow)
    x, y = sq.top, sq.bottom
    ob_l, ob_k = u.dom, u.cod
    ob_x, ob_y = g.dom, g.cod

    x_ak = inst.tensor_map(x, cat_s.identity(ob_k)).then(counit(inst, ob_x, ob_k))
    x_bl = inst.tensor_map(y.then(ph.proj_x), cat_s.identity(ob_l)).then(counit(inst, ob_x, ob_l))
    x_tilde = cat_b.copair(pp.apex, x_bl, x_ak)
    y_tilde = inst.tensor_map(y.then(ph.proj_y), cat_s.identity(ob_k)).then(counit(inst, ob_y, ob_k))

    # the square closes iff it closes after each pushout injection
    _expect(pp.inj_bl.then(x_tilde).then(g) == pp.inj_bl.then(pp.arrow).then(y_tilde),
            "psi: equation on B(x)L fails")
    _expect(pp.inj_ak.then(x_tilde).then(g) == pp.inj_ak.then(pp.arrow).then(y_tilde),
            "psi: equation on A(x)K fails")
    return Square(pp.arrow, g, x_tilde, y_tilde)


def phi_r(inst: ThcInstance, f, u, g, sq: Square) -> Square:
    """Square ``(a, b): f <> u -> g``  to  square ``u -> <<f, g>>_r``.

    The roles of ``f`` and ``u`` are exchanged relative to :func:`phi`: mates
    are taken along ``A (x) - -| rhom(A, -)``.
    """
    cat_a, cat_s = inst.cat_a, inst.cat_s
    pp = pushout_product(inst, f, u)
    pr = pullback_rhom(inst, f, g)
    _check_source(sq, pp.arrow, g)
    a, b = sq.top, sq.bottom
    ob_a, ob_b, ob_l, ob_k = f.dom, f.cod, u.dom, u.cod

    a_til = unit_right(inst, ob_b, ob_l).then(inst.rhom_map(cat_a.identity(ob_b), pp.inj_bl.then(a)))
    b_ax = unit_right(inst, ob_a, ob_k).then(inst.rhom_map(cat_a.identity(ob_a), pp.inj_ak.then(a)))
    b_by = unit_right(inst, ob_b, ob_k).then(inst.rhom_map(cat_a.identity(ob_b), b))
    b_til = cat_s.pair(pr.apex, b_ax, b_by)

    _expect(a_til.then(pr.arrow).then(pr.proj_x) == u.then(b_ax), "phi_r: first projection equation fails")
    _expect(a_til.then(pr.arrow).then(pr.proj_y) == u.then(b_by), "phi_r: second projection equation fails")
    return Square(u, pr.arrow, a_til, b_til)


def psi_r(inst: ThcInstance, f, u, g, sq: Square) -> Square:
    """Square ``(x, y): u -> <<f, g>>_r``  to  square ``f <> u -> g``."""
    cat_a, cat_b = inst.cat_a, inst.cat_b
    pp = pushout_product(inst, f, u)
    pr = pullback_rhom(inst, f, g)
    _check_source(sq, u, pr.arrow)
    x, y = sq.top, sq.bottom
    ob_a, ob_b = f.dom, f.cod
    ob_x, ob_y = g.dom, g.cod

    x_bl = inst.tensor_map(cat_a.identity(ob_b), x).then(counit_right(inst, ob_b, ob_x))
    x_ak = inst.tensor_map(cat_a.identity(ob_a), y.then(pr.proj_x)).then(counit_right(inst, ob_a, ob_x))
    x_tilde = cat_b.copair(pp.apex, x_bl, x_ak)
    y_tilde = inst.tensor_map(cat_a.identity(ob_b), y.then(pr.proj_y)).then(counit_right(inst, ob_b, ob_y))

    _expect(pp.inj_bl.then(x_tilde).then(g) == pp.inj_bl.then(pp.arrow).then(y_tilde),
            "psi_r: equation on B(x)L fails")
    _expect(pp.inj_ak.then(x_tilde).then(g) == pp.inj_ak.then(pp.arrow).then(y_tilde),
            "psi_r: equation on A(x)K fails")
    return Square(pp.arrow, g, x_tilde, y_tilde)


# -- symmetric-instance identification ------------------------------------


def swap_square(inst: ThcInstance, f, u, g, sq: Square) -> Square:
    """Transport a square ``f <> u -> g`` to ``u <> f -> g`` along the symmetry of the tensor."""
    if inst.symmetry is None:
        raise CategoryError(f"{inst.name} has no symmetry")
    pp = pushout_product(inst, f, u)
    qq = pushout_product(inst, u, f)
    sym = inst.symmetry
    # u <> f has corners K(x)A and L(x)B; swap each into the f <> u corners
    top_iso = inst.cat_b.copair(
        qq.apex,
        sym(u.cod, f.dom).then(pp.inj_ak),
        sym(u.dom, f.cod).then(pp.inj_bl),
    )
    return Square(qq.arrow, g, top_iso.then(sq.top), sym(u.cod, f.cod).then(sq.bottom))


def hom_count(cat, f, g) -> int:
    return sum(1 for _ in squares(cat, f, g))


def check_mediators(inst: ThcInstance, f, u, g) -> list[str]:
    """Commutation checks on the constructed corners of all three Leibniz arrows."""
    out = []
    pp = pushout_product(inst, f, u)
    cat_a, cat_s = inst.cat_a, inst.cat_s
    if pp.inj_bl.then(pp.arrow) != inst.tensor_map(cat_a.identity(f.cod), u):
        out.append("f<>u . i_{B(x)L} != B(x)u")
    if pp.inj_ak.then(pp.arrow) != inst.tensor_map(f, cat_s.identity(u.cod)):
        out.append("f<>u . i_{A(x)K} != f(x)K")
    ph = pullback_lhom(inst, u, g)
    if ph.arrow.then(ph.proj_x) != inst.lhom_map(u, inst.cat_b.identity(g.dom)):
        out.append("p . <<u,g>> != lhom(u,X)")
    if ph.arrow.then(ph.proj_y) != inst.lhom_map(cat_s.identity(u.cod), g):
        out.append("p . <<u,g>> != lhom(K,g)")
    pr = pullback_rhom(inst, f, g)
    if pr.arrow.then(pr.proj_x) != inst.rhom_map(f, inst.cat_b.identity(g.dom)):
        out.append("p . <<f,g>>_r != rhom(f,X)")
    if pr.arrow.then(pr.proj_y) != inst.rhom_map(cat_a.identity(f.cod), g):
        out.append("p . <<f,g>>_r != rhom(B,g)")
    return out
