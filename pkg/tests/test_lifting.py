import itertools

import pytest

from oracles import all_small_morphisms, morphism, naive_lifting, naive_lifts
from thcarrows.finset import FINSET as C
from thcarrows.leibniz import NonCommutingSquare, phi, phi_r, pushout_product, squares
from thcarrows.lifting import (
    Lift,
    LiftingProblem,
    NotALift,
    check_tri_equivalence,
    from_lhom,
    from_rhom,
    has_lifting_property,
    lhom_to_rhom,
    rhom_to_lhom,
    solve_all,
    to_lhom,
    to_rhom,
)
from thcarrows.poset import POSET as P
from thcarrows.thc import unit

SMALL = [C.obj(n) for n in range(3)]
SMALL_MAPS = all_small_morphisms(C, SMALL)


def test_identity_left_has_one_lift():
    ident = C.identity(C.obj(2))
    g = morphism(C, 3, 2, [0, 1, 1])
    for p in squares(C, ident, g):
        (lift,) = solve_all(C, p)
        assert lift.diagonal == p.top


def test_identity_right_has_one_lift():
    f = morphism(C, 1, 2, [1])
    ident = C.identity(C.obj(3))
    for p in squares(C, f, ident):
        (lift,) = solve_all(C, p)
        assert lift.diagonal == p.bottom


def test_solutions_match_double_filter():
    left = morphism(C, 1, 2, [0])
    right = morphism(C, 2, 1, [0, 0])
    for p in squares(C, left, right):
        got = [l.diagonal.table for l in solve_all(C, p)]
        assert got == naive_lifts(C, left, right, p.top.table, p.bottom.table)
        assert len(got) == 2
    for f, g in itertools.product(SMALL_MAPS, SMALL_MAPS):
        for p in squares(C, f, g):
            got = [l.diagonal.table for l in solve_all(C, p)]
            assert got == naive_lifts(C, f, g, p.top.table, p.bottom.table)


def test_problem_and_lift_validation():
    left = morphism(C, 1, 2, [0])
    right = morphism(C, 2, 1, [0, 0])
    p = LiftingProblem(left, right, morphism(C, 1, 2, [1]), morphism(C, 2, 1, [0, 0]))
    assert p.left == left and p.right == right
    with pytest.raises(NotALift):
        Lift(p, morphism(C, 2, 2, [0, 0]))
    with pytest.raises(NonCommutingSquare):
        LiftingProblem(left, C.identity(C.obj(2)), morphism(C, 1, 2, [1]), C.identity(C.obj(2)))


def test_has_lifting_property_examples():
    surj = morphism(C, 2, 1, [0, 0])
    assert has_lifting_property(C, surj, C.identity(C.obj(3)))
    for g in SMALL_MAPS:
        assert has_lifting_property(C, C.identity(C.obj(2)), g)
    f = morphism(C, 0, 1, [])
    g = morphism(C, 2, 1, [0, 0])
    assert has_lifting_property(C, f, g, exhaustive=True) == naive_lifting(C, f, g) is True


def test_poset_lifting_by_enumeration():
    objs = [P.chain(0), P.chain(1), P.chain(2), P.antichain(2)]
    maps = all_small_morphisms(P, objs)
    for f, g in itertools.product(maps, maps):
        assert has_lifting_property(P, f, g) == naive_lifting(P, f, g)


def test_tri_equivalence_with_identity_g(inst):
    for f, u in itertools.product(SMALL_MAPS, SMALL_MAPS[::2]):
        r = check_tri_equivalence(inst, f, u, C.identity(C.obj(2)))
        assert r.rhom_side and r.lhom_side and r.product_side and r.agree


def _transfer_everything(inst, cat, f, u, g):
    pp = pushout_product(inst, f, u)
    for p in squares(cat, pp.arrow, g):
        sols = [l.diagonal for l in solve_all(cat, p)]
        lsols = [l.diagonal for l in solve_all(cat, phi(inst, f, u, g, p))]
        rsols = [l.diagonal for l in solve_all(cat, phi_r(inst, f, u, g, p))]
        assert len(sols) == len(lsols) == len(rsols)
        to_l = [to_lhom(inst, f, u, g, p, d) for d in sols]
        to_r = [to_rhom(inst, f, u, g, p, d) for d in sols]
        assert sorted(to_l, key=lambda m: m.table) == lsols
        assert sorted(to_r, key=lambda m: m.table) == rsols
        for d, dl, dr in zip(sols, to_l, to_r):
            assert from_lhom(inst, f, u, g, p, dl) == d
            assert from_rhom(inst, f, u, g, p, dr) == d
            assert lhom_to_rhom(inst, f, u, g, p, dl) == dr
            assert rhom_to_lhom(inst, f, u, g, p, dr) == dl
            assert to_rhom(inst, f, u, g, p, from_lhom(inst, f, u, g, p, dl)) == dr


def test_transfers_on_a_small_pool(inst):
    for f, u, g in itertools.product(SMALL_MAPS[::3], SMALL_MAPS[::2], SMALL_MAPS[::2]):
        _transfer_everything(inst, C, f, u, g)


def test_transfers_in_poset_instance(pinst):
    objs = [P.chain(1), P.chain(2), P.antichain(2)]
    maps = all_small_morphisms(P, objs)
    for f, u, g in itertools.product(maps[::4], maps[::5], maps[::3]):
        _transfer_everything(pinst, P, f, u, g)


def test_transfer_rejects_non_solution(inst):
    f = u = morphism(C, 1, 2, [0])
    g = morphism(C, 2, 1, [0, 0])
    p = next(iter(squares(C, pushout_product(inst, f, u).arrow, g)))
    bogus = next(d for d in C.hom(p.source.cod, g.dom) if p.source.then(d) != p.top)
    with pytest.raises(NotALift):
        to_lhom(inst, f, u, g, p, bogus)
    with pytest.raises(NotALift):
        to_rhom(inst, f, u, g, p, bogus)


def test_single_variable_transfer(inst):
    # with u the empty map into K, f <> u is f (x) K and the lhom side is the plain transpose
    k = C.obj(2)
    u = morphism(C, 0, 2, [])
    f = morphism(C, 1, 2, [0])
    g = morphism(C, 2, 1, [0, 0])
    pp = pushout_product(inst, f, u)
    for p in squares(C, pp.arrow, g):
        for lift in solve_all(C, p):
            alpha = lift.diagonal
            expected = unit(inst, f.cod, k).then(inst.lhom_map(C.identity(k), alpha))
            assert to_lhom(inst, f, u, g, p, alpha) == expected == inst.transpose_left(f.cod, k, alpha)
