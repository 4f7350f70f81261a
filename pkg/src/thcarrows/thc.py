"""Two-variable adjunctions with computable transposes.

A THC situation is a triple of bifunctors

    tensor: A x S -> B,   lhom: S^op x B -> A,   rhom: A^op x B -> S

with bijections ``B(a (x) s, b) = A(a, lhom(s, b)) = S(s, rhom(a, b))``.
Argument order is fixed as ``lhom(s, b)`` and ``rhom(a, b)``. The variance
of ``lhom_map(u, g)`` follows the exponent: for ``u: L -> K`` and
``g: X -> Y`` it is ``lhom(K, X) -> lhom(L, Y)``; likewise
``rhom_map(f, g): rhom(B, X) -> rhom(A, Y)`` for ``f: A -> B``.

Transposes are primitive; units, counits and mates are derived from them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Sequence

from .finset import CategoryError


@dataclass(frozen=True)
class ThcInstance:
    name: str
    cat_a: Any
    cat_s: Any
    cat_b: Any
    tensor: Callable
    tensor_map: Callable
    lhom: Callable
    lhom_map: Callable
    rhom: Callable
    rhom_map: Callable
    # (a, s, m: a(x)s -> b) -> a -> lhom(s, b)
    transpose_left: Callable
    # (s, b, n: a -> lhom(s, b)) -> a(x)s -> b
    untranspose_left: Callable
    # (a, s, m: a(x)s -> b) -> s -> rhom(a, b)
    transpose_right: Callable
    # (a, b, n: s -> rhom(a, b)) -> a(x)s -> b
    untranspose_right: Callable
    # swap isomorphism a(x)s -> s(x)a when A = S = B and the tensor is symmetric
    symmetry: Optional[Callable] = None


def cartesian_instance(cat, name: Optional[str] = None) -> ThcInstance:
    """The standard situation on a cartesian closed category: product, exponential, exponential."""
    return ThcInstance(
        name=name or f"{cat.name}-cartesian",
        cat_a=cat,
        cat_s=cat,
        cat_b=cat,
        tensor=cat.product,
        tensor_map=cat.product_map,
        lhom=cat.exponential,
        lhom_map=cat.exp_map,
        rhom=cat.exponential,
        rhom_map=cat.exp_map,
        transpose_left=lambda a, s, m: _checked(cat.curry, m, cat.product(a, s)),
        untranspose_left=lambda s, b, n: _checked_exp(cat.uncurry, n, s, b, cat),
        transpose_right=lambda a, s, m: _checked(cat.curry_left, m, cat.product(a, s)),
        untranspose_right=lambda a, b, n: _right_uncurry(cat, a, b, n),
        symmetry=cat.swap,
    )


def _checked(fn, m, expected_dom):
    if m.dom != expected_dom:
        raise CategoryError(f"expected a map out of {expected_dom}, got one out of {m.dom}")
    return fn(m)


def _checked_exp(fn, n, s, b, cat):
    if n.cod != cat.exponential(s, b):
        raise CategoryError(f"expected a map into {cat.exponential(s, b)}, got one into {n.cod}")
    return fn(n)


def _right_uncurry(cat, a, b, n):
    if n.cod != cat.exponential(a, b):
        raise CategoryError(f"expected a map into {cat.exponential(a, b)}, got one into {n.cod}")
    return cat.uncurry_left(n, a)


def _require(cat, x, role: str) -> None:
    try:
        cat.check_object(x)
    except CategoryError as exc:
        raise CategoryError(f"{role}: {exc}") from None


# -- units, counits, mates -------------------------------------------------


# units and counits are rebuilt constantly by the Leibniz formulas
@functools.lru_cache(maxsize=4096)
def unit(inst: ThcInstance, a, k):
    """``eta_{a,(k)}: a -> lhom(k, a (x) k)``."""
    _require(inst.cat_a, a, "unit")
    _require(inst.cat_s, k, "unit")
    return inst.transpose_left(a, k, inst.cat_b.identity(inst.tensor(a, k)))


@functools.lru_cache(maxsize=4096)
def counit(inst: ThcInstance, y, k):
    """``eps_{y,(k)}: lhom(k, y) (x) k -> y``; evaluation in the cartesian case."""
    _require(inst.cat_b, y, "counit")
    _require(inst.cat_s, k, "counit")
    return inst.untranspose_left(k, y, inst.cat_a.identity(inst.lhom(k, y)))


def unit_right(inst: ThcInstance, a, k):
    """``k -> rhom(a, a (x) k)``."""
    return inst.transpose_right(a, k, inst.cat_b.identity(inst.tensor(a, k)))


def counit_right(inst: ThcInstance, a, y):
    """``a (x) rhom(a, y) -> y``."""
    return inst.untranspose_right(a, y, inst.cat_s.identity(inst.rhom(a, y)))


def mate_left(inst: ThcInstance, a, k, m):
    """Transpose of ``m: a (x) k -> b`` built as ``lhom(k, m) . eta``."""
    return unit(inst, a, k).then(inst.lhom_map(inst.cat_s.identity(k), m))


def unmate_left(inst: ThcInstance, k, b, n):
    """Inverse of :func:`mate_left`: ``eps_b . (n (x) k)``."""
    return inst.tensor_map(n, inst.cat_s.identity(k)).then(counit(inst, b, k))


def mate_right(inst: ThcInstance, a, k, m):
    return unit_right(inst, a, k).then(inst.rhom_map(inst.cat_a.identity(a), m))


def unmate_right(inst: ThcInstance, a, b, n):
    return inst.tensor_map(inst.cat_a.identity(a), n).then(counit_right(inst, a, b))


# -- verification ------------------------------------------------------------


@dataclass
class Check:
    check_id: str
    passed: bool
    witness: str = ""
    count: int = 0


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, check_id: str, witness: Optional[str], count: int) -> None:
        self.checks.append(Check(check_id, witness is None, witness or "", count))


def _first_failure(pairs: Iterable[tuple[bool, Callable[[], str]]]):
    n = 0
    for ok, explain in pairs:
        n += 1
        if not ok:
            return explain(), n
    return None, n


def verify_thc(inst: ThcInstance, objects: Sequence, morphisms: Sequence) -> VerificationReport:
    """Exhaustively check the transposes on the given pools.

    For every ``(a, s, b)`` drawn from ``objects``: both transposes are
    bijections with two-sided inverses, both triangle identities hold, and
    every transpose is natural in each variable against every pool morphism
    landing in (or, for ``b``, leaving) that object. Objects are assumed to
    live in all three categories, as in the cartesian instance.
    """
    report = VerificationReport()
    cat_a, cat_s, cat_b = inst.cat_a, inst.cat_s, inst.cat_b
    objects = list(objects)
    morphisms = list(morphisms)
    into = {x: [m for m in morphisms if m.cod == x] for x in objects}
    out_of = {x: [m for m in morphisms if m.dom == x] for x in objects}

    for a in objects:
        for k in objects:
            eta, eps = unit(inst, a, k), counit(inst, inst.tensor(a, k), k)
            tri = inst.tensor_map(eta, cat_s.identity(k)).then(eps)
            report.add(
                f"triangle-left[{a},{k}]",
                None if tri == cat_b.identity(inst.tensor(a, k)) else f"eps.(eta(x)k) = {tri}",
                1,
            )
            lk = inst.lhom(k, a)
            tri2 = unit(inst, lk, k).then(inst.lhom_map(cat_s.identity(k), counit(inst, a, k)))
            report.add(
                f"triangle-left-dual[{a},{k}]",
                None if tri2 == cat_a.identity(lk) else f"lhom(k,eps).eta = {tri2}",
                1,
            )

    for a in objects:
        for s in objects:
            ts = inst.tensor(a, s)
            for b in objects:
                tag = f"[{a},{s},{b}]"
                homs = list(cat_b.hom(ts, b))
                lefts = [inst.transpose_left(a, s, m) for m in homs]
                rights = [inst.transpose_right(a, s, m) for m in homs]

                for side, images, target, untrans in (
                    ("left", lefts, (cat_a, a, inst.lhom(s, b)), lambda n: inst.untranspose_left(s, b, n)),
                    ("right", rights, (cat_s, s, inst.rhom(a, b)), lambda n: inst.untranspose_right(a, b, n)),
                ):
                    cat, src, dst = target
                    codomain = list(cat.hom(src, dst))
                    homset = set(homs)
                    witness = None
                    if len(set(images)) != len(images):
                        witness = "transpose is not injective"
                    elif not set(images) <= set(codomain):
                        witness = "transpose leaves the expected hom-set"
                    elif len(codomain) != len(homs):
                        witness = f"|Hom(a(x)s,b)| = {len(homs)} but transposed hom-set has {len(codomain)}"
                    else:
                        witness, _ = _first_failure(
                            (untrans(n) == m, lambda m=m: f"untranspose(transpose({m})) differs")
                            for m, n in zip(homs, images)
                        )
                        if witness is None:
                            witness, _ = _first_failure(
                                (untrans(n) in homset, lambda n=n: f"untranspose({n}) leaves the hom-set")
                                for n in codomain
                            )
                    report.add(f"bijection-{side}{tag}", witness, len(homs))

                # naturality in each variable separately
                id_a, id_s, id_b = cat_a.identity(a), cat_s.identity(s), cat_b.identity(b)
                # each entry: (shift the argument m, expected left transpose, expected right transpose, quadruple)
                variations = {
                    "a": [
                        (inst.tensor_map(alpha, id_s).then, alpha.dom, s,
                         lambda tl, alpha=alpha: alpha.then(tl),
                         lambda tr, r=inst.rhom_map(alpha, id_b): tr.then(r),
                         (alpha, "id", "id"))
                        for alpha in into[a]
                    ],
                    "s": [
                        (inst.tensor_map(id_a, sigma).then, a, sigma.dom,
                         lambda tl, l=inst.lhom_map(sigma, id_b): tl.then(l),
                         lambda tr, sigma=sigma: sigma.then(tr),
                         ("id", sigma, "id"))
                        for sigma in into[s]
                    ],
                    "b": [
                        (lambda m, beta=beta: m.then(beta), a, s,
                         lambda tl, l=inst.lhom_map(id_s, beta): tl.then(l),
                         lambda tr, r=inst.rhom_map(id_a, beta): tr.then(r),
                         ("id", "id", beta))
                        for beta in out_of[b]
                    ],
                }
                for var, cases in variations.items():
                    witness = None
                    count = 0
                    for shift, a2, s2, left_of, right_of, quad in cases:
                        for m, tl, tr in zip(homs, lefts, rights):
                            count += 1
                            mm = shift(m)
                            if (inst.transpose_left(a2, s2, mm) != left_of(tl)
                                    or inst.transpose_right(a2, s2, mm) != right_of(tr)):
                                al, si, be = quad
                                witness = f"m={m}; alpha={al}; sigma={si}; beta={be}"
                                break
                        if witness:
                            break
                    report.add(f"naturality-{var}{tag}", witness, count)
    return report


def all_morphisms(cat, objects: Sequence) -> list:
    return [m for x in objects for y in objects for m in cat.hom(x, y)]
