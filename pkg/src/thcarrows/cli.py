"""Command-line front end.

Documents are line-oriented text::

    # comment
    FORMAT 1
    INSTANCE finset
    OBJECTS
    A 1
    B 2 0<1            (posets: generating pairs i<j)
    MORPHISMS
    f A B 0            (name, domain, codomain, table)
    CLASSES
    S f @isomorphisms  (morphism names or builtins, see BUILTIN_CLASSES)
    COMMANDPARAMS
    which prod
    f f

Exit status: 0 all checks pass, 1 some check fails, 2 the input is unusable.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .finset import CategoryError, FinSetCategory, check_pullback, check_pushout
from .leibniz import Square, phi, phi_r, pullback_lhom, pullback_rhom, pushout_product, squares
from .lifting import check_tri_equivalence, from_lhom, from_rhom, lhom_to_rhom, solve_all, to_lhom, to_rhom
from .poset import PosetCategory, _closure
from .saturation import (
    MorphismClass,
    Universe,
    UniverseEscape,
    check_closure_theorem,
    cosaturate,
    is_wfs,
    left_complement,
    right_complement,
    saturate,
)
from .thc import all_morphisms, cartesian_instance, verify_thc

FORMAT_VERSION = "1"
SECTIONS = ("OBJECTS", "MORPHISMS", "CLASSES", "COMMANDPARAMS")
BUILTIN_CLASSES = ("@all", "@empty", "@isomorphisms", "@identities", "@injections", "@surjections")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line

    def __str__(self) -> str:
        msg = self.args[0]
        return f"line {self.line}: {msg}" if self.line else msg


# -- documents -----------------------------------------------------------------


@dataclass
class Document:
    version: str
    instance: str
    cat: object
    objects: dict = field(default_factory=dict)  # name -> object
    morphisms: dict = field(default_factory=dict)  # name -> morphism
    classes: dict = field(default_factory=dict)  # name -> (line, member tokens)
    params: dict = field(default_factory=dict)  # key -> (line, values)
    _universe: Optional[Universe] = None

    def param(self, key: str, default: Optional[str] = None) -> str:
        if key in self.params:
            return " ".join(self.params[key][1])
        if default is None:
            raise InputError(f"missing command parameter '{key}'")
        return default

    def morphism(self, key: str):
        """The morphism named by parameter ``key``."""
        name = self.param(key)
        if name not in self.morphisms:
            line = self.params[key][0]
            raise InputError(f"parameter '{key}' names unknown morphism '{name}'", line)
        return self.morphisms[name]

    def object_name(self, x) -> str:
        for name, y in self.objects.items():
            if y == x:
                return name
        return str(x)

    def morphism_name(self, m) -> str:
        for name, n in self.morphisms.items():
            if n == m:
                return name
        return ""

    @property
    def universe(self) -> Universe:
        if self._universe is None:
            objs = list(dict.fromkeys(self.objects.values()))
            self._universe = Universe.full(self.cat, objs, name=f"{self.instance} on objects {' '.join(self.objects)}")
        return self._universe

    def klass(self, key: str) -> MorphismClass:
        name = self.param(key)
        return self._resolve_class(name, self.params[key][0], ())

    def _resolve_class(self, name: str, line: int, stack: tuple) -> MorphismClass:
        u = self.universe
        builtin = {
            "@all": u.everything,
            "@empty": u.empty,
            "@isomorphisms": u.isomorphisms,
            "@identities": u.identities,
            "@injections": u.injections,
            "@surjections": u.surjections,
        }
        if name in builtin:
            return builtin[name]()
        for prefix, op in (("@left:", left_complement), ("@right:", right_complement)):
            if name.startswith(prefix):
                return op(self._resolve_class(name[len(prefix):], line, stack)).renamed(name)
        if name not in self.classes:
            raise InputError(f"unknown class '{name}'", line)
        if name in stack:
            raise InputError(f"class '{name}' is defined in terms of itself", line)
        cline, tokens = self.classes[name]
        members = frozenset()
        for tok in tokens:
            if tok in self.morphisms:
                i = u.find(self.morphisms[tok])
                if i is None:
                    raise InputError(f"morphism '{tok}' is not in the universe", cline)
                members |= {i}
            else:
                members |= self._resolve_class(tok, cline, stack + (name,)).members
        return MorphismClass(u, members, name)


def _make_category(kind: str):
    if kind == "finset":
        return FinSetCategory()
    if kind == "poset":
        return PosetCategory()
    raise InputError(f"unknown instance '{kind}' (expected finset or poset)")


def _int(tok: str, what: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"{what} must be an integer, got '{tok}'", line) from None


def parse_document(text: str, instance_override: Optional[str] = None) -> Document:
    version, instance, section = None, None, None
    rows: dict = {s: [] for s in SECTIONS}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "FORMAT":
            if rest != [FORMAT_VERSION]:
                raise InputError(f"unsupported format {' '.join(rest) or '(missing)'}; expected {FORMAT_VERSION}", n)
            version = rest[0]
        elif head == "INSTANCE":
            if len(rest) != 1:
                raise InputError("INSTANCE takes exactly one value", n)
            instance = rest[0]
        elif head in SECTIONS:
            if rest:
                raise InputError(f"section header {head} takes no values", n)
            section = head
        elif section is None:
            raise InputError(f"'{head}' appears before any section header", n)
        else:
            rows[section].append((n, head, rest))
    if version is None:
        raise InputError("missing FORMAT line")
    kind = instance_override or instance or "finset"
    doc = Document(version, kind, _make_category(kind))

    for n, name, rest in rows["OBJECTS"]:
        if name in doc.objects:
            raise InputError(f"object '{name}' declared twice", n)
        if not rest:
            raise InputError(f"object '{name}' needs a size", n)
        size = _int(rest[0], "object size", n)
        if size < 0:
            raise InputError("object size must be non-negative", n)
        pairs = []
        for tok in rest[1:]:
            if kind != "poset":
                raise InputError(f"order pairs are only allowed for posets, got '{tok}'", n)
            lo, sep, hi = tok.partition("<")
            if not sep:
                raise InputError(f"order pair must look like i<j, got '{tok}'", n)
            i, j = _int(lo, "order element", n), _int(hi, "order element", n)
            if not (0 <= i < size and 0 <= j < size):
                raise InputError(f"order pair {tok} is outside 0..{size - 1}", n)
            pairs.append((i, j))
        try:
            if kind == "poset":
                m = _closure(size, pairs)
                rel = [(i, j) for i in range(size) for j in range(size) if m[i][j]]
                doc.objects[name] = doc.cat.obj(size, rel, label=name)
            else:
                doc.objects[name] = doc.cat.obj(size, label=name)
        except CategoryError as exc:
            raise InputError(str(exc), n) from None

    for n, name, rest in rows["MORPHISMS"]:
        if name in doc.morphisms:
            raise InputError(f"morphism '{name}' declared twice", n)
        if len(rest) < 2:
            raise InputError(f"morphism '{name}' needs a domain and a codomain", n)
        ends = []
        for tok in rest[:2]:
            if tok not in doc.objects:
                raise InputError(f"morphism '{name}' refers to unknown object '{tok}'", n)
            ends.append(doc.objects[tok])
        table = [_int(t, "table entry", n) for t in rest[2:]]
        try:
            doc.morphisms[name] = doc.cat.morphism(ends[0], ends[1], table)
        except CategoryError as exc:
            raise InputError(f"morphism '{name}': {exc}", n) from None

    for n, name, rest in rows["CLASSES"]:
        if name in doc.classes or name.startswith("@"):
            raise InputError(f"class '{name}' declared twice or shadows a builtin", n)
        for tok in rest:
            if tok not in doc.morphisms and tok not in BUILTIN_CLASSES and not tok.startswith(("@left:", "@right:")):
                if not any(r[1] == tok for r in rows["CLASSES"]):
                    raise InputError(f"class '{name}' refers to unknown member '{tok}'", n)
        doc.classes[name] = (n, rest)

    for n, key, rest in rows["COMMANDPARAMS"]:
        if key in doc.params:
            raise InputError(f"parameter '{key}' given twice", n)
        doc.params[key] = (n, rest)
    return doc


# -- reports ---------------------------------------------------------------------


@dataclass
class Report:
    lines: list = field(default_factory=list)
    checks: list = field(default_factory=list)  # (check_id, passed, witness)

    def say(self, text: str = "") -> None:
        self.lines.append(text)

    def check(self, check_id: str, passed: bool, witness: str = "") -> None:
        self.checks.append((check_id, passed, witness))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _table(m) -> str:
    return "[" + " ".join(map(str, m.table)) + "]"


def _arrow(doc: Document, m) -> str:
    name = doc.morphism_name(m)
    body = f"{doc.object_name(m.dom)}->{doc.object_name(m.cod)} {_table(m)}"
    return f"{name} = {body}" if name else body


# -- commands ---------------------------------------------------------------------


def _corrupted(inst, side: str):
    """An instance whose chosen transpose nudges the first table entry of every result."""
    key = {"left": "transpose_left", "right": "transpose_right"}.get(side)
    if key is None:
        raise InputError(f"corrupt must be left or right, got '{side}'")
    good = getattr(inst, key)
    cat = inst.cat_a if side == "left" else inst.cat_s

    def bad(a, s, m):
        n = good(a, s, m)
        if n.dom.size == 0 or n.cod.size < 2:
            return n
        t = list(n.table)
        t[0] = (t[0] + 1) % n.cod.size
        return cat._build(n.dom, n.cod, tuple(t))

    fields = {k: getattr(inst, k) for k in inst.__dataclass_fields__}
    fields[key] = bad
    fields["name"] = f"{inst.name} (corrupted {side} transpose)"
    return type(inst)(**fields)


def cmd_verify_thc(doc: Document, rep: Report) -> None:
    inst = cartesian_instance(doc.cat)
    if "corrupt" in doc.params:
        inst = _corrupted(inst, doc.param("corrupt"))
    objects = list(dict.fromkeys(doc.objects.values()))
    pool = doc.param("pool", "declared")
    if pool == "exhaustive":
        morphisms = all_morphisms(doc.cat, objects)
    elif pool == "declared":
        morphisms = list(dict.fromkeys(doc.morphisms.values()))
    else:
        raise InputError(f"pool must be declared or exhaustive, got '{pool}'", doc.params["pool"][0])
    rep.say(f"instance: {inst.name}")
    rep.say(f"pools: {len(objects)} objects, {len(morphisms)} morphisms")
    report = verify_thc(inst, objects, morphisms)
    for c in report.checks:
        rep.check(c.check_id, c.passed, c.witness)
        rep.say(f"{'pass' if c.passed else 'FAIL'} {c.check_id} items={c.count}" + (f" {c.witness}" if c.witness else ""))
    rep.say(f"summary: {len(report.checks) - len(report.failures)}/{len(report.checks)} checks pass")


def cmd_leibniz(doc: Document, rep: Report) -> None:
    inst = cartesian_instance(doc.cat)
    which = doc.param("which")
    tests = list(dict.fromkeys(doc.objects.values()))
    if which == "prod":
        f, u = doc.morphism("f"), doc.morphism("u")
        pp = pushout_product(inst, f, u)
        arrow = pp.arrow
        rep.say(f"pushout-product of {_arrow(doc, f)} and {_arrow(doc, u)}")
        mediators = [
            ("corner B(x)L", pp.inj_bl.then(arrow) == inst.tensor_map(doc.cat.identity(f.cod), u)),
            ("corner A(x)K", pp.inj_ak.then(arrow) == inst.tensor_map(f, doc.cat.identity(u.cod))),
        ]
        span = (inst.tensor_map(f, doc.cat.identity(u.dom)), inst.tensor_map(doc.cat.identity(f.dom), u))
        audit = check_pushout(doc.cat, *span, tests)
    elif which in ("lhom", "rhom"):
        first = "u" if which == "lhom" else "f"
        v, g = doc.morphism(first), doc.morphism("g")
        ph = (pullback_lhom if which == "lhom" else pullback_rhom)(inst, v, g)
        arrow = ph.arrow
        rep.say(f"pullback-{which} of {_arrow(doc, v)} and {_arrow(doc, g)}")
        hom = inst.lhom_map if which == "lhom" else inst.rhom_map
        mediators = [
            ("projection X", arrow.then(ph.proj_x) == hom(v, doc.cat.identity(g.dom))),
            ("projection Y", arrow.then(ph.proj_y) == hom(doc.cat.identity(v.cod), g)),
        ]
        cospan = (hom(doc.cat.identity(v.dom), g), hom(v, doc.cat.identity(g.cod)))
        audit = check_pullback(doc.cat, *cospan, tests)
    else:
        raise InputError(f"which must be prod, lhom or rhom, got '{which}'", doc.params["which"][0])

    rep.say(f"domain: {arrow.dom} size {arrow.dom.size}")
    rep.say(f"codomain: {arrow.cod} size {arrow.cod.size}")
    rep.say(f"table: {_table(arrow)}")
    rep.say(f"isomorphism: {'yes' if doc.cat.is_iso(arrow) else 'no'}")
    if arrow.dom.size == 0:
        rep.say("empty domain")
    for label, ok in mediators:
        rep.say(f"mediator {label}: {'ok' if ok else 'FAIL'}")
        rep.check(f"mediator-{label.replace(' ', '-')}", ok, "" if ok else f"{label} does not commute")
    rep.say(f"universal property against {len(tests)} test objects: {'ok' if not audit else '; '.join(audit)}")
    rep.check("universal-property", not audit, "; ".join(audit))


def _triple(doc: Document):
    return doc.morphism("f"), doc.morphism("u"), doc.morphism("g")


def cmd_lift(doc: Document, rep: Report) -> None:
    inst = cartesian_instance(doc.cat)
    mode = doc.param("mode")
    if mode == "solve":
        left, right = doc.morphism("left"), doc.morphism("right")
        top, bottom = doc.morphism("top"), doc.morphism("bottom")
        try:
            p = Square(left, right, top, bottom)
        except CategoryError as exc:
            raise InputError(f"not a lifting problem: {exc}") from None
        lifts = solve_all(doc.cat, p)
        rep.say(f"problem: {_arrow(doc, left)} against {_arrow(doc, right)}")
        rep.say(f"lifts: {len(lifts)}")
        for lift in lifts:
            rep.say(f"  {_table(lift.diagonal)}")
        rep.check("solve", True, f"count={len(lifts)}")
    elif mode == "transfer":
        f, u, g = _triple(doc)
        pp = pushout_product(inst, f, u)
        rep.say(f"problems f<>u -> g for {_arrow(doc, f)}, {_arrow(doc, u)}, {_arrow(doc, g)}")
        for k, p in enumerate(squares(doc.cat, pp.arrow, g)):
            sols = [l.diagonal for l in solve_all(doc.cat, p)]
            lsols = {l.diagonal for l in solve_all(doc.cat, phi(inst, f, u, g, p))}
            rsols = {l.diagonal for l in solve_all(doc.cat, phi_r(inst, f, u, g, p))}
            rep.say(f"problem {k}: top {_table(p.top)} bottom {_table(p.bottom)}: {len(sols)} solutions")
            to_l = [to_lhom(inst, f, u, g, p, d) for d in sols]
            to_r = [to_rhom(inst, f, u, g, p, d) for d in sols]
            for d, dl, dr in zip(sols, to_l, to_r):
                rep.say(f"  {_table(d)} -> lhom {_table(dl)} -> rhom {_table(dr)}")
            ok = (
                set(to_l) == lsols and len(set(to_l)) == len(sols)
                and set(to_r) == rsols and len(set(to_r)) == len(sols)
                and all(from_lhom(inst, f, u, g, p, dl) == d and from_rhom(inst, f, u, g, p, dr) == d
                        and lhom_to_rhom(inst, f, u, g, p, dl) == dr for d, dl, dr in zip(sols, to_l, to_r))
            )
            rep.check(f"transfer[{k}]", ok, "" if ok else "transfer is not a coherent bijection")
    elif mode == "equiv":
        if "pool" in doc.params:
            ms = list(doc.morphisms.items())
            triples = [(a, b, c) for a in ms for b in ms for c in ms]
        else:
            triples = [tuple((doc.param(k), doc.morphism(k)) for k in ("f", "u", "g"))]
        for (fn, f), (un, u), (gn, g) in triples:
            r = check_tri_equivalence(inst, f, u, g)
            yn = lambda b: "yes" if b else "no"
            rep.say(f"{fn} {un} {gn}: u|><<f,g>>_r={yn(r.rhom_side)} f|><<u,g>>={yn(r.lhom_side)} "
                    f"f<>u|>g={yn(r.product_side)} {'agree' if r.agree else 'DISAGREE'}")
            rep.check(f"equiv[{fn},{un},{gn}]", r.agree, "" if r.agree else str(r))
    else:
        raise InputError(f"mode must be solve, transfer or equiv, got '{mode}'", doc.params["mode"][0])


def _print_class(doc: Document, rep: Report, c: MorphismClass) -> None:
    rep.say(f"members: {len(c)}")
    for m in c.morphisms():
        rep.say(f"  {_arrow(doc, m)}")


def cmd_saturate(doc: Document, rep: Report) -> None:
    c = doc.klass("class")
    dual = doc.param("dual", "no") == "yes"
    op = cosaturate if dual else saturate
    out = op(c)
    rep.say(f"universe: {doc.universe.name} ({len(doc.universe)} morphisms)")
    rep.say(f"{'cosaturation' if dual else 'saturation'} of {c.name} ({len(c)} members)")
    _print_class(doc, rep, out)
    stable = op(out) == out
    rep.check("closure-idempotent", stable, "" if stable else "second pass adds members")


def cmd_wfs(doc: Document, rep: Report) -> None:
    e, m = doc.klass("e"), doc.klass("m")
    r = is_wfs(e, m)
    rep.say(f"E = {e.name} ({len(e)} members), M = {m.name} ({len(m)} members)")
    for line in r.lines(lambda i: _arrow(doc, doc.universe.morphisms[i])):
        rep.say(line)
    rep.check("factorization", not r.unfactored, ",".join(map(str, r.unfactored)))
    rep.check("left-complement", not r.left_mismatch, ",".join(map(str, r.left_mismatch)))
    rep.check("right-complement", not r.right_mismatch, ",".join(map(str, r.right_mismatch)))
    rep.say(f"weak factorization system: {'yes' if r.passed else 'no'}")


def cmd_closure(doc: Document, rep: Report) -> None:
    inst = cartesian_instance(doc.cat)
    a, s, e, m = (doc.klass(k) for k in ("a", "s", "e", "m"))
    strict = doc.param("strict", "no") == "yes"
    r = check_closure_theorem(inst, a, s, e, m, strict=strict)
    rep.say(f"A = {a.name}, S = {s.name}, E = {e.name}, M = {m.name}")
    for line in r.lines():
        rep.say(line)
    rep.check("closure", r.passed, r.witness)


COMMANDS = {
    "verify-thc": cmd_verify_thc,
    "leibniz": cmd_leibniz,
    "lift": cmd_lift,
    "saturate": cmd_saturate,
    "wfs": cmd_wfs,
    "closure": cmd_closure,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thcarrows", description="Check two-variable adjunctions and Leibniz lifting on finite categories.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="document path (default: stdin)")
        p.add_argument("--machine", action="store_true", help="emit one JSON record per check")
        p.add_argument("--instance", choices=("finset", "poset"), help="override the document's INSTANCE")
        p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                       help="set or override a command parameter")
    return parser


def run(argv, out=sys.stdout, err=sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
        else:
            text = sys.stdin.read()
        doc = parse_document(text, args.instance)
        for kv in args.param:
            key, sep, value = kv.partition("=")
            if not sep:
                raise InputError(f"--param expects KEY=VALUE, got '{kv}'")
            doc.params[key] = (0, value.split())
        rep = Report()
        COMMANDS[args.command](doc, rep)
    except InputError as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_INPUT
    except UniverseEscape as exc:
        print(f"universe escape: {exc}", file=err)
        return EXIT_INPUT
    except CategoryError as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_INPUT

    if args.machine:
        for check_id, ok, witness in rep.checks:
            out.write(json.dumps({"check": check_id, "status": "pass" if ok else "fail", "witness": witness}) + "\n")
    else:
        for line in rep.lines:
            out.write(line + "\n")
        out.write(f"status: {'pass' if rep.passed else 'FAIL'}\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
