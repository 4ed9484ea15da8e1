"""Group-expression grammar, named constructors, catalog, and the CLI.

Grammar::

    expr  := term (" x " term)*
    term  := NAME "(" INT ")" | NAME INT | "perm(" DEGREE ";" CYCLES ("," CYCLES)* ")"

Names (case-insensitive): C n (cyclic), D n (dihedral of order 2n),
S n, A n, Q8, AGL1(p), Ex3. Cycle points are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import charsub, lattice, predicates, theoremlab
from .errors import CapExceeded, GroupLabError, ParseError, UnknownName
from .kernels import BACKEND
from .permcore import (
    DEFAULT_CLOSURE_CAP,
    FiniteGroup,
    Permutation,
    SubgroupHandle,
    closure,
    direct_product,
    subgroup_from_generators,
)

# -- expression AST ---------------------------------------------------


@dataclass(frozen=True)
class Named:
    name: str  # canonical: C, D, S, A, Q8, AGL1, EX3
    arg: int | None = None


@dataclass(frozen=True)
class DirectProduct:
    left: "GroupExpr"
    right: "GroupExpr"


@dataclass(frozen=True)
class RawPerm:
    degree: int
    generators: tuple[Permutation, ...]


GroupExpr = Named | DirectProduct | RawPerm

_PARAM_NAMES = {"C", "D", "S", "A", "AGL1"}
_BARE_NAMES = {"Q8", "EX3"}


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos, expected=[ch])
        self.pos += 1

    def read_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected integer", start, expected=["integer"])
        return int(self.text[start : self.pos])

    def read_word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected name", start, expected=["name"])
        return self.text[start : self.pos]


def parse(text: str) -> GroupExpr:
    """Parse a group expression; raises ParseError with a byte offset."""
    sc = _Scanner(text)
    expr = _parse_term(sc)
    while True:
        sc.skip_ws()
        if sc.pos >= len(sc.text):
            return expr
        save = sc.pos
        word = sc.text[sc.pos : sc.pos + 1]
        if word.lower() == "x":
            sc.pos += 1
            nxt = sc.peek()
            if nxt and (nxt.isalnum() or nxt == "_"):
                # part of a name, not the product separator
                sc.pos = save
                raise ParseError("expected ' x ' or end", save, expected=["x", "end"])
            expr = DirectProduct(expr, _parse_term(sc))
        else:
            raise ParseError("expected ' x ' or end", save, expected=["x", "end"])


def _parse_term(sc: _Scanner) -> GroupExpr:
    sc.skip_ws()
    start = sc.pos
    word = sc.read_word()
    upper = word.upper()
    if upper == "PERM":
        return _parse_raw_perm(sc, start)
    if upper in _BARE_NAMES:
        return Named("EX3" if upper == "EX3" else upper, None)
    # NAME INT spelled together, e.g. S4, c12, agl15 is NOT valid (AGL1 needs parens)
    head = upper.rstrip("0123456789")
    tail = upper[len(head) :]
    if head in ("C", "D", "S", "A") and tail:
        return Named(head, int(tail))
    if upper in _PARAM_NAMES:
        sc.skip_ws()
        sc.expect("(")
        sc.skip_ws()
        arg = sc.read_int()
        sc.skip_ws()
        sc.expect(")")
        return Named(upper, arg)
    raise ParseError(f"unknown name {word!r}", start, expected=sorted(_PARAM_NAMES | _BARE_NAMES | {"perm"}))


def _parse_raw_perm(sc: _Scanner, start: int) -> RawPerm:
    sc.skip_ws()
    sc.expect("(")
    sc.skip_ws()
    degree = sc.read_int()
    sc.skip_ws()
    sc.expect(";")
    gens = []
    while True:
        cyc_start = sc.pos
        depth = 0
        while sc.pos < len(sc.text):
            ch = sc.text[sc.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif ch == "," and depth == 0:
                break
            sc.pos += 1
        if depth != 0:
            raise ParseError("unclosed cycle", cyc_start, expected=[")"])
        chunk = sc.text[cyc_start : sc.pos].strip()
        if not chunk:
            raise ParseError("empty generator", cyc_start, expected=["cycle"])
        try:
            gens.append(Permutation.from_cycles(degree, chunk))
        except ParseError as exc:
            raise ParseError(str(exc), cyc_start + exc.offset) from None
        if sc.peek() == ",":
            sc.pos += 1
            continue
        sc.expect(")")
        return RawPerm(degree, tuple(gens))


def format_expr(e: GroupExpr) -> str:
    if isinstance(e, Named):
        if e.name == "EX3":
            return "Ex3"
        if e.name == "Q8":
            return "Q8"
        if e.name == "AGL1":
            return f"AGL1({e.arg})"
        return f"{e.name}{e.arg}"
    if isinstance(e, DirectProduct):
        return f"{format_expr(e.left)} x {format_expr(e.right)}"
    gens = ", ".join(g.cycles() for g in e.generators)
    return f"perm({e.degree}; {gens})"


# -- constructors ------------------------------------------------------


def _cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise UnknownName("C n requires n >= 1")
    if n == 1:
        return closure(1, [])
    return closure(n, [Permutation([(i + 1) % n for i in range(n)])])


def _dihedral(n: int, cap: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    if n < 1:
        raise UnknownName("D n requires n >= 1")
    if n == 1:
        return closure(2, [Permutation([1, 0])])
    if n == 2:  # Klein four-group; needs 4 points for a faithful action
        return closure(
            4,
            [Permutation([1, 0, 2, 3]), Permutation([0, 1, 3, 2])],
            cap=cap,
        )
    rot = Permutation([(i + 1) % n for i in range(n)])
    refl = Permutation([(n - i) % n for i in range(n)])
    return closure(n, [rot, refl], cap=cap)


def _symmetric(n: int, cap: int) -> FiniteGroup:
    if n < 1:
        raise UnknownName("S n requires n >= 1")
    if n == 1:
        return closure(1, [])
    gens = [Permutation([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Permutation([(i + 1) % n for i in range(n)]))
    return closure(n, gens, cap=cap)


def _alternating(n: int, cap: int) -> FiniteGroup:
    if n < 1:
        raise UnknownName("A n requires n >= 1")
    if n <= 2:
        return closure(max(n, 1), [])
    three = Permutation([1, 2, 0] + list(range(3, n)))
    if n == 3:
        return closure(3, [three], cap=cap)
    if n % 2:
        big = Permutation([(i + 1) % n for i in range(n)])
    else:
        big = Permutation([0] + [1 + (i + 1) % (n - 1) for i in range(n - 1)])
    return closure(n, [three, big], cap=cap)


def _quaternion8() -> FiniteGroup:
    # Regular action on {1,-1,i,-i,j,-j,k,-k}; generators: right products by i, j.
    by_i = Permutation([2, 3, 1, 0, 7, 6, 4, 5])
    by_j = Permutation([4, 5, 6, 7, 1, 0, 3, 2])
    return closure(8, [by_i, by_j])


def _agl1(p: int, cap: int) -> FiniteGroup:
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise UnknownName(f"AGL1 requires a prime, got {p}")
    shift = Permutation([(i + 1) % p for i in range(p)])
    if p == 2:
        return closure(2, [shift])
    g = next(
        a
        for a in range(2, p)
        if all(pow(a, k, p) != 1 for k in range(1, p - 1))
    )
    mul = Permutation([(a * g) % p for a in range(p)])
    return closure(p, [shift, mul], cap=cap)


def _ex3(cap: int) -> FiniteGroup:
    """(F7 x F7) : S3 acting affinely on 49 points.

    S3 acts by its 2-dimensional faithful irreducible representation: the
    coordinate-permutation action on the sum-zero plane of F7^3, written in
    the basis (1,-1,0), (0,1,-1). Point (a, b) is index 7a + b.
    """

    def affine(m, t):
        images = []
        for a in range(7):
            for b in range(7):
                x = (m[0][0] * a + m[0][1] * b + t[0]) % 7
                y = (m[1][0] * a + m[1][1] * b + t[1]) % 7
                images.append(7 * x + y)
        return Permutation(images)

    ident = ((1, 0), (0, 1))
    swap = ((-1, 1), (0, 1))  # transposition: order 2, det -1
    rot = ((0, -1), (1, -1))  # 3-cycle: order 3
    gens = [
        affine(ident, (1, 0)),
        affine(ident, (0, 1)),
        affine(swap, (0, 0)),
        affine(rot, (0, 0)),
    ]
    return closure(49, gens, cap=cap)


def build(e: GroupExpr | str, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Construct the group a GroupExpr (or expression text) denotes."""
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, DirectProduct):
        return direct_product(build(e.left, cap), build(e.right, cap), cap=cap)
    if isinstance(e, RawPerm):
        return closure(e.degree, e.generators, cap=cap)
    name, arg = e.name, e.arg
    if name == "C":
        return _cyclic(arg)
    if name == "D":
        return _dihedral(arg, cap)
    if name == "S":
        return _symmetric(arg, cap)
    if name == "A":
        return _alternating(arg, cap)
    if name == "Q8":
        return _quaternion8()
    if name == "AGL1":
        return _agl1(arg, cap)
    if name == "EX3":
        return _ex3(cap)
    raise UnknownName(f"no constructor for {name!r}")


# -- catalog -----------------------------------------------------------


def load_catalog(spec: str) -> list[dict]:
    """Load [{"label":…, "expr":…}]; `spec` is "default" or a JSON path."""
    if spec == "default":
        text = resources.files("grouplab.data").joinpath("catalog.json").read_text()
    else:
        text = Path(spec).read_text()
    entries = json.loads(text)
    for entry in entries:
        if not isinstance(entry, dict) or "label" not in entry or "expr" not in entry:
            raise ValueError("catalog entries must be {label, expr} objects")
    return entries


# -- subcommands -------------------------------------------------------


def _gens_text(G: FiniteGroup, H: SubgroupHandle) -> list[str]:
    from .permcore import handle_generators

    return [G.elements[i].cycles() for i in handle_generators(G, H)]


def _cmd_analyze(args) -> int:
    G = build(args.expr, cap=args.max_order)
    prof = charsub.profile(G)
    named = [
        ("center", prof.center),
        ("hypercenter", prof.hypercenter),
        ("derived", prof.derived),
        ("fitting", prof.fitting),
        ("frattini", prof.frattini),
        ("socle", prof.socle),
        ("fitting_star", prof.f_star),
        ("fitting_tilde", prof.f_tilde),
    ]
    classes = {
        "nilpotent": predicates.is_nilpotent(G),
        "soluble": predicates.is_soluble(G),
        "supersoluble": predicates.is_supersoluble(G),
        "metanilpotent": predicates.is_metanilpotent(G),
        "quasinilpotent": predicates.is_quasinilpotent(G),
    }
    if args.json:
        payload = {
            "expr": args.expr,
            "order": G.order,
            "classes": classes,
            "subgroups": {
                name: {"order": h.order, "generators": _gens_text(G, h)}
                for name, h in named
            },
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"group {args.expr}: order {G.order}")
        for name, h in named:
            gens = ", ".join(_gens_text(G, h)) or "()"
            print(f"  {name:<14} order {h.order:<6} <{gens}>")
        flags = ", ".join(k for k, v in classes.items() if v) or "none"
        print(f"  classes: {flags}")
    return 0


_FLAG_ORDER = (
    "normal",
    "quasinormal",
    "s_permutable",
    "conjugate_permutable",
    "subnormal",
    "pronormal",
    "abnormal",
)


def _class_flags(G: FiniteGroup, H: SubgroupHandle, cap: int) -> dict[str, bool]:
    from . import permcore

    return {
        "normal": permcore.is_normal_handle(G, H),
        "quasinormal": predicates.is_quasinormal(G, H, cap),
        "s_permutable": predicates.is_s_permutable(G, H),
        "conjugate_permutable": predicates.is_conjugate_permutable(G, H),
        "subnormal": predicates.is_subnormal(G, H),
        "pronormal": predicates.is_pronormal(G, H),
        "abnormal": predicates.is_abnormal(G, H),
    }


def _cmd_subgroups(args) -> int:
    G = build(args.expr, cap=args.max_order)
    classes = lattice.conjugacy_classes_of_subgroups(G, cap=args.max_subgroups)
    rows = []
    for cls in classes:
        rep = cls[0]
        rows.append(
            {
                "order": rep.order,
                "class_size": len(cls),
                "representative": _gens_text(G, rep),
                "flags": _class_flags(G, rep, args.max_subgroups),
            }
        )
    if args.json:
        print(json.dumps({"expr": args.expr, "classes": rows}, indent=2))
    else:
        print(f"group {args.expr}: {sum(r['class_size'] for r in rows)} subgroups in {len(rows)} classes")
        for r in rows:
            flags = ",".join(k for k in _FLAG_ORDER if r["flags"][k]) or "-"
            gens = ", ".join(r["representative"]) or "()"
            print(f"  order {r['order']:<6} x{r['class_size']:<4} <{gens}>  [{flags}]")
    return 0


def _cmd_rcp(args) -> int:
    G = build(args.expr, cap=args.max_order)
    gens = [
        G.index_of(Permutation.from_cycles(G.degree, part.strip()))
        for part in args.sub.split(",")
    ]
    H = subgroup_from_generators(G, gens)
    rname = args.r
    if rname == "fitting":
        R = charsub.fitting(G)
    elif rname == "fstar":
        R = charsub.fitting_star(G)
    elif rname == "ftilde":
        R = charsub.fitting_tilde(G)
    else:
        rgens = [
            G.index_of(Permutation.from_cycles(G.degree, part.strip()))
            for part in rname.split(",")
        ]
        R = subgroup_from_generators(G, rgens)
    witness = predicates.r_cp_witness(G, H, R)
    holds = witness is None
    if args.json:
        print(
            json.dumps(
                {
                    "expr": args.expr,
                    "subgroup_order": H.order,
                    "r_order": R.order,
                    "holds": holds,
                    "witness": None if holds else G.elements[witness].cycles(),
                }
            )
        )
    else:
        verdict = "holds" if holds else f"fails at x = {G.elements[witness].cycles()}"
        print(f"H (order {H.order}) R-conjugate-permutable for |R| = {R.order}: {verdict}")
    return 0


def _cmd_oracle(args) -> int:
    G = build(args.expr, cap=args.max_order)
    if G.order > 16:
        print(f"oracle requires |G| <= 16, got {G.order}", file=sys.stderr)
        return 2
    brute = {h.members for h in lattice.powerset_subgroups(G)}
    fast = {h.members for h in lattice.all_subgroups(G, cap=args.max_subgroups)}
    missing = brute - fast
    extra = fast - brute
    if args.json:
        print(
            json.dumps(
                {
                    "expr": args.expr,
                    "oracle_count": len(brute),
                    "lattice_count": len(fast),
                    "agree": not missing and not extra,
                }
            )
        )
    else:
        print(f"oracle: {len(brute)} subgroups, lattice: {len(fast)}")
        if missing or extra:
            print(f"  DIFF missing={len(missing)} extra={len(extra)}")
        else:
            print("  exact agreement")
    return 0 if not missing and not extra else 1


def _worker_cell(task):
    label, expr, statement, max_order, max_subgroups = task
    G = _worker_group(expr, max_order)
    caps = theoremlab.Caps(max_order=max_order, max_subgroups=max_subgroups)
    report = theoremlab.evaluate_statement(statement, G, caps=caps, group_label=label)
    return report.to_json()


_WORKER_GROUPS: dict = {}


def _worker_group(expr: str, max_order: int) -> FiniteGroup:
    key = (expr, max_order)
    if key not in _WORKER_GROUPS:
        _WORKER_GROUPS[key] = build(expr, cap=max_order)
    return _WORKER_GROUPS[key]


def _cmd_verify(args) -> int:
    entries = load_catalog(args.catalog)
    if args.statements == "all":
        ids = list(theoremlab.STATEMENT_IDS)
    else:
        ids = [s.strip() for s in args.statements.split(",") if s.strip()]
        unknown = [s for s in ids if s not in theoremlab.STATEMENT_IDS]
        if unknown:
            print(f"unknown statement ids: {', '.join(unknown)}", file=sys.stderr)
            return 2
    caps = theoremlab.Caps(max_order=args.max_order, max_subgroups=args.max_subgroups)
    reports = []
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        tasks = [
            (e["label"], e["expr"], sid, args.max_order, args.max_subgroups)
            for e in entries
            for sid in ids
        ]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_worker_cell, tasks, chunksize=4))
    else:
        for e in entries:
            G = build(e["expr"], cap=args.max_order)
            for sid in ids:
                rep = theoremlab.evaluate_statement(
                    sid, G, caps=caps, group_label=e["label"]
                )
                reports.append(rep.to_json())
    order_key = {
        (e["label"], sid): i
        for i, (e, sid) in enumerate((e, sid) for e in entries for sid in ids)
    }
    reports.sort(key=lambda r: order_key[(r["group"], r["statement"])])
    text = json.dumps(reports, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    counts: dict[str, int] = {}
    for r in reports:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"verify: {len(reports)} cells ({summary})", file=sys.stderr)
    if counts.get("violated"):
        return 1
    if counts.get("skipped"):
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="grouplab",
        description="Finite permutation-group calculator and statement verifier "
        f"(kernel backend: {BACKEND}).",
    )
    ap.add_argument("--max-order", type=int, default=DEFAULT_CLOSURE_CAP, help="closure cap on |G|")
    ap.add_argument(
        "--max-subgroups",
        type=int,
        default=lattice.DEFAULT_LATTICE_CAP,
        help="cap on enumerated subgroups",
    )
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    ap.add_argument("--json", action="store_true", help="JSON output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="characteristic subgroups and class flags")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("subgroups", help="conjugacy classes of subgroups with embedding flags")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_subgroups)

    p = sub.add_parser("rcp", help="test R-conjugate-permutability of a subgroup")
    p.add_argument("expr")
    p.add_argument("--sub", required=True, help="comma-separated generators in cycle notation")
    p.add_argument(
        "--r",
        required=True,
        help="fitting | fstar | ftilde | comma-separated generators",
    )
    p.set_defaults(func=_cmd_rcp)

    p = sub.add_parser("verify", help="run statement checkers over a catalog")
    p.add_argument("--statements", default="all", help="'all' or comma-separated ids")
    p.add_argument("--catalog", default="default", help="'default' or a JSON file")
    p.add_argument("--out", default=None, help="write report JSON here instead of stdout")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="diff the powerset subgroup oracle against the lattice")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_oracle)

    return ap


def cli_main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except UnknownName as exc:
        print(f"unknown group: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exhausted ({exc.cap_name}): {exc}", file=sys.stderr)
        return 3
    except GroupLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
