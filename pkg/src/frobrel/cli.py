"""Command-line interface: ``frobrel <command> ...``.

Exit status 0 on success, 1 for invalid input data, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import classify as classify_mod
from .constructors import (
    FiniteGroup,
    FiniteGroupoid,
    GroupError,
    GroupoidError,
    Section,
    conjugacy_classes_to_frobenius,
    group_by_name,
    group_groupoid,
    group_to_frobenius,
    groupoid_to_frobenius,
    pair_groupoid,
    trivial_groupoid,
)
from .diagram import DiagramError, equal_diagrams, evaluate
from .frobenius import FrobData, FrobObject, axiom_failures, check_nondegeneracy, disjoint_union, is_commutative
from .report import census_table, reference_table
from .tables import ALL_ROWS
from .tqft import partition_function


class InputError(Exception):
    """Bad input data (exit status 1)."""


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def load_data(path: str) -> FrobData:
    try:
        return FrobData.from_json(_load_json(path))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from None


def load_object(path: str) -> FrobObject:
    d = load_data(path)
    failures = axiom_failures(d)
    if failures:
        raise InputError(f"{path} is not a Frobenius object: " + "; ".join(str(f) for f in failures))
    return FrobObject(d)


# -- commands --------------------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    d = load_data(args.file)
    failures = {f.axiom: f for f in axiom_failures(d)}
    for axiom in ("unitality", "associativity", "nondegeneracy"):
        if axiom in failures:
            out.write(f"{axiom}: FAIL ({failures[axiom].message})\n")
        elif axiom == "nondegeneracy":
            witness = check_nondegeneracy(d)
            labels = d.labels()
            pairs = ", ".join(f"{labels[x]}->{labels[y]}" for x, y in enumerate(witness.alpha_hat))
            out.write(f"nondegeneracy: ok (alpha: {pairs})\n")
        else:
            out.write(f"{axiom}: ok\n")
    valid = not failures
    if valid:
        out.write(f"commutative: {'yes' if is_commutative(d) else 'no'}\n")
    out.write(f"valid: {'yes' if valid else 'no'}\n")
    return 0 if valid else 1


def _group(args) -> FiniteGroup:
    if getattr(args, "file", None):
        return FiniteGroup.from_json(_load_json(args.file))
    if getattr(args, "group", None):
        return group_by_name(args.group)
    raise InputError("give a group with --group NAME or --file group.json")


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def cmd_construct(args, out) -> int:
    kind = args.kind
    if kind == "group":
        obj = group_to_frobenius(_group(args), args.omega)
    elif kind == "abelian":
        obj = group_to_frobenius(group_by_name(f"Z{args.m}"), args.omega % args.m)
    elif kind == "conjugacy":
        obj = conjugacy_classes_to_frobenius(_group(args))
    elif kind == "groupoid":
        if args.file:
            gpd = FiniteGroupoid.from_json(_load_json(args.file))
        elif args.pair is not None:
            gpd = pair_groupoid(args.pair)
        elif args.trivial is not None:
            gpd = trivial_groupoid(args.trivial)
        elif args.group:
            gpd = group_groupoid(group_by_name(args.group))
        else:
            raise InputError("give a groupoid with --file, --pair K, --trivial K or --group NAME")
        twist = Section(_parse_ints(args.section)) if args.section else None
        obj = groupoid_to_frobenius(gpd, twist)
    elif kind == "disjoint-union":
        obj = disjoint_union(load_object(args.left), load_object(args.right))
    else:  # pragma: no cover - argparse restricts choices
        raise AssertionError(kind)
    out.write(dumps(obj.to_json()))
    return 0


def cmd_classify(args, out) -> int:
    census = classify_mod.classify(args.n, jobs=args.jobs)
    if args.table == "markdown":
        text = census_table(census)
    else:
        text = dumps(census.to_json())
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    print(f"n={args.n}: {census.count} isomorphism classes, {census.labeled_count} labeled", file=sys.stderr)
    if args.sample:
        report = classify_mod.sample_completeness(census, args.sample, args.seed)
        print(
            f"sampled {report.samples} raw tables (seed {args.seed}): {report.valid} valid, "
            f"{len(report.unmatched)} outside the census",
            file=sys.stderr,
        )
        if not report.ok:
            return 1
    return 0


def cmd_partition(args, out) -> int:
    obj = load_object(args.file)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pf = partition_function(obj)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.format == "text":
        out.write(pf.proposition + "\n")
        return 0
    payload = pf.to_json()
    payload["values"] = pf.values(args.max_genus + 1)
    out.write(dumps(payload))
    return 0


def cmd_diagram(args, out) -> int:
    obj = load_object(args.object)
    if args.equal:
        out.write(dumps(equal_diagrams(args.equal[0], args.equal[1], obj)))
        return 0
    if args.file:
        try:
            word = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    elif args.expr:
        word = args.expr
    else:
        raise InputError("give a diagram with --expr, --file or --equal")
    out.write(dumps(evaluate(word, obj).to_json()))
    return 0


def cmd_census_table(args, out) -> int:
    sizes = [args.n] if args.n else [2, 3]
    if args.write_fixtures:
        target = Path(args.write_fixtures)
        target.mkdir(parents=True, exist_ok=True)
        for r in ALL_ROWS:
            if r.n in sizes:
                (target / f"{r.fixture_name}.json").write_text(dumps(r.data().to_json()), encoding="utf-8")
    out.write("\n".join(reference_table(n) for n in sizes))
    return 0


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frobrel", description="Frobenius objects in the category of relations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the axioms for an object given as JSON")
    p.add_argument("file", help="object JSON ('-' for stdin)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build an object from a group, groupoid, or two objects")
    csub = p.add_subparsers(dest="kind", required=True)
    g = csub.add_parser("group", help="a group with counit {omega}")
    g.add_argument("--group", "--name", dest="group", help="built-in group name such as Z3, S3, D4, Q8, Z2xZ2")
    g.add_argument("--file", help="group JSON with a Cayley table")
    g.add_argument("--omega", type=int, default=0, help="counit element (default: the identity, index 0)")
    a = csub.add_parser("abelian", help="the cyclic group Z_m with counit {omega}")
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--omega", type=int, default=0)
    c = csub.add_parser("conjugacy", help="conjugacy classes of a group")
    c.add_argument("--group", "--name", dest="group")
    c.add_argument("--file")
    gd = csub.add_parser("groupoid", help="a finite groupoid, optionally with a twisted counit")
    gd.add_argument("--file", help="groupoid JSON")
    gd.add_argument("--pair", type=int, metavar="K", help="pair groupoid on K objects")
    gd.add_argument("--trivial", type=int, metavar="K", help="K objects, identities only")
    gd.add_argument("--group", help="one-object groupoid of a built-in group")
    gd.add_argument("--section", help="morphism indices sigma(0),sigma(1),... for the counit")
    du = csub.add_parser("disjoint-union", help="disjoint union of two objects")
    du.add_argument("left")
    du.add_argument("right")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="all objects on n elements up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the search")
    p.add_argument("--table", choices=("json", "markdown"), default="json")
    p.add_argument("--out", help="write the result here instead of stdout")
    p.add_argument("--sample", type=int, default=0, help="also filter this many random raw tables (completeness check)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("partition", help="genus partition function of an object")
    p.add_argument("file")
    p.add_argument("--max-genus", type=int, default=8, help="list values for g = 0..G (default 8)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("diagram", help="evaluate or compare string-diagram words")
    p.add_argument("--expr", help="diagram word, e.g. 'eta ; delta ; mu ; eps'")
    p.add_argument("--file", help="file containing a diagram word")
    p.add_argument("--object", required=True, help="object JSON")
    p.add_argument("--equal", nargs=2, metavar=("W1", "W2"), help="compare two words")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("census-table", help="print the reference tables for 2 and 3 elements")
    p.add_argument("--n", type=int, choices=(2, 3))
    p.add_argument("--write-fixtures", metavar="DIR", help="also write one JSON file per reference row")
    p.set_defaults(func=cmd_census_table)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_genus", 0) < 0:
        parser.error("--max-genus must be non-negative")
    try:
        return args.func(args, out)
    except classify_mod.BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, GroupError, GroupoidError, DiagramError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
