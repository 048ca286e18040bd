"""Command line interface: ``braidfaces faces|series|render3``.

Arrangements are written ``family:key=value,...``.  A bare token after a comma
extends the previous key, so ``set:S=-1,0,1,n=3`` gives S = [-1, 0, 1];
ideals are ``;``-separated pairs, e.g. ``ideal:n=3,m=1,I=(1,2);(1,3)``.

Exit status: 0 ok, 1 verification mismatch, 2 usage error, 3 grid budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from typing import Optional

from . import arrangement as arr
from .arrangement import Arrangement, ArrangementError, Ideal
from .face_map import face_sign_vector, feasible_witness, format_point
from .marked_trees import enumerate_admissible
from .oracle import BudgetExceededError, budget_cap, enumerate_faces_grid, face_counts, grid_size

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FAMILIES = {
    "braid": ("n",),
    "catalan": ("m", "n"),
    "shi": ("m", "n"),
    "semiorder": ("m", "n"),
    "linial": ("n",),
    "ideal": ("n", "m", "I"),
    "multi": ("m",),
    "set": ("S", "n"),
}


class UsageError(ValueError):
    pass


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_arrangement(text: str) -> Arrangement:
    if text.endswith(".json"):
        with open(text) as fh:
            return Arrangement.from_json(json.load(fh))
    family, _, rest = text.partition(":")
    family = family.strip().lower()
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    values: dict[str, list[str]] = {}
    key = None
    for token in _split_top(rest):
        if "=" in token:
            key, _, val = token.partition("=")
            key = key.strip()
            values.setdefault(key, []).append(val.strip())
        elif key is None:
            raise UsageError(f"value {token!r} has no key")
        else:
            values[key].append(token)
    missing = [k for k in FAMILIES[family] if k not in values and not (family == "multi" and k == "n")]
    if missing:
        raise UsageError(f"{family} needs {', '.join(missing)}")
    extra = set(values) - set(FAMILIES[family]) - {"n"}
    if extra:
        raise UsageError(f"unexpected keys for {family}: {', '.join(sorted(extra))}")

    def one_int(k):
        if len(values[k]) != 1:
            raise UsageError(f"{k} takes one integer")
        try:
            return int(values[k][0])
        except ValueError:
            raise UsageError(f"{k}={values[k][0]!r} is not an integer") from None

    def int_list(k):
        try:
            return [int(v) for v in values[k]]
        except ValueError:
            raise UsageError(f"{k} must be a list of integers") from None

    try:
        if family == "braid":
            return arr.braid(one_int("n"))
        if family == "linial":
            return arr.linial(one_int("n"))
        if family in ("catalan", "shi", "semiorder"):
            return getattr(arr, family)(one_int("m"), one_int("n"))
        if family == "set":
            return arr.from_set(int_list("S"), one_int("n"))
        if family == "multi":
            mvec = int_list("m")
            if "n" in values and one_int("n") != len(mvec):
                raise UsageError(f"n={one_int('n')} disagrees with {len(mvec)} entries of m")
            return arr.multi_catalan(mvec)
        n = one_int("n")
        pairs = []
        for chunk in ";".join(values["I"]).split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            match = re.fullmatch(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", chunk)
            if not match:
                raise UsageError(f"bad ideal pair {chunk!r}")
            pairs.append((int(match.group(1)), int(match.group(2))))
        return arr.ideal_arrangement(one_int("m"), Ideal(n, frozenset(pairs)), n)
    except ArrangementError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------


def _cap(args) -> int:
    return args.budget if getattr(args, "budget", None) is not None else budget_cap()


def _face_rows(A: Arrangement, oracle_only: bool, cap: int):
    if oracle_only:
        faces = enumerate_faces_grid(A, cap)
        return [(None, sv) for sv in faces], faces
    pairs = [(t, face_sign_vector(A, t, check=False)) for t in enumerate_admissible(A)]
    return pairs, None


def cmd_faces(args) -> int:
    A = parse_arrangement(args.arrangement)
    if not args.oracle_only and not arr.is_strongly_transitive(A):
        print(
            "arrangement is not strongly transitive; marked trees need not index its faces "
            "(use --oracle-only)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    rows, oracle = _face_rows(A, args.oracle_only, _cap(args))
    status = EXIT_OK
    if not args.oracle_only and not args.no_check:
        oracle = enumerate_faces_grid(A, _cap(args))
        image = [sv for _, sv in rows]
        if len(set(image)) != len(image) or set(image) != oracle:
            print(
                f"mismatch: {len(image)} trees, {len(set(image))} distinct faces, oracle has {len(oracle)}",
                file=sys.stderr,
            )
            status = EXIT_MISMATCH
    records = []
    for t, sv in rows:
        w = feasible_witness(sv)
        rec = {"signs": sv.to_json(), "dim": sv.dim, "witness": format_point(w)}
        if t is not None:
            rec["tree"] = t.to_json()
        records.append((t.bracket() if t is not None else "", str(sv), rec))
    records.sort(key=lambda r: (r[0], r[1]))
    out = sys.stdout
    if args.format == "json":
        json.dump([r[2] for r in records], out, indent=1)
        out.write("\n")
    elif args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(["tree", "signs", "dim", "witness"])
        for br, sg, rec in records:
            writer.writerow([br, sg, rec["dim"], " ".join(rec["witness"])])
    else:
        width = max((len(r[0]) for r in records), default=0)
        for br, sg, rec in records:
            lead = f"{br:<{width}}  " if width else ""
            print(f"{lead}{sg}  dim={rec['dim']}  x=({', '.join(rec['witness'])})")
        print(f"# {len(records)} faces", file=sys.stderr)
    return status


def cmd_series(args) -> int:
    from .series import check_set, face_series, face_table
    from .series.transfer import shadow_rational, subsets

    try:
        S = sorted(check_set(int(v) for v in args.S.split(",") if v.strip()))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.shadows:
        m = max(S)
        for U in subsets(m):
            for V in subsets(m):
                r = shadow_rational(S, U, V)
                print(f"D[{sorted(U)},{sorted(V)}] = {r.integer_form()}")
        return EXIT_OK
    F = face_series(S, args.N, max_order=max(args.N, 8))
    rows = face_table(F)
    writer = csv.writer(sys.stdout)
    writer.writerow(["n", "k", "count"])
    writer.writerows(rows)
    if not args.check:
        return EXIT_OK
    status = EXIT_OK
    cap = _cap(args)
    for n in range(1, args.N + 1):
        A = arr.from_set(S, n)
        if grid_size(A) > cap:
            print(f"n={n}: skipped, grid of {grid_size(A)} points exceeds cap {cap}", file=sys.stderr)
            continue
        expected = face_counts(A, cap)
        got = tuple(int(F.egf(n)[k]) for k in range(1, n + 1))
        verdict = "ok" if got == expected else "MISMATCH"
        if got != expected:
            status = EXIT_MISMATCH
        print(f"n={n}: series {got} oracle {expected} {verdict}", file=sys.stderr)
    return status


def cmd_render3(args) -> int:
    from .render import region_label_points, render_svg

    A = parse_arrangement(args.arrangement)
    if A.n != 3:
        print(f"error: render3 needs n = 3, got n = {A.n}", file=sys.stderr)
        return EXIT_USAGE
    labels = None
    if args.labels:
        if not arr.is_strongly_transitive(A):
            print("error: labels need a strongly transitive arrangement", file=sys.stderr)
            return EXIT_USAGE
        labels = region_label_points(A)
    svg = render_svg(A, labels)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidfaces", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("faces", help="list faces with marked trees, signs and witness points")
    f.add_argument("arrangement", help="e.g. catalan:m=1,n=3 or a .json file")
    f.add_argument("--oracle-only", action="store_true", help="list grid faces only, skip the trees")
    f.add_argument("--no-check", action="store_true", help="do not compare trees with the grid oracle")
    f.add_argument("--format", choices=["text", "json", "csv"], default="text")
    f.add_argument("--budget", type=int, help="grid point cap (overrides BRAIDFACES_BUDGET)")
    f.set_defaults(func=cmd_faces)

    s = sub.add_parser("series", help="face counts c(n,k) from the generating function")
    s.add_argument("--S", required=True, help="comma-separated offsets, e.g. --S=-1,0,1")
    s.add_argument("--N", type=int, default=5)
    s.add_argument("--check", action="store_true", help="compare with the grid oracle")
    s.add_argument("--shadows", action="store_true", help="print the shadow rational functions instead")
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_series)

    r = sub.add_parser("render3", help="SVG of an n = 3 arrangement in the plane x1+x2+x3 = 0")
    r.add_argument("arrangement", help="e.g. catalan:m=1,n=3 or a .json file")
    r.add_argument("-o", "--output")
    r.add_argument("--labels", action="store_true", help="label regions with their trees")
    r.set_defaults(func=cmd_render3)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
