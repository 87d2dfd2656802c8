"""Command-line front end.

Exit codes: 0 success, 1 internal assertion or failed cross-check, 2 usage.
Options may also come from a ``key=value`` file given with ``--config``;
flags on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import (DualPair, enumerate_orbits, parse_diagram, regular_holomorphic_orbit,
                            theta_lift_diagram, zero_orbit)
from .degree import (degree_asymptotic, degree_hilbert_fit, degree_paper_literal, degree_report,
                     dsquared_closed_form, dsquared_expansion, hilbert_series, normalize_orbit,
                     selberg_closed_form, selberg_lhs_exact)
from .errors import InternalError, ThetaOrbitError, UsageError
from .repdecomp import (Factor, GradedDecomposition, RepLabel, decompose_general_lift,
                        decompose_regular_hol_lift, decompose_trivial_lift, flat_space_input,
                        harmonics_series, nullcone_hilbert_check, trivial_input)

# built-in defaults; None in argparse means "not given on the command line"
DEFAULTS = {
    "format": None,  # per-command default
    "seed": 0,
    "threads": None,
    "monomial_cap": 10**6,
    "retry_cap": 32,
    "cap": 100_000,
    "max_degree": 8,
    "method": "both",
    "orbit": "trivial",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _pair_options(p):
    p.add_argument("--pair", choices=["osp", "uu", "spostar"], default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None, help="UU only")


def _common_options(p):
    p.add_argument("--format", choices=["json", "csv", "text"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--config", default=None, help="key=value file; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thetaorbit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    orb = sub.add_parser("orbits", help="enumerate diagrams or lift one")
    orb_sub = orb.add_subparsers(dest="action", parser_class=_Parser)
    orb_sub.required = True
    lst = orb_sub.add_parser("list")
    _pair_options(lst)
    _common_options(lst)
    lst.add_argument("--side", choices=["small", "large"], default=None)
    lst.add_argument("--cap", type=int, default=None)
    lift = orb_sub.add_parser("lift")
    _pair_options(lift)
    _common_options(lift)
    g = lift.add_mutually_exclusive_group()
    g.add_argument("--diagram", default=None)
    g.add_argument("--orbit", default=None, help="trivial or regular-hol")

    ring = sub.add_parser("ring", help="graded decompositions and Hilbert series")
    ring_sub = ring.add_subparsers(dest="action", parser_class=_Parser)
    ring_sub.required = True
    dec = ring_sub.add_parser("decompose")
    _pair_options(dec)
    _common_options(dec)
    dec.add_argument("--orbit", default=None,
                     help="trivial, regular-hol, flat (general formula on C[s'+]) or file")
    dec.add_argument("--input", default=None, help="JSON decomposition of C[closure O'] (with --orbit file)")
    dec.add_argument("-K", "--max-degree", dest="max_degree", type=int, default=None)
    har = ring_sub.add_parser("harmonics")
    _pair_options(har)
    _common_options(har)
    har.add_argument("--side", choices=["plus", "minus"], default=None)
    har.add_argument("-K", "--max-degree", dest="max_degree", type=int, default=None)
    har.add_argument("--check", action="store_true", help="compare with the complete-intersection series")

    deg = sub.add_parser("degree", help="projective degree of a lifted orbit closure")
    _pair_options(deg)
    _common_options(deg)
    deg.add_argument("--orbit", default=None)
    deg.add_argument("--method", choices=["asymptotic", "fit", "literal", "both"], default=None)
    deg.add_argument("--monomial-cap", dest="monomial_cap", type=int, default=None)
    deg.add_argument("--strict-literal", action="store_true",
                     help="also fail when the literal closed expression disagrees")

    tab = sub.add_parser("degree-table", help="CSV of degree reports over a grid")
    _common_options(tab)
    tab.add_argument("--grid", required=True,
                     help="semicolon list such as 'osp:3,3,1;uu:2,2,1,1;spostar:2,2,1'")

    sel = sub.add_parser("selberg", help="simplex integral identities")
    _common_options(sel)
    sel.add_argument("--n", type=int, required=True)
    sel.add_argument("--kappa", required=True)
    sel.add_argument("--dsquared", action="store_true", help="check the D_n(x^2)^2 identity instead")

    geo = sub.add_parser("geometry", help="exact moment-map checks")
    geo_sub = geo.add_subparsers(dest="action", parser_class=_Parser)
    geo_sub.required = True
    chk = geo_sub.add_parser("check-lift")
    _pair_options(chk)
    _common_options(chk)
    g = chk.add_mutually_exclusive_group()
    g.add_argument("--diagram", default=None)
    g.add_argument("--all", action="store_true")
    chk.add_argument("--retry-cap", dest="retry_cap", type=int, default=None)
    return parser


# ---------------------------------------------------------------------------
# configuration

def read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def resolve(args) -> argparse.Namespace:
    """Merge command-line flags, the config file and built-in defaults."""
    conf = read_config(args.config) if getattr(args, "config", None) else {}
    ints = {"p", "q", "n", "m", "seed", "threads", "monomial_cap", "retry_cap", "cap", "max_degree"}
    for key, value in conf.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, int(value) if key in ints else value)
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        env = os.environ.get("THETA_ORBIT_THREADS")
        args.threads = int(env) if env and env.isdigit() else 1
    if hasattr(args, "max_degree") and args.max_degree is not None and args.max_degree < 0:
        raise UsageError("max degree must be nonnegative")
    return args


def make_pair(args) -> DualPair:
    if args.pair not in ("osp", "uu", "spostar"):
        raise UsageError("--pair must be one of osp, uu, spostar")
    need = ["p", "q", "n"] + (["m"] if args.pair == "uu" else [])
    missing = [k for k in need if getattr(args, k) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + k for k in missing))
    if args.pair == "osp":
        return DualPair.osp(args.p, args.q, args.n)
    if args.pair == "uu":
        return DualPair.uu(args.p, args.q, args.m, args.n)
    return DualPair.spostar(args.p, args.q, args.n)


def _emit(obj, fmt, text_lines=None, csv_rows=None):
    if fmt == "json":
        return json.dumps(obj, indent=2) + "\n"
    if fmt == "csv":
        if csv_rows is None:
            raise UsageError("csv output is not available for this command")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        return buf.getvalue()
    return "".join(line + "\n" for line in (text_lines or []))


# ---------------------------------------------------------------------------
# commands

def cmd_orbits(args) -> tuple:
    pair = make_pair(args)
    fmt = args.format or "text"
    if args.action == "list":
        group = pair.large_group() if args.side == "large" else pair.small_group()
        diagrams = enumerate_orbits(group, cap=args.cap)
        obj = {"command": "orbits list", "group": str(group), "diagrams": [d.to_json() for d in diagrams]}
        return _emit(obj, fmt, [d.text() for d in diagrams],
                     [["group", "diagram"]] + [[str(group), d.text()] for d in diagrams]), 0
    if args.diagram is not None:
        d = parse_diagram(args.diagram, pair.small_group())
    else:
        which = normalize_orbit(args.orbit or "trivial")
        d = zero_orbit(pair.small_group()) if which == "trivial" else regular_holomorphic_orbit(pair.small_group())
    lifted = theta_lift_diagram(pair, d)
    obj = {"command": "orbits lift", "pair": pair.label(), "source": d.to_json(), "lift": lifted.to_json()}
    return _emit(obj, fmt, [lifted.text()],
                 [["source", "lift"], [d.text(), lifted.text()]]), 0


def _label_text(lab: RepLabel) -> str:
    return str(lab)


def _decomposition_output(obj_head, dec: GradedDecomposition, fmt):
    series = dec.hilbert_series()
    obj = dict(obj_head)
    obj["entries"] = dec.to_json()
    obj["hilbert"] = list(series.coefficients)
    text = []
    for deg in sorted(dec.entries):
        for labels, mult in dec.entries[deg]:
            text.append(f"{deg}\t" + "\t".join(_label_text(lab) for lab in labels) + f"\t{mult}")
    text.append("H = " + ",".join(map(str, series.coefficients)))
    rows = [["k", "H(k)"]] + [[k, h] for k, h in enumerate(series.coefficients)]
    return _emit(obj, fmt, text, rows)


def load_decomposition(path: str, K: int) -> GradedDecomposition:
    """Read {"entries": [{"deg": k, "labels": [{"kprime": [...], "mult": c}]}]}."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    entries = data["entries"] if isinstance(data, dict) else data
    counts = {}
    for block in entries:
        for item in block["labels"]:
            factors = []
            for f in item["kprime"]:
                name = f["group"]
                kind, rest = name.split("(", 1)
                factors.append(Factor(kind, int(rest.rstrip(")")), tuple(f["weight"])))
            counts[(block["deg"], (RepLabel("Kprime", tuple(factors)),))] = int(item["mult"])
    return GradedDecomposition.from_counts(K, counts)


def cmd_ring(args) -> tuple:
    pair = make_pair(args)
    fmt = args.format or "json"
    K = args.max_degree
    if args.action == "harmonics":
        side = args.side or "plus"
        dec = harmonics_series(pair, side, K)
        head = {"command": "ring harmonics", "pair": pair.label(), "side": side, "K": K}
        code = 0
        if args.check:
            ok = nullcone_hilbert_check(pair, side, K)
            head["complete_intersection_match"] = ok
            code = 0 if ok else 1
        return _decomposition_output(head, dec, fmt), code
    orbit = (args.orbit or "trivial").replace("-", "_").lower()
    if orbit == "file" or args.input:
        if not args.input:
            raise UsageError("--input is required with --orbit file")
        dec = decompose_general_lift(pair, load_decomposition(args.input, K), K, threads=args.threads)
        orbit = "file"
    elif orbit == "flat":
        dec = decompose_general_lift(pair, flat_space_input(pair, K), K, threads=args.threads)
    elif orbit == "general_trivial":
        dec = decompose_general_lift(pair, trivial_input(pair), K, threads=args.threads)
    else:
        orbit = normalize_orbit(orbit)
        dec = decompose_trivial_lift(pair, K) if orbit == "trivial" else decompose_regular_hol_lift(pair, K)
    head = {"command": "ring decompose", "pair": pair.label(), "orbit": orbit, "K": K}
    return _decomposition_output(head, dec, fmt), 0


def cmd_degree(args) -> tuple:
    pair = make_pair(args)
    orbit = normalize_orbit(args.orbit)
    fmt = args.format or "json"
    if args.method == "asymptotic":
        obj = {"pair": pair.label(), "orbit": orbit,
               "asymptotic": _frac(degree_asymptotic(pair, orbit, args.monomial_cap))}
        code = 0
    elif args.method == "literal":
        obj = {"pair": pair.label(), "orbit": orbit, "literal": _frac(degree_paper_literal(pair, orbit))}
        code = 0
    elif args.method == "fit":
        from .degree import leading_degree_form
        K = leading_degree_form(pair, orbit, args.monomial_cap).d_projective + 6
        d, e = degree_hilbert_fit(hilbert_series(pair, orbit, K))
        obj = {"pair": pair.label(), "orbit": orbit, "d": d, "hilbert_fit": str(e)}
        code = 0
    else:
        rep = degree_report(pair, orbit, cap=args.monomial_cap)
        obj = rep.to_json()
        failed = not rep.passing or (args.strict_literal and not rep.agree.get("literal_asym", True))
        code = 1 if failed else 0
    obj = {"command": "degree", **obj}
    text = [", ".join(f"{k}:{json.dumps(v) if isinstance(v, dict) else v}"
                      for k, v in obj.items() if k != "command")]
    rows = [list(k for k in obj if k not in ("command", "agree")),
            [obj[k] for k in obj if k not in ("command", "agree")]]
    return _emit(obj, fmt, text, rows), code


def _parse_grid(text: str):
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        kind, _, nums = chunk.partition(":")
        vals = [int(v) for v in nums.split(",")]
        kind = kind.strip().lower()
        if kind == "osp" and len(vals) == 3:
            out.append(DualPair.osp(*vals))
        elif kind == "uu" and len(vals) == 4:
            out.append(DualPair.uu(*vals))
        elif kind == "spostar" and len(vals) == 3:
            out.append(DualPair.spostar(*vals))
        else:
            raise UsageError(f"bad grid entry {chunk!r}")
    return out


def cmd_degree_table(args) -> tuple:
    header = ["pair", "orbit", "d", "asymptotic", "hilbert_fit", "literal", "asym_fit", "literal_asym"]
    rows = [header]
    code = 0
    for pair in _parse_grid(args.grid):
        for orbit in ("trivial", "regular_hol"):
            if pair.kind == "UU" and orbit == "regular_hol" and pair.m < pair.n:
                continue
            rep = degree_report(pair, orbit)
            j = rep.to_json()
            rows.append([j["pair"], orbit, j["d"], j["asymptotic"], j["hilbert_fit"], j["literal"],
                         str(j["agree"]["asym_fit"]).lower(), str(j["agree"]["literal_asym"]).lower()])
            if not rep.passing:
                code = 1
    fmt = args.format or "csv"
    obj = {"command": "degree-table", "rows": [dict(zip(header, r)) for r in rows[1:]]}
    return _emit(obj, fmt, ["\t".join(map(str, r)) for r in rows], rows), code


def cmd_selberg(args) -> tuple:
    try:
        kappa = Fraction(args.kappa)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad kappa {args.kappa!r}") from exc
    fmt = args.format or "text"
    if args.dsquared:
        closed, lhs = dsquared_closed_form(args.n, kappa), dsquared_expansion(args.n, kappa)
    elif kappa.denominator == 1:
        closed, lhs = selberg_closed_form(args.n, kappa), selberg_lhs_exact(args.n, kappa)
    else:
        value = selberg_closed_form(args.n, kappa)
        obj = {"command": "selberg", "n": args.n, "kappa": _frac(kappa), "closed_form": repr(value)}
        return _emit(obj, fmt, [f"{value!r} (closed form only; exact route needs integer kappa)"]), 0
    equal = closed == lhs
    obj = {"command": "selberg", "identity": "dsquared" if args.dsquared else "selberg", "n": args.n,
           "kappa": _frac(kappa), "closed_form": _frac(closed), "lhs": _frac(lhs), "equal": equal}
    return _emit(obj, fmt, [f"{_frac(closed)} = {_frac(lhs)}, equal:{str(equal).lower()}"],
                 [["n", "kappa", "closed_form", "lhs", "equal"],
                  [args.n, _frac(kappa), _frac(closed), _frac(lhs), str(equal).lower()]]), 0 if equal else 1


def cmd_geometry(args) -> tuple:
    from . import geometry
    pair = make_pair(args)
    geometry.RETRY_CAP = args.retry_cap
    if args.diagram is not None:
        diagrams = [parse_diagram(args.diagram, pair.small_group())]
    else:
        diagrams = enumerate_orbits(pair.small_group())
    checks = [geometry.check_lift(pair, d, seed=args.seed) for d in diagrams]
    fmt = args.format or "json"
    obj = {"command": "geometry check-lift", "pair": pair.label(), "checks": [c.to_json() for c in checks],
           "all_ok": all(c.ok for c in checks)}
    text = [f"{c.source.text()} -> {c.geometric.text()}: {str(c.ok).lower()}" for c in checks]
    rows = [["diagram", "geometric", "combinatorial", "ok"]] + [
        [c.source.text(), c.geometric.text(), c.combinatorial.text(), str(c.ok).lower()] for c in checks]
    return _emit(obj, fmt, text, rows), 0 if obj["all_ok"] else 1


COMMANDS = {"orbits": cmd_orbits, "ring": cmd_ring, "degree": cmd_degree,
            "degree-table": cmd_degree_table, "selberg": cmd_selberg, "geometry": cmd_geometry}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = resolve(args)
        out, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"thetaorbit: error: {exc}", file=sys.stderr)
        return 2
    except (InternalError, AssertionError) as exc:
        print(f"thetaorbit: internal check failed: {exc}", file=sys.stderr)
        return 1
    except ThetaOrbitError as exc:
        print(f"thetaorbit: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(f"thetaorbit: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
