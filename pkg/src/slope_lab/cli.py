"""Command line front end.

Exit codes: 0 when a value was computed or an inequality holds, 2 when an
inequality was evaluated and fails, 1 for usage, parse and hypothesis errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, TextIO

from . import bound_lib as BL
from . import families as F
from . import hn_engine as HN
from . import slope_theorems as ST
from . import wps_ring as W
from .checks import CheckReport
from .errors import SlopeLabError
from .rational import fmt, to_fraction
from .report import report_examples

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-7/2" through as a value, the way argparse already treats "-3"
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rat(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3/2, got {text!r}")


class Output:
    def __init__(self, mode: str, out: TextIO):
        self.mode, self.out = mode, out

    def scalar(self, name: str, value) -> None:
        text = fmt(value) if isinstance(value, (int, Fraction)) and not isinstance(value, bool) \
            else str(value).lower() if isinstance(value, bool) else str(value)
        if self.mode == "json":
            self.obj({name: text})
        else:
            self.out.write(text + "\n")

    def obj(self, data: dict) -> None:
        if self.mode == "json":
            self.out.write(json.dumps(data, indent=2) + "\n")
        else:
            for k, v in data.items():
                if isinstance(v, dict):
                    v = json.dumps(v)
                elif isinstance(v, bool) or v is None:
                    v = json.dumps(v)
                self.out.write(f"{k}: {v}\n")


# ---------------------------------------------------------------------------
# family


def _family_from_args(args) -> F.FamilyResult:
    k = args.kind
    if k in ("pn", "veronese", "quadric"):
        rank = args.rank if args.rank is not None else (3 if k == "veronese" else None)
        if rank is None or args.degree is None or args.mu_minus is None:
            raise UsageError(f"family {k} needs --rank, --degree and --mu-minus")
        E = F.BundleOnCurve(rank, args.degree, args.mu_minus)
        if k == "pn":
            return F.family_pn(E)
        if k == "veronese":
            return F.family_veronese(E)
        if args.degA is None:
            raise UsageError("family quadric needs --degA")
        return F.family_quadric(E, args.degA)
    if k == "quadric_low_rank":
        _need(args, "n", "r", "dd")
        return F.family_quadric_low_rank(args.n, args.r, args.dd)
    if k == "scroll":
        _need(args, "degE", "mu_minus", "d", "a")
        E = F.BundleOnCurve(2, args.degE, args.mu_minus)
        return F.family_scroll(F.ScrollFamily(E, args.d, args.a))
    if k == "double_cover":
        _need(args, "base")
        base_obj = _read_json(args.base, args.stdin)
        base = F.build_family(base_obj.get("input", base_obj))
        branch = {name: getattr(args, name) for name in ("m", "alpha", "beta")
                  if getattr(args, name) is not None}
        return F.family_double_cover(base, **branch)
    if k == "wps":
        _need(args, "a", "d", "e", "h", "l")
        return F.wps_family(F.WpsHypersurfaceFamily(args.a, args.d, args.e, args.h, args.l,
                                                    require_well_formed=not args.no_strict))
    if k == "sylvester":
        _need(args, "n")
        return F.wps_family(F.sylvester_family(args.n).family)
    raise UsageError(f"unknown family kind {k!r}")


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + m.replace("_", "-") for m in missing)
        raise UsageError(f"family {args.kind} needs {flags}")


def cmd_family(args, out: Output) -> int:
    res = _family_from_args(args)
    if out.mode == "table":
        inv = res.invariants
        out.obj({"kind": res.kind, "n": inv.n, "top_self": fmt(inv.top_self),
                 "push_deg": fmt(inv.push_deg), "h0": inv.h0, "fiber_top": fmt(inv.fiber_top),
                 "slope": fmt(res.slope), "bs": fmt(res.bs)})
    else:
        out.obj(res.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def _read_json(path: Optional[str], stdin: TextIO) -> Any:
    try:
        if path is None or path == "-":
            text = stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}")


_BOOL_FLAGS = {"L_nef", "push_nef", "birational", "kodaira_nonneg", "curve_special",
               "canonical_sings", "ksb_stable"}
_Q_FLAGS = {"gen_finite_at_q", "LF_cartier_gg_at_q", "LF_cartier_big_at_q"}


def _apply_assumptions(inv: ST.FamilyInvariants, items: Sequence[str]) -> ST.FamilyInvariants:
    changes: dict = {}
    for item in items:
        name, _, raw = item.partition("=")
        name = name.strip()
        if name in _BOOL_FLAGS:
            if raw in ("", "1", "true", "True", "yes"):
                changes[name] = True
            elif raw in ("0", "false", "False", "no"):
                changes[name] = False
            else:
                raise UsageError(f"flag {name} takes true/false, got {raw!r}")
        elif name in _Q_FLAGS:
            if raw.lower() in ("none", ""):
                changes[name] = None
            elif raw.isdigit() and int(raw) >= 1:
                changes[name] = int(raw)
            else:
                raise UsageError(f"flag {name} takes a positive integer or none, got {raw!r}")
        else:
            known = ", ".join(sorted(_BOOL_FLAGS | _Q_FLAGS))
            raise UsageError(f"unknown flag {name!r}; known: {known}")
    return replace(inv, flags=replace(inv.flags, **changes)) if changes else inv


def _load_invariants(obj: Any) -> ST.FamilyInvariants:
    if not isinstance(obj, dict):
        raise UsageError("expected a JSON object")
    if "invariants" in obj:
        obj = obj["invariants"]
    try:
        return ST.FamilyInvariants.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed invariants: missing or bad field {exc}")


def _report_out(rep: CheckReport, out: Output) -> int:
    out.obj(rep.to_json())
    if rep.holds is None:
        return EXIT_ERROR
    return EXIT_OK if rep.holds else EXIT_FAILED


def cmd_check(args, out: Output) -> int:
    tid = ST.theorem_id(args.theorem)
    inv = _load_invariants(_read_json(args.input, args.stdin))
    inv = _apply_assumptions(inv, args.assume or [])
    params = {k: getattr(args, k) for k in ("m", "s", "w") if getattr(args, k) is not None}
    if params:
        inv = replace(inv, params=replace(inv.params, **params))
    return _report_out(ST.check_slope_inequality(tid, inv), out)


# ---------------------------------------------------------------------------
# bound


BOUNDS: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "castelnuovo": (BL.castelnuovo_genus_bound, ("d", "N")),
    "min_degree": (BL.min_degree_birational_subcanonical, ("h0", "p")),
    "harris": (BL.harris_bound, ("n", "p", "h0")),
    "noether_I": (BL.noether_I_bound, ("k", "h0")),
    "noether_Ibis": (BL.noether_Ibis_bound, ("k", "h0")),
    "noether_II": (BL.noether_II_bound, ("h0_M", "kodaira_nonneg")),
    "noether_III": (BL.noether_III_bound, ("h0_M", "h0_L", "n", "gap")),
    "castelnuovo2": (BL.castelnuovo2_bound, ("n", "p", "k", "h0_M")),
    "castelnuovo3": (BL.castelnuovo3_bound, ("n", "p", "h0_M")),
    "clifford": (BL.clifford_bound, ("h0",)),
}


def cmd_bound(args, out: Output) -> int:
    fn, names = BOUNDS[args.kind]
    values = []
    for name in names:
        v = getattr(args, name)
        if v is None:
            if args.kind == "noether_III" and name in ("h0_M", "h0_L"):
                v = 0   # only one of the two enters, depending on the gap case
            else:
                raise UsageError(f"bound {args.kind} needs --{name.replace('_', '-')}")
        values.append(v)
    value = fn(*values)
    if args.kind == "castelnuovo":
        c = BL.castelnuovo_data(args.d, args.N)
        if out.mode == "json":
            out.obj({"A": c.A, "eps": c.eps, "bound": fmt(value)})
            return EXIT_OK
    out.scalar("bound", value)
    return EXIT_OK


# ---------------------------------------------------------------------------
# hn


def cmd_hn(args, out: Output) -> int:
    if args.hn_cmd == "lemma":
        return _report_out(HN.check_log_concave_lemma(args.d), out)
    profile = HN.HNProfile.from_json(_read_json(args.profile, args.stdin))
    if args.hn_cmd == "degree":
        out.obj({"degree": fmt(HN.pushforward_degree(profile)),
                 "nef": HN.is_nef_profile(profile)})
        return EXIT_OK
    if args.model is None:
        raise UsageError("hn bound needs --model")
    if args.profile in (None, "-") and args.model == "-":
        raise UsageError("profile and model cannot both come from stdin")
    model = HN.IntersectionModel.from_json(_read_json(args.model, args.stdin),
                                           check_monotone=args.check_monotone)
    extra = HN.ExtraClassChoice.make(args.extra, profile)
    ell, n = profile.length, model.n
    strategy = args.strategy
    if strategy == "best":
        cap = args.search_cap if args.search_cap is not None else HN.search_cap_from_env()
        res = HN.best_xiao_bound(profile, model, extra, cap)
        out.obj({"bound": fmt(res.value), "seq_s": list(res.seq_s), "seq_m": list(res.seq_m),
                 "exhaustive": res.exhaustive})
        return EXIT_OK
    if strategy == "general":
        if args.seq_s is None or args.seq_m is None:
            raise UsageError("strategy general needs --seq-s and --seq-m")
        value = HN.xiao_bound_general(profile, model, extra, args.seq_s, args.seq_m)
    elif strategy == "1A":
        value = HN.xiao_bound_1A(profile, model, extra)
    elif strategy == "1B":
        value = HN.xiao_bound_1B(profile, model, extra)
    else:
        if args.seq_s is None:
            raise UsageError("strategy 2 needs --seq-s")
        value = HN.xiao_bound_2(profile, model, extra, args.seq_s)
    out.scalar("bound", value)
    return EXIT_OK


# ---------------------------------------------------------------------------
# wps, cone, fano, report


def cmd_wps(args, out: Output) -> int:
    a = W.WeightVector(args.weights)
    c = args.wps_cmd
    if c == "dim":
        out.scalar("dim", W.graded_dim(a, args.m))
    elif c == "cartier":
        out.scalar("cartier_index", W.cartier_index(a))
    elif c == "wellformed":
        out.scalar("well_formed", W.is_well_formed(a))
    elif c == "top":
        out.scalar("top_self_intersection", W.taut_top_self_intersection(a))
    elif c == "canonical":
        out.scalar("canonical_coefficient", W.canonical_coefficient(a))
    elif c == "cohomology":
        out.scalar("h", W.wps_cohomology_dim(a, args.m, args.i))
    return EXIT_OK


def cmd_cone(args, out: Output) -> int:
    c = args.cone_cmd
    if c == "interval":
        iv = ST.ample_interval(args.part, args.n, args.m, w=args.w, q=args.q)
        out.scalar("interval", str(iv))
    elif c == "away":
        out.scalar("coefficient", ST.nef_away_coefficient(args.case, args.n, args.m,
                                                          v=args.v, q=args.q))
    else:
        thr = ST.asymptotic_nef_threshold(args.n, args.m)
        lead = ST.lambda_m_leading(args.n, args.m)
        out.obj({"threshold": fmt(thr), "lambda_m_leading": fmt(lead)})
    return EXIT_OK


def cmd_fano(args, out: Output) -> int:
    if args.input is not None:
        obj = _read_json(args.input, args.stdin)
        try:
            data = ST.FanoFamilyData.from_json(obj)
        except TypeError as exc:
            raise UsageError(f"malformed Fano data: {exc}")
    else:
        names = ("n", "v", "delta", "C", "q", "antican_top", "push_deg_neg_q", "h0_fiber")
        missing = [x for x in names if getattr(args, x) is None]
        if missing:
            raise UsageError("fano check needs --input or all of "
                             + ", ".join("--" + m.replace("_", "-") for m in missing))
        data = ST.FanoFamilyData(**{x: getattr(args, x) for x in names},
                                 gen_finite=args.gen_finite,
                                 globally_generated=args.globally_generated,
                                 twist_integral=not args.non_integral_twist)
    return _report_out(ST.check_fano_slope(data, args.variant), out)


def cmd_report(args, out: Output) -> int:
    text, ok = report_examples(args.format)
    out.out.write(text + "\n")
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> Parser:
    p = Parser(prog="slope-lab", description=__doc__.splitlines()[0])
    p.add_argument("--output", choices=["json", "table"], default=None,
                   help="output mode (default: json for family, table otherwise)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    fam = sub.add_parser("family", help="invariants of an explicit family")
    fam.add_argument("kind", choices=["pn", "veronese", "quadric", "quadric_low_rank", "scroll",
                                      "double_cover", "wps", "sylvester"])
    fam.add_argument("--rank", type=int)
    fam.add_argument("--degree", type=_rat)
    fam.add_argument("--mu-minus", dest="mu_minus", type=_rat)
    fam.add_argument("--degA", type=_rat)
    fam.add_argument("--n", type=int)
    fam.add_argument("--r", type=int)
    fam.add_argument("--dd", type=int)
    fam.add_argument("--degE", type=_rat)
    fam.add_argument("--a", type=str)
    fam.add_argument("--d", type=str)
    fam.add_argument("--e", type=int)
    fam.add_argument("--h", type=int)
    fam.add_argument("--l", type=int)
    fam.add_argument("--no-strict", action="store_true",
                     help="accept weights that are not well-formed")
    fam.add_argument("--base", help="base family JSON file for double_cover ('-' for stdin)")
    fam.add_argument("--m", type=int)
    fam.add_argument("--alpha", type=int)
    fam.add_argument("--beta", type=int)
    fam.set_defaults(func=cmd_family, default_output="json")

    chk = sub.add_parser("check", help="evaluate a slope inequality on family invariants")
    chk.add_argument("--theorem", required=True)
    chk.add_argument("--input", default="-", help="JSON file, or '-' for stdin")
    chk.add_argument("--assume", action="append", metavar="FLAG[=VALUE]",
                     help="override a hypothesis flag, e.g. gen_finite_at_q=1")
    chk.add_argument("--m", type=int)
    chk.add_argument("--s", type=int)
    chk.add_argument("--w", type=_rat)
    chk.set_defaults(func=cmd_check, default_output="json")

    bnd = sub.add_parser("bound", help="classical lower bounds")
    bnd.add_argument("kind", choices=sorted(BOUNDS))
    for name in ("d", "N", "h0", "p", "n", "k"):
        bnd.add_argument("--" + name, type=int)
    bnd.add_argument("--h0-M", dest="h0_M", type=int)
    bnd.add_argument("--h0-L", dest="h0_L", type=int)
    bnd.add_argument("--gap", help="ge2, eq0, or the integer L^n - L^(n-1) M")
    bnd.add_argument("--kodaira-nonneg", dest="kodaira_nonneg", action="store_true",
                     default=None, help="kappa(F) >= 0 and n >= 2")
    bnd.set_defaults(func=cmd_bound, default_output="table")

    hn = sub.add_parser("hn", help="Harder-Narasimhan lower bounds")
    hsub = hn.add_subparsers(dest="hn_cmd", required=True, parser_class=Parser)
    hb = hsub.add_parser("bound")
    hb.add_argument("--profile", required=True)
    hb.add_argument("--model")
    hb.add_argument("--strategy", choices=["general", "1A", "1B", "2", "best"], required=True)
    hb.add_argument("--seq-s", dest="seq_s", type=_ints)
    hb.add_argument("--seq-m", dest="seq_m", type=_ints)
    hb.add_argument("--extra", choices=[v.value for v in HN.ExtraVariant], default="reuse_last")
    hb.add_argument("--search-cap", dest="search_cap", type=int)
    hb.add_argument("--check-monotone", action="store_true")
    hd = hsub.add_parser("degree")
    hd.add_argument("--profile", required=True)
    hl = hsub.add_parser("lemma", help="log-concave sequence lemma")
    hl.add_argument("--d", type=_ints, required=True)
    hn.set_defaults(func=cmd_hn, default_output="table")

    wps = sub.add_parser("wps", help="weighted projective space arithmetic")
    wsub = wps.add_subparsers(dest="wps_cmd", required=True, parser_class=Parser)
    for name in ("dim", "cartier", "wellformed", "top", "canonical", "cohomology"):
        sp = wsub.add_parser(name)
        sp.add_argument("--weights", type=_ints, required=True)
        if name in ("dim", "cohomology"):
            sp.add_argument("--m", type=int, required=True)
        if name == "cohomology":
            sp.add_argument("--i", type=int, required=True)
    wps.set_defaults(func=cmd_wps, default_output="table")

    cone = sub.add_parser("cone", help="ample and nef coefficients on KSB moduli")
    csub = cone.add_subparsers(dest="cone_cmd", required=True, parser_class=Parser)
    ci = csub.add_parser("interval")
    ci.add_argument("--part", type=int, choices=[1, 2], required=True)
    ca = csub.add_parser("away")
    ca.add_argument("--case", choices=["1a", "1b", "2", "3"], required=True)
    cs = csub.add_parser("asymptotic")
    for sp in (ci, ca, cs):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
    ci.add_argument("--w", type=_rat)
    ci.add_argument("--q", type=int)
    ca.add_argument("--v", type=_rat)
    ca.add_argument("--q", type=int)
    cone.set_defaults(func=cmd_cone, default_output="table")

    fano = sub.add_parser("fano", help="slope inequalities for K-stable Fano fibrations")
    fsub = fano.add_subparsers(dest="fano_cmd", required=True, parser_class=Parser)
    fc = fsub.add_parser("check")
    fc.add_argument("--variant", choices=["i", "ii", "iii"], required=True)
    fc.add_argument("--input", help="FanoFamilyData JSON file, or '-' for stdin")
    fc.add_argument("--n", type=int)
    fc.add_argument("--v", type=_rat)
    fc.add_argument("--delta", type=_rat)
    fc.add_argument("--C", type=_rat)
    fc.add_argument("--q", type=int)
    fc.add_argument("--antican-top", dest="antican_top", type=_rat)
    fc.add_argument("--push-deg", dest="push_deg_neg_q", type=_rat)
    fc.add_argument("--h0-fiber", dest="h0_fiber", type=int)
    fc.add_argument("--gen-finite", action="store_true")
    fc.add_argument("--globally-generated", action="store_true")
    fc.add_argument("--non-integral-twist", action="store_true")
    fano.set_defaults(func=cmd_fano, default_output="json")

    rep = sub.add_parser("report", help="regenerate the worked examples")
    rsub = rep.add_subparsers(dest="report_cmd", required=True, parser_class=Parser)
    re_ = rsub.add_parser("examples")
    re_.add_argument("--format", choices=["md", "csv", "json"], default="md")
    rep.set_defaults(func=cmd_report, default_output="table")
    return p


def run(argv: Sequence[str], stdin: Optional[TextIO] = None,
        stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = list(argv)
    mode = _requested_mode(argv)
    try:
        args = build_parser().parse_args(list(argv))
        mode = args.output or args.default_output
        args.stdin = stdin
        if args.command == "family" and args.kind in ("wps", "scroll"):
            _split_lists(args)
        return args.func(args, Output(mode, stdout))
    except SystemExit as exc:   # --help
        return EXIT_OK if not exc.code else EXIT_ERROR
    except (UsageError, SlopeLabError, ValueError, TypeError, KeyError) as exc:
        kind = "UsageError" if isinstance(exc, UsageError) else type(exc).__name__
        msg = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        if mode == "json":
            stdout.write(json.dumps({"error": kind, "message": msg}) + "\n")
        else:
            stderr.write(f"error ({kind}): {msg}\n")
        return EXIT_ERROR


def _requested_mode(argv: list[str]) -> str:
    # used for errors raised before parsing finishes
    if "--output=json" in argv:
        return "json"
    if "--output" in argv:
        i = argv.index("--output")
        return "json" if argv[i + 1:i + 2] == ["json"] else "table"
    return "table"


def _split_lists(args) -> None:
    try:
        if args.kind == "wps" and args.a is not None:
            args.a = [int(x) for x in args.a.split(",")]
        if args.kind == "scroll":
            if args.d is not None:
                args.d = [int(x) for x in args.d.split(",")]
            if args.a is not None:
                args.a = [to_fraction(x) for x in args.a.split(",")]
    except ValueError:
        raise UsageError("--a and --d take comma-separated lists")
    if args.kind == "wps" and args.d is not None:
        try:
            args.d = int(args.d)
        except ValueError:
            raise UsageError("--d must be an integer for wps families")


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
