"""Command-line front end.

Every subcommand prints one JSON document (``enumerate`` prints JSON lines)
and exits with 0 on success, 1 when a sweep finds a violation, 2 on invalid
input and 3 when a conditional hypothesis is unmet without
``--assume-conjecture``.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import verify
from .curves import (
    EnumerationBounds,
    classify_negative_class,
    self_intersection_bound_check,
    enumerate_minus_one_classes,
)
from .errors import ConditionalHypothesisError, SeshadriError, WindowEmptyError
from .exactnum import QuadraticValue, sqrt_symbolic
from .lattice import (
    DivisorClass,
    ExtendedDivisorClass,
    SurfaceParams,
    anticanonical_degree,
    arithmetic_genus,
    intersect,
    make_surface,
)
from .nbs import bundle_square, certified_threshold, multipoint_conjectural, nbs_check, r_threshold
from .positivity import is_ample_base, is_ample_uniform, is_good_form, nonneg_on_candidates
from .seshadri import (
    CONDITIONALITY,
    DEFAULT_UPPER_BOUNDS,
    admissible_s,
    construct_pair,
    find_r_window,
    irrationality_witness,
    nearest_windows,
    seshadri_certify,
    seshadri_upper_bound,
)

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_CONDITIONAL = 0, 1, 2, 3

# keys a scenario file may carry besides the surface
PAYLOAD_KEYS = ("bundle", "class", "with", "bounds", "r", "s", "m", "suite", "r_max", "samples", "ex_mult_sqrt")


class UsageError(ValueError):
    pass


@dataclass
class Scenario:
    """A surface plus command-specific inputs, as stored in ``--json-in`` files."""

    surface: Optional[SurfaceParams] = None
    payload: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = dict(self.payload)
        if self.surface is not None:
            out["surface"] = self.surface.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Scenario":
        if not isinstance(obj, dict):
            raise UsageError("scenario must be a JSON object")
        unknown = set(obj) - set(PAYLOAD_KEYS) - {"surface"}
        if unknown:
            raise UsageError(f"unknown scenario keys: {sorted(unknown)}")
        surface = SurfaceParams.from_json(obj["surface"]) if "surface" in obj else None
        return cls(surface, {k: obj[k] for k in PAYLOAD_KEYS if k in obj})


# --- argument parsing -------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str) -> list[int]:
    v = _int_list(text)
    if len(v) != 2:
        raise argparse.ArgumentTypeError(f"expected A,B, got {text!r}")
    return v


def _triple(text: str) -> list[int]:
    v = _int_list(text)
    if len(v) != 3:
        raise argparse.ArgumentTypeError(f"expected A,B,M, got {text!r}")
    return v


def _class_arg(text: str) -> list[int]:
    v = _int_list(text)
    if len(v) < 2:
        raise argparse.ArgumentTypeError(f"expected A,B[,M1,...], got {text!r}")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--genus", type=int, help="genus g of the base curve")
    g.add_argument("--invariant-e", type=int, dest="invariant_e", help="invariant e of the ruled surface")
    g.add_argument("--product", action="store_true", default=None, help="X is Gamma x P^1")
    g.add_argument("--json-in", dest="json_in", metavar="FILE", help="scenario file; flags override it")
    g.add_argument("--assume-conjecture", dest="assume_conjecture", action="store_true")
    g.add_argument("--bounds", type=_triple, metavar="A,B,M", help="alpha_max,beta_max,mult_max")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--approx", type=int, metavar="DIGITS", help="add decimal renderings of exact values")
    g.add_argument("--workers", type=int, default=1)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="seshadri-ruled", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("intersect", "intersection number of two classes")
    p.add_argument("--class", dest="cls", type=_class_arg, metavar="A,B,M1,...")
    p.add_argument("--with", dest="with_", type=_class_arg, metavar="A,B,M1,...")

    p = add("classify", "classify a negative class")
    p.add_argument("--class", dest="cls", type=_class_arg, metavar="A,B,M1,...")

    p = add("bound-check", "self-intersection bound for a curve through the points")
    p.add_argument("--class", dest="cls", type=_class_arg, metavar="A,B,M1,...")

    p = add("enumerate", "list numerical (-1)-classes as JSON lines")
    p.add_argument("--r", type=int)
    p.add_argument("--symmetric", action="store_true", help="one class per permutation orbit")

    p = add("good-form", "good-form test and nonnegativity check")
    p.add_argument("--class", dest="cls", type=_class_arg, metavar="A,B,M1,...")
    p.add_argument("--ex-mult-sqrt", dest="ex_mult_sqrt", type=int, metavar="N",
                   help="append a point of multiplicity sqrt(N)")
    p.add_argument("--nonneg", action="store_true", help="also test L.C >= 0 on candidate classes")

    p = add("ample", "ampleness of a base bundle or its uniform blow-up")
    p.add_argument("--bundle", type=_pair, metavar="A,B")
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)

    p = add("threshold", "point-count threshold for the multi-point inequality")
    p.add_argument("--bundle", type=_pair, metavar="A,B")

    p = add("nbs", "multi-point inequality for one curve class")
    p.add_argument("--bundle", type=_pair, metavar="A,B")
    p.add_argument("--r", type=int)
    p.add_argument("--class", dest="cls", type=_class_arg, metavar="A,B,M1,...")

    p = add("multipoint", "conjectural multi-point Seshadri constant")
    p.add_argument("--bundle", type=_pair, metavar="A,B")
    p.add_argument("--r", type=int)

    p = add("window", "good-form window for s, or admissible s for r")
    p.add_argument("--s", type=int)
    p.add_argument("--r", type=int)

    p = add("construct", "choose (r, s) and build L")
    p.add_argument("--r", type=int)
    p.add_argument("--require-irrational", dest="require_irrational", action="store_true")

    p = add("certify", "Seshadri certificate at a very general point")
    p.add_argument("--class", dest="cls", type=_class_arg, metavar="A,B,M1,...")
    p.add_argument("--bundle", type=_pair, metavar="A,B")
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)

    p = add("upper-bound", "upper bound for the Seshadri constant from candidate curves")
    p.add_argument("--class", dest="cls", type=_class_arg, metavar="A,B,M1,...")

    p = add("witness", "certificate with irrational Seshadri constant sqrt(2)")
    p.add_argument("--s", type=int)

    p = add("verify", "exhaustive and randomized property sweeps")
    p.add_argument("--suite", choices=verify.SUITES + ("all",))
    p.add_argument("--r-max", dest="r_max", type=int)
    p.add_argument("--samples", type=int)
    return parser


# --- helpers ----------------------------------------------------------------


class Ctx:
    """Parsed flags merged over an optional scenario file."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.scenario = Scenario()
        if args.json_in:
            try:
                with open(args.json_in, encoding="utf-8") as fh:
                    self.scenario = Scenario.from_json(json.load(fh))
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read scenario {args.json_in}: {exc}") from None

    def get(self, name: str, attr: Optional[str] = None, default: Any = None) -> Any:
        v = getattr(self.args, attr or name, None)
        if v is not None:
            return v
        return self.scenario.payload.get(name, default)

    def require(self, name: str, attr: Optional[str] = None) -> Any:
        v = self.get(name, attr)
        if v is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")
        return v

    def surface(self) -> SurfaceParams:
        a = self.args
        base = self.scenario.surface
        g = a.genus if a.genus is not None else (base.g if base else None)
        e = a.invariant_e if a.invariant_e is not None else (base.e if base else None)
        if g is None or e is None:
            raise UsageError("a surface is required (--genus and --invariant-e)")
        prod = a.product if a.product is not None else (base.is_product if base else False)
        return make_surface(g, e, prod)

    def divisor(self, name: str = "class", attr: str = "cls") -> DivisorClass:
        v = self.require(name, attr)
        if isinstance(v, dict):
            return DivisorClass.from_json(v)
        return DivisorClass(int(v[0]), int(v[1]), tuple(int(m) for m in v[2:]))

    def bundle(self) -> tuple[int, int]:
        a, b = self.require("bundle")
        return int(a), int(b)

    def bounds(self, r: int, default: Sequence[int] = (2, 3, 2)) -> EnumerationBounds:
        a, b, m = self.get("bounds", default=list(default))
        return EnumerationBounds(int(a), int(b), int(m), r)

    @property
    def assume(self) -> bool:
        return bool(self.args.assume_conjecture)


def _conditional(out: dict, ctx: Ctx) -> dict:
    out["conditionality"] = CONDITIONALITY
    if ctx.assume:
        out["assumed_conjecture"] = True
    return out


# --- subcommands ------------------------------------------------------------


def cmd_intersect(ctx: Ctx) -> dict:
    s = ctx.surface()
    c = ctx.divisor()
    d = ctx.divisor("with", "with_") if ctx.get("with", "with_") is not None else c
    pa = arithmetic_genus(c, s)
    return {
        "surface": s.to_json(),
        "class": c.to_json(),
        "with": d.to_json(),
        "intersection": intersect(c, d, s),
        "anticanonical_degree": anticanonical_degree(c, s),
        "arithmetic_genus": f"{pa.numerator}/{pa.denominator}",
    }


def cmd_classify(ctx: Ctx) -> dict:
    s = ctx.surface()
    c = ctx.divisor()
    return _conditional({"surface": s.to_json(), "class": c.to_json(), **classify_negative_class(c, s).to_json()}, ctx)


def cmd_bound_check(ctx: Ctx) -> dict:
    s = ctx.surface()
    c = ctx.divisor()
    check = self_intersection_bound_check(c.image, c.mults, s)
    return _conditional({"surface": s.to_json(), "class": c.to_json(), "check": check.value}, ctx)


def cmd_enumerate(ctx: Ctx) -> list[dict]:
    s = ctx.surface()
    r = int(ctx.require("r"))
    b = ctx.bounds(r)
    classes = enumerate_minus_one_classes(s, b, symmetric=bool(ctx.args.symmetric))
    return [{"index": i, "class": c.to_json()} for i, c in enumerate(classes)]


def cmd_good_form(ctx: Ctx) -> dict:
    s = ctx.surface()
    c = ctx.divisor()
    n = ctx.get("ex_mult_sqrt")
    l = ExtendedDivisorClass(c, sqrt_symbolic(int(n))) if n is not None else c
    out = {"surface": s.to_json(), "class": l.to_json(), **is_good_form(l, s).to_json()}
    if ctx.args.nonneg:
        rep = nonneg_on_candidates(l, s, ctx.bounds(len(l.mults)), require_good_form=not ctx.assume)
        out["nonneg"] = rep.to_json()
    return out


def cmd_ample(ctx: Ctx) -> dict:
    s = ctx.surface()
    a, b = ctx.bundle()
    r = ctx.get("r")
    out = {"surface": s.to_json(), "bundle": [a, b], "ample_base": is_ample_base(s, a, b)}
    if r is None:
        out["ample"] = out["ample_base"]
        return out
    m = int(ctx.get("m", default=1))
    out.update(r=int(r), m=m, ample=is_ample_uniform(s, (a, b), int(r), m, assume_conjecture=ctx.assume))
    return _conditional(out, ctx)


def cmd_threshold(ctx: Ctx) -> dict:
    s = ctx.surface()
    a, b = ctx.bundle()
    out = {"surface": s.to_json(), "bundle": [a, b], "L_sq": bundle_square(s, a, b)}
    out.update(r_threshold(s, a, b).to_json())
    out["certified"] = certified_threshold(s, a, b).to_json()
    return _conditional(out, ctx)


def cmd_nbs(ctx: Ctx) -> dict:
    s = ctx.surface()
    a, b = ctx.bundle()
    r = int(ctx.require("r"))
    c = ctx.divisor()
    holds = nbs_check(s, a, b, r, c.image, c.mults)
    return _conditional(
        {"surface": s.to_json(), "bundle": [a, b], "r": r, "class": c.to_json(), "holds": holds}, ctx
    )


def cmd_multipoint(ctx: Ctx) -> dict:
    s = ctx.surface()
    a, b = ctx.bundle()
    r = int(ctx.require("r"))
    value, status = multipoint_conjectural(s, a, b, r)
    return _conditional(
        {"surface": s.to_json(), "bundle": [a, b], "r": r, "value": value.to_json(), "status": status}, ctx
    )


def cmd_window(ctx: Ctx) -> dict:
    s = ctx.surface()
    k, r = ctx.get("s"), ctx.get("r")
    out: dict = {"surface": s.to_json()}
    if k is not None:
        w = find_r_window(s, int(k))
        out.update(s=int(k), empty=len(w) == 0, r_min=w.start, r_max=w.stop - 1)
    elif r is not None:
        r = int(r)
        out.update(r=r, admissible_s=admissible_s(s, r), nearest=nearest_windows(s, r))
    else:
        raise UsageError("window needs --s or --r")
    return out


def cmd_construct(ctx: Ctx) -> dict:
    s = ctx.surface()
    r = ctx.get("r")
    rr, k, l = construct_pair(
        s,
        None if r is None else int(r),
        require_irrational=bool(ctx.args.require_irrational),
        assume_conjecture=ctx.assume,
    )
    l_sq = bundle_square(s, l.a, l.b) - rr
    return _conditional({"surface": s.to_json(), "r": rr, "s": k, "L": l.to_json(), "L_sq": l_sq}, ctx)


def cmd_certify(ctx: Ctx) -> dict:
    s = ctx.surface()
    if ctx.get("class", "cls") is not None:
        l = ctx.divisor()
    else:
        a, b = ctx.bundle()
        r = int(ctx.require("r"))
        l = DivisorClass(a, b, (int(ctx.get("m", default=1)),) * r)
    b = ctx.get("bounds")
    bounds = None if b is None else EnumerationBounds(*map(int, b), l.r + 1)
    cert = seshadri_certify(s, l, bounds=bounds)
    return _conditional(cert.to_json(), ctx)


def cmd_upper_bound(ctx: Ctx) -> dict:
    s = ctx.surface()
    l = ctx.divisor()
    bounds = ctx.bounds(l.r + 1, DEFAULT_UPPER_BOUNDS)
    value = seshadri_upper_bound(s, l, bounds)
    return _conditional(
        {"surface": s.to_json(), "class": l.to_json(), "bounds": bounds.to_json(), "upper_bound": value.to_json()},
        ctx,
    )


def cmd_witness(ctx: Ctx) -> dict:
    s = ctx.surface()
    return _conditional(irrationality_witness(s, int(ctx.require("s"))).to_json(), ctx)


def _suite(name: str, ctx: Ctx) -> dict:
    w = max(1, int(ctx.args.workers))
    seed = int(ctx.args.seed)
    samples = ctx.get("samples")
    r_max = ctx.get("r_max")
    if name == "equivalence":
        return verify.equivalence_suite(ctx.bounds(0, (3, 4, 3)), 5 if r_max is None else int(r_max), workers=w)
    if name == "goodform":
        return verify.goodform_suite(ctx.bounds(0, (3, 4, 3)), 5 if r_max is None else int(r_max), workers=w)
    if name == "nbs":
        return verify.nbs_suite(ctx.bounds(0, (4, 6, 3)), workers=w)
    if name == "witness":
        return verify.witness_suite(workers=w)
    if name == "lattice":
        return verify.lattice_suite(100_000 if samples is None else int(samples), seed, workers=w)
    return verify.exactnum_suite(10_000 if samples is None else int(samples), seed, workers=w)


def cmd_verify(ctx: Ctx) -> dict:
    name = ctx.require("suite")
    names = verify.SUITES if name == "all" else (name,)
    if name not in names:
        raise UsageError(f"unknown suite {name!r}")
    results = [_suite(n, ctx) for n in names]
    failed = sum(r["violation_count"] + r.get("conjecture_violation_candidates", 0) for r in results)
    out = {"suite": name, "results": results, "passed": failed == 0}
    return _conditional(out, ctx)


COMMANDS = {
    "intersect": cmd_intersect,
    "classify": cmd_classify,
    "bound-check": cmd_bound_check,
    "enumerate": cmd_enumerate,
    "good-form": cmd_good_form,
    "ample": cmd_ample,
    "threshold": cmd_threshold,
    "nbs": cmd_nbs,
    "multipoint": cmd_multipoint,
    "window": cmd_window,
    "construct": cmd_construct,
    "certify": cmd_certify,
    "upper-bound": cmd_upper_bound,
    "witness": cmd_witness,
    "verify": cmd_verify,
}


# --- output -----------------------------------------------------------------


def _add_approx(obj: Any, digits: int) -> Any:
    if isinstance(obj, dict):
        if set(obj) == {"p", "q", "d"}:
            val = QuadraticValue.from_json(obj)
            return {**obj, "approx": val.approx(digits)}
        return {k: _add_approx(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_add_approx(v, digits) for v in obj]
    return obj


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def _error_doc(command: Optional[str], kind: str, message: str, **extra) -> dict:
    err = {"type": kind, "message": message, **extra}
    return {"command": command, "schema_version": SCHEMA_VERSION, "error": err}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage on stderr
        return EXIT_OK if exc.code == 0 else EXIT_INVALID

    command = args.command
    try:
        ctx = Ctx(args)
        if args.approx is not None and args.approx < 1:
            raise UsageError("--approx needs a positive number of digits")
        result = COMMANDS[command](ctx)
    except ConditionalHypothesisError as exc:
        doc = _error_doc(command, "ConditionalHypothesisError", str(exc), hypothesis=exc.hypothesis)
        doc["conditionality"] = CONDITIONALITY
        print(_dump(doc), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_CONDITIONAL
    except WindowEmptyError as exc:
        print(_dump(_error_doc(command, "WindowEmptyError", str(exc), nearest=exc.nearest)), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    except (SeshadriError, UsageError, ValueError, TypeError, KeyError) as exc:
        print(_dump(_error_doc(command, type(exc).__name__, str(exc))), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_INVALID

    def finish(doc: dict) -> str:
        doc = {"command": command, "schema_version": SCHEMA_VERSION, **doc}
        if args.approx is not None:
            doc = _add_approx(doc, args.approx)
        return _dump(doc)

    if isinstance(result, list):
        for row in result:
            print(finish(row), file=out)
        return EXIT_OK
    print(finish(result), file=out)
    if command == "verify" and not result["passed"]:
        return EXIT_VIOLATION
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
