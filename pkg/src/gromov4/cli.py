"""Command-line front end.

Every command works on a manifold model named by --manifold, which is
either a preset name (cp2, cp2_blowup(n), s2xs2, s2xt2, elliptic(n)) or a
path to a JSON model file.  Classes are expressions over the model's basis
symbols, e.g. "3L - E1".  Output comes in two formats: "human" (default)
and "records", where every line is key=value with stable keys so golden
tests can diff byte-exactly.

Exit codes: 0 on success, 2 on usage errors (bad flags, unparseable
expressions, invalid model files), 1 on domain errors (an operation asked
outside its mathematical domain, or missing count data).  Errors print a
single machine-parsable record on stderr: error code=<id> msg=<text>.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from typing import Callable

from .errors import (
    ClassParseError,
    DomainError,
    ModelFileError,
    UnknownPresetError,
)
from .fibersum import fiber_gr_table, gr_elliptic_fiber
from .invariants import (
    classify_negative,
    genus_embedded,
    in_forward_cone,
    is_good_class,
    k,
    k_prime,
    light_cone_pair_check,
    moduli_dimension,
    reduce_multicovers,
)
from .lattice import (
    PRESET_NAMES,
    HClass,
    ManifoldModel,
    format_class,
    preset,
)
from .model_io import load_model
from .report import Report
from .spherical import gr_s
from .structure import (
    Component,
    Configuration,
    check_kmin_constraints,
    enumerate_decompositions,
    gromov_via_decompositions,
    verify_good_configuration,
    verify_kprime_configuration,
)
from .torus_series import TorusLabel, gr_torus_class


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse wants to sys.exit on errors; route them through the
    # structured error path instead.
    def error(self, message):
        raise UsageError(message)


def _load_manifold(source: str) -> ManifoldModel:
    looks_like_path = os.sep in source or source.endswith(".json")
    if not looks_like_path:
        try:
            return preset(source)
        except UnknownPresetError:
            if not os.path.exists(source):
                raise
    if not os.path.exists(source):
        raise UsageError(f"manifold {source!r} is neither a preset nor a file")
    return load_model(source)


def _classes(model: ManifoldModel, args) -> list[HClass]:
    exprs = args.cls or []
    if not exprs:
        raise UsageError("at least one --class is required")
    return [model.parse(e) for e in exprs]


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _parse_tori(text: str) -> list[tuple[TorusLabel, int]]:
    tori = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            label_text, cover_text = token.split(":", 1)
            try:
                cover = int(cover_text)
            except ValueError:
                raise UsageError(f"bad cover multiplicity in torus token {token!r}") from None
        else:
            label_text, cover = token, 1
        try:
            label = TorusLabel.parse(label_text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        tori.append((label, cover))
    if not tori:
        raise UsageError("--tori needs at least one label")
    return tori


def _parse_component(text: str) -> tuple[str, int, int]:
    fields = text.split(":")
    if len(fields) > 3:
        raise UsageError(f"component {text!r} must be expr[:mult[:genus]]")
    expr = fields[0]
    try:
        mult = int(fields[1]) if len(fields) > 1 and fields[1] else 1
        genus = int(fields[2]) if len(fields) > 2 and fields[2] else 0
    except ValueError:
        raise UsageError(f"bad integers in component {text!r}") from None
    return expr, mult, genus


def _report_lines(rep: Report, prefix: str, fmt: str) -> list[str]:
    lines = []
    for check in rep.checks:
        status = "pass" if check.passed else "fail"
        if fmt == "records":
            lines.append(f"{prefix}.{check.cond}={status}")
            if not check.passed and check.witness:
                wit = "|".join(str(w) for w in check.witness)
                lines.append(f"{prefix}.{check.cond}.witness={wit}")
        else:
            line = f"  {check.cond}: {status}"
            if not check.passed:
                line += f"  ({check.detail})"
                if check.witness:
                    line += " witness " + ", ".join(str(w) for w in check.witness)
            lines.append(line)
    verdict = "pass" if rep.ok else "fail"
    if fmt == "records":
        lines.append(f"{prefix}.result={verdict}")
    else:
        lines.append(f"result: {verdict}")
    return lines


# --- command handlers; each returns the stdout lines -----------------------


def _cmd_presets(args) -> list[str]:
    if args.format == "records":
        return [f"preset={name}" for name in PRESET_NAMES]
    return list(PRESET_NAMES)


def _cmd_k(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        v = k(A)
        lines.append(f"k({s})={v}" if args.format == "records" else f"k({s}) = {v}")
    return lines


def _cmd_kprime(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        v = k_prime(model, A)
        lines.append(f"kprime({s})={v}" if args.format == "records" else f"k'({s}) = {v}")
    return lines


def _cmd_genus(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        v = genus_embedded(A)
        lines.append(
            f"genus({s})={v}" if args.format == "records" else f"genus_embedded({s}) = {v}"
        )
    return lines


def _cmd_dim(args) -> list[str]:
    model = _load_manifold(args.manifold)
    g = args.genus
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        v = moduli_dimension(A, g)
        lines.append(
            f"dim({s};g={g})={v}" if args.format == "records" else f"dim({s}, g={g}) = {v}"
        )
    return lines


def _cmd_good(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        v = _bool(is_good_class(model, A))
        lines.append(f"good({s})={v}" if args.format == "records" else f"good({s}) = {v}")
    return lines


def _cmd_reduce(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        good_part, strips = reduce_multicovers(model, A)
        strip_text = ",".join(f"{format_class(E)}:{m}" for E, m in strips)
        if args.format == "records":
            lines.append(f"reduce({s}).good={format_class(good_part)}")
            lines.append(f"reduce({s}).strips={strip_text}")
        else:
            shown = strip_text if strip_text else "none"
            lines.append(f"reduce({s}) = {format_class(good_part)}; strips: {shown}")
    return lines


def _cmd_classify_neg(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        verdict = classify_negative(A)
        if args.format == "records":
            lines.append(f"classify({s})={verdict.kind}")
            if verdict.witness is not None:
                g, c, sq = verdict.witness
                lines.append(f"classify({s}).witness={g},{c},{sq}")
        else:
            text = f"classify_negative({s}) = {verdict.kind}"
            if verdict.witness is not None:
                g, c, sq = verdict.witness
                text += f" (g={g}, c1={c}, square={sq})"
            lines.append(text)
    return lines


def _cmd_cone(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        v = _bool(in_forward_cone(A, strict=args.strict))
        flag = _bool(args.strict)
        lines.append(
            f"cone({s};strict={flag})={v}"
            if args.format == "records"
            else f"in_forward_cone({s}, strict={flag}) = {v}"
        )
    return lines


def _cmd_lightcone(args) -> list[str]:
    model = _load_manifold(args.manifold)
    classes = _classes(model, args)
    if len(classes) != 2:
        raise UsageError("lightcone needs exactly two --class arguments")
    B1, B2 = classes
    rep = light_cone_pair_check(B1, B2)
    key = f"lightcone({format_class(B1)},{format_class(B2)})"
    if args.format == "records":
        return [f"{key}={'pass' if rep.ok else 'fail'}"] + _report_lines(rep, key, "records")[:-1]
    head = f"lightcone({format_class(B1)}, {format_class(B2)}): {'pass' if rep.ok else 'fail'}"
    return [head] + _report_lines(rep, key, "human")[:-1]


def _cmd_decomp(args) -> list[str]:
    model = _load_manifold(args.manifold)
    classes = _classes(model, args)
    if len(classes) != 1:
        raise UsageError("decomp takes exactly one --class")
    A = classes[0]
    s = format_class(A)
    candidates = _candidates(model, args)
    decs = enumerate_decompositions(model, A, candidates)
    lines = []
    if args.format == "records":
        lines.append(f"decomp({s}).count={len(decs)}")
        for i, dec in enumerate(decs, start=1):
            lines.append(f"decomp({s}).{i}=" + "|".join(format_class(p) for p in dec.parts))
    else:
        lines.append(f"decompositions({s}) = {len(decs)}")
        for i, dec in enumerate(decs, start=1):
            lines.append(f"  [{i}] {{" + ", ".join(format_class(p) for p in dec.parts) + "}")
    return lines


def _candidates(model: ManifoldModel, args) -> list[HClass]:
    if args.candidates:
        return [model.parse(tok) for tok in args.candidates.split(",") if tok.strip()]
    return sorted(
        set(model.gr0_table) | set(model.torus_table), key=lambda cand: cand.coords
    )


def _cmd_gr(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    candidates = _candidates(model, args)
    for A in _classes(model, args):
        s = format_class(A)
        v = gromov_via_decompositions(model, A, candidates)
        lines.append(f"gr({s})={v}" if args.format == "records" else f"Gr({s}) = {v}")
    return lines


def _cmd_gr_tori(args) -> list[str]:
    tori = _parse_tori(args.tori)
    if args.k is None:
        raise UsageError("gr-tori needs --k")
    v = gr_torus_class(tori, args.k)
    return [f"gr_tori={v}"] if args.format == "records" else [str(v)]


def _cmd_gr_s(args) -> list[str]:
    model = _load_manifold(args.manifold)
    lines = []
    for A in _classes(model, args):
        s = format_class(A)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            v = gr_s(model, A)
        lines.append(f"gr_s({s})={v}" if args.format == "records" else f"Gr_s({s}) = {v}")
        if caught:
            lines.append(
                f"gr_s({s}).warning=ambiguous-assignment"
                if args.format == "records"
                else "  warning: ambiguous point assignment among repeated components"
            )
    return lines


def _cmd_fibersum(args) -> list[str]:
    result = gr_elliptic_fiber(args.n)
    if args.format == "records":
        lines = [f"fibersum({args.n})={result.value}"]
        lines.extend(
            f"fibersum({args.n}).trace.{i}={step}"
            for i, step in enumerate(result.trace, start=1)
        )
        return lines
    lines = [f"Gr_fiber(V({args.n})) = {result.value}"]
    lines.extend(f"  {step}" for step in result.trace)
    return lines


def _cmd_verify(args) -> list[str]:
    mode = args.mode
    if mode == "kmin":
        if args.n is None:
            raise UsageError("verify --mode kmin needs --n (the elliptic parameter)")
        model = preset("elliptic", args.n)
        rep = check_kmin_constraints(model, fiber_gr_table(args.n))
        return _report_lines(rep, "verify", args.format)
    model = _load_manifold(args.manifold)
    if not args.cls:
        raise UsageError("verify needs at least one --class component (expr[:mult[:genus]])")
    comps = []
    for token in args.cls:
        expr, mult, genus = _parse_component(token)
        comps.append(Component(model.parse(expr), mult, genus))
    cfg = Configuration(tuple(comps))
    if mode == "good":
        if args.points is None:
            raise UsageError("verify --mode good needs --points")
        rep = verify_good_configuration(model, cfg, args.points)
    else:
        rep = verify_kprime_configuration(model, cfg, args.points)
    return _report_lines(rep, "verify", args.format)


def _add_model_class_args(p, classes: bool = True) -> None:
    p.add_argument("--manifold", required=True, help="preset name or model file path")
    if classes:
        p.add_argument(
            "--class",
            dest="cls",
            action="append",
            metavar="EXPR",
            help="class expression over the basis symbols (repeatable)",
        )


def build_parser() -> _Parser:
    parser = _Parser(prog="gromov4", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def new(name: str, handler: Callable, help_text: str, model: bool = True, classes: bool = True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=("human", "records"), default="human")
        if model:
            _add_model_class_args(p, classes=classes)
        return p

    new("presets", _cmd_presets, "list available preset models", model=False)
    new("k", _cmd_k, "point budget k(A)")
    new("kprime", _cmd_kprime, "corrected point budget k'(A)")
    new("genus", _cmd_genus, "adjunction genus of an embedded representative")
    p = new("dim", _cmd_dim, "moduli dimension at a given genus")
    p.add_argument("--genus", type=int, default=0)
    new("good", _cmd_good, "is the class good (no forced exceptional multi-covers)")
    new("reduce", _cmd_reduce, "strip multiply covered exceptional spheres")
    new("classify-neg", _cmd_classify_neg, "classify a negative-square class")
    p = new("cone", _cmd_cone, "forward-cone membership")
    p.add_argument("--strict", action="store_true")
    new("lightcone", _cmd_lightcone, "light-cone pairing check on two classes")
    p = new("decomp", _cmd_decomp, "enumerate decompositions of a class")
    p.add_argument("--candidates", help="comma-separated candidate class expressions")
    p = new("gr", _cmd_gr, "Gromov invariant via decompositions")
    p.add_argument("--candidates", help="comma-separated candidate class expressions")
    p = new("gr-tori", _cmd_gr_tori, "torus-list count at degree k", model=False)
    p.add_argument("--tori", required=True, help="comma-separated labels, e.g. +0,+0 or -1:2")
    p.add_argument("--k", type=int, default=None)
    new("gr-s", _cmd_gr_s, "spherical invariant Gr_s(A)")
    p = new("fibersum", _cmd_fibersum, "fiber-class count of V(n) by the ledger", model=False)
    p.add_argument("--n", type=int, required=True)
    p = new("verify", _cmd_verify, "verify a configuration or an invariant table")
    p.add_argument("--mode", choices=("good", "kprime", "kmin"), default="good")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    # verify --mode kmin builds its own preset; make --manifold optional there.
    for action in p._actions:
        if action.dest == "manifold":
            action.required = False
    return parser


def _error_record(code: str, message: str) -> None:
    msg = " ".join(str(message).split())
    print(f"error code={code} msg={msg}", file=sys.stderr)


def run(argv: list[str]) -> int:
    """Execute one invocation; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        lines = args.handler(args)
    except UsageError as exc:
        _error_record("usage", str(exc))
        return 2
    except ClassParseError as exc:
        _error_record("parse", str(exc))
        return 2
    except ModelFileError as exc:
        _error_record("model", str(exc))
        return 2
    except UnknownPresetError as exc:
        _error_record("usage", str(exc))
        return 2
    except DomainError as exc:
        _error_record("domain", str(exc))
        return 1
    except ValueError as exc:
        _error_record("usage", str(exc))
        return 2
    except SystemExit as exc:  # argparse -h/--help
        return int(exc.code or 0)
    for line in lines:
        print(line)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
