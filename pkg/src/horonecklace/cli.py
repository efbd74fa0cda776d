"""Command-line interface.

Exit codes: 0 success or pass, 1 a check failed, 2 usage or input error.
File arguments accept ``-`` for stdin; ``-o -`` writes to stdout.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

from .core import GeometryError, Tolerances, default_tolerances
from .document import ConfigDocument, DocumentError, load, save
from .family import FamilyParam, certificate_angle_sum, classify_solution, generate_family
from .moves import MoveError, improve_to_equality
from .necklace import encircles, validate_necklace
from .render import RenderOptions, render_svg
from .search import FeasibilitySpec, search_necklace
from .two_eyes import PI_3, TwoEyesConfig, alpha_beta, check_hypotheses, equality_case

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FEASIBLE_SLACK = -1e-6


class UsageError(Exception):
    pass


def fmt(v) -> str:
    """Fixed 12-decimal output; tiny nonzero magnitudes switch to 12 significant digits."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    v = float(v)
    if v != 0 and abs(v) < 1e-4:
        return f"{v:.11e}"
    s = f"{v:.12f}"
    return s[1:] if s == "-0.000000000000" else s


def _line(out, name, value):
    out.write(f"{name} = {fmt(value)}\n")


_PI_EXPR = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?$")


def parse_angle(text: str) -> float:
    """A float, or an expression like ``pi/3``, ``2pi/3``, ``0.4*pi``."""
    t = text.strip().replace("π", "pi")
    try:
        return float(t)
    except ValueError:
        pass
    m = _PI_EXPR.match(t)
    if not m:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}")
    coef = m.group(1)
    k = float(coef) if coef not in ("", "+", "-") else (-1.0 if coef == "-" else 1.0)
    div = float(m.group(2)) if m.group(2) else 1.0
    return k * math.pi / div


def _tolerances(args) -> Tolerances:
    if args.tol is not None:
        return Tolerances.uniform(args.tol)
    return default_tolerances()


def _load(path) -> ConfigDocument:
    try:
        return load(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None


def _write_text(text: str, path) -> None:
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# subcommands

def cmd_generate(args) -> int:
    p = FamilyParam(args.theta)
    n, eyes = generate_family(p)
    doc = ConfigDocument.from_config(n, eyes, label="family", theta=p.theta)
    save(doc, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    doc = _load(args.file)
    out = sys.stdout
    eyes = doc.eye_pair()
    n = doc.necklace()
    report = validate_necklace(n, tol, eyes)
    out.write(f"beads = {n.k}\n")
    _line(out, "max tie residual", report.max_tie_residual)
    _line(out, "min disjointness slack", report.min_disjointness_slack)
    _line(out, "max height excess", report.max_height_excess)
    _line(out, "min eye slack", report.min_eye_slack)
    if report.winding is not None:
        out.write(f"winding = {report.winding[0]} {report.winding[1]}\n")
    for f in report.failures:
        out.write(f"failure: {f}\n")
    ok = report.ok
    if ok:
        linked = encircles(n, eyes, tol)
        out.write(f"encircles = {fmt(linked)}\n")
        ok = linked
    if ok and n.k == 8:
        try:
            cert = certificate_angle_sum(n, eyes, tol)
        except GeometryError as exc:
            out.write(f"failure: certificate: {exc}\n")
            ok = False
        else:
            out.write(f"certificate branch = {'critical' if cert.critical else 'tangent pairs'}\n")
            for i, t in enumerate(cert.terms):
                _line(out, f"term {i}", t)
            _line(out, "certificate sum", cert.total)
            slack = 8 * tol.angle_tol
            cert_ok = (abs(cert.total - 2 * math.pi) <= max(slack, 1e-8)
                       and all(t <= PI_3 + tol.angle_tol for t in cert.terms))
            out.write(f"certificate = {fmt(cert_ok)}\n")
            ok = cert_ok
            fam = classify_solution(n, eyes, max(tol.tangency_tol, 1e-9))
            if isinstance(fam, FamilyParam):
                _line(out, "family theta", fam.theta)
    out.write(f"result = {'pass' if ok else 'fail'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _two_eyes_config(doc: ConfigDocument) -> TwoEyesConfig:
    if len(doc.beads) != 2:
        raise UsageError(f"a two-eyes document needs exactly 2 beads, got {len(doc.beads)}")
    return TwoEyesConfig(doc.eye_pair(), doc.beads[0], doc.beads[1])


def cmd_two_eyes(args) -> int:
    tol = _tolerances(args)
    cfg = _two_eyes_config(_load(args.file))
    out = sys.stdout
    hyp = check_hypotheses(cfg, tol)
    out.write(f"hypotheses = {fmt(hyp.ok)}\n")
    for f in hyp.failures:
        out.write(f"failure: {f}\n")
    if not hyp.ok:
        return EXIT_FAIL
    d = alpha_beta(cfg, tol.tangency_tol)
    _line(out, "alpha", d.alpha)
    _line(out, "beta", d.beta)
    _line(out, "alpha+beta", d.angle_sum)
    _line(out, "pi/3 - (alpha+beta)", PI_3 - d.angle_sum)
    out.write(f"equality case = {fmt(equality_case(cfg, tol.tangency_tol))}\n")
    return EXIT_OK if d.angle_sum <= PI_3 + tol.angle_tol else EXIT_FAIL


def cmd_improve(args) -> int:
    tol = _tolerances(args)
    doc = _load(args.file)
    cfg = _two_eyes_config(doc)
    out = sys.stdout
    try:
        final, trace = improve_to_equality(cfg, tol.tangency_tol)
    except MoveError as exc:
        out.write(f"failure: {exc}\n")
        return EXIT_FAIL
    for m in trace:
        out.write(f"{m.step} applied={fmt(m.applied)} reason={m.terminal_reason.value} "
                  f"before={fmt(m.angle_sum_before)} after={fmt(m.angle_sum_after)}\n")
    s = alpha_beta(final).angle_sum
    _line(out, "final alpha+beta", s)
    eq = equality_case(final, 1e-6)
    out.write(f"equality case = {fmt(eq)}\n")
    if args.output:
        save(ConfigDocument([final.eyes.c1, final.eyes.c2], [final.b1, final.b2],
                            {"label": "improved"}), args.output)
    return EXIT_OK if eq else EXIT_FAIL


def cmd_search(args) -> int:
    spec = FeasibilitySpec(args.k, args.eye_gap)
    res = search_necklace(spec, seed=args.seed, restarts=args.restarts)
    out = sys.stdout if args.output != "-" else sys.stderr
    out.write(f"k = {args.k}\n")
    out.write(f"restarts = {res.restarts}\n")
    out.write(f"seed = {res.seed}\n")
    out.write(f"best restart = {res.best_index}\n")
    _line(out, "best slack", res.best_slack)
    ok = res.best_slack >= FEASIBLE_SLACK
    out.write(f"feasible = {fmt(ok)}\n")
    n, eyes = res.best_config
    if ok and args.k == 8:
        fam = classify_solution(n, eyes, 1e-3)
        if isinstance(fam, FamilyParam):
            _line(out, "family theta", fam.theta)
        else:
            out.write("family = none\n")
    if args.output:
        save(ConfigDocument.from_config(n, eyes, label=f"search k={args.k} seed={args.seed}"), args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> int:
    doc = _load(args.file)
    opts = RenderOptions(scale=args.scale, draw_ties=not args.no_ties,
                         draw_strip=args.strip, labels=args.labels)
    _write_text(render_svg(doc, opts), args.output)
    return EXIT_OK


def cmd_schema(args) -> int:
    from .document import schema_text
    _write_text(schema_text(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horonecklace",
                                description="Horoball necklaces around two full-sized eyes.")
    p.add_argument("--tol", type=float, default=None,
                   help="tolerance for tangency, angle and disjointness checks (default: $HORONECKLACE_TOL)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="validate a necklace, check encircling and the 8-bead certificate")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("generate", help="write the rigid 8-bead family member at theta")
    s.add_argument("--theta", type=parse_angle, required=True, help="in [pi/3, 2pi/3]; accepts e.g. pi/3")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("two-eyes", help="alpha, beta and the equality verdict for a two-bead document")
    s.add_argument("file")
    s.set_defaults(func=cmd_two_eyes)

    s = sub.add_parser("search", help="multi-start feasibility search for k-bead necklaces")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--restarts", type=int, default=50)
    s.add_argument("--eye-gap", type=float, default=None, help="fixed eye distance (default: free in [1, 2])")
    s.add_argument("-o", "--output", default=None, help="write the best configuration here")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("render", help="draw a configuration as SVG")
    s.add_argument("file")
    s.add_argument("-o", "--output", default="-")
    s.add_argument("--scale", type=float, default=160.0)
    s.add_argument("--no-ties", action="store_true")
    s.add_argument("--strip", action="store_true", help="draw L, v1 and v2")
    s.add_argument("--labels", action="store_true")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("improve", help="run the improvement moves on a two-bead document")
    s.add_argument("file")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_improve)

    s = sub.add_parser("schema", help="print the JSON schema of configuration documents")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_schema)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DocumentError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
