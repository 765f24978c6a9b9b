"""Command-line front end.

All inputs and outputs are JSON.  Document arguments accept a file path, ``-``
for standard input, or an inline JSON object.

Exit codes: 0 success, 1 property failure (``verify``), 2 usage, parse or
configuration error, 3 violated mathematical precondition.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import aut, dh, hodge, jsonio, verify
from .errors import MathError
from .jsonio import ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3
TOL_ENV = "DH_MODULI_TOL"
DEFAULT_TOL = 1e-9
DEFAULT_TRIALS = 1000
MAX_TRIALS = 10**6


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    surface_file: str | None
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    tolerance: float = DEFAULT_TOL
    out: str = "-"

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 1 <= self.trials <= MAX_TRIALS:
            raise ConfigError(f"trials must lie in [1, {MAX_TRIALS}], got {self.trials}")
        if not 0 < self.tolerance < 1e-3:
            raise ConfigError(f"tolerance must lie in (0, 1e-3), got {self.tolerance}")


def _read_document(arg: str):
    if arg.lstrip().startswith(("{", "[")):
        text = arg
    elif arg == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {arg}: {exc.strerror}") from None
    return jsonio.loads(text)


def _load_surface(config: RunConfig, required: bool = True):
    if config.surface_file is None:
        if required:
            raise ConfigError("--surface is required for this command")
        return None
    return jsonio.surface_from_json(_read_document(config.surface_file))


def _check_genus(surface, *objs):
    for obj in objs:
        if surface is not None and obj.g != surface.g:
            raise ParseError(f"input has genus {obj.g} but the surface has genus {surface.g}")


def _load_point(arg, surface=None):
    p = jsonio.point_from_json(_read_document(arg))
    _check_genus(surface, p)
    return p


def _load_element(arg, surface=None):
    el = jsonio.element_from_json(_read_document(arg))
    if isinstance(el, aut.GammaElement):
        if surface is not None and el.M is not None and el.M.shape[0] != 2 * surface.g:
            raise ParseError("matrix size does not match the genus")
    else:
        _check_genus(surface, el)
    return el


# -- commands ----------------------------------------------------------------


def cmd_normal_form(config: RunConfig, args):
    surface = _load_surface(config)
    return jsonio.point_to_json(hodge.normal_form(surface, _load_point(args.point, surface))), EXIT_OK


def cmd_glue(config: RunConfig, args):
    surface = _load_surface(config, required=False)
    return jsonio.point_to_json(dh.glue(_load_point(args.point, surface))), EXIT_OK


def cmd_monodromy(config: RunConfig, args):
    surface = _load_surface(config)
    rho = hodge.monodromy(surface, _load_point(args.point, surface))
    return {"rho": jsonio.vector_to_json(rho)}, EXIT_OK


def cmd_section_eval(config: RunConfig, args):
    surface = _load_surface(config, required=False)
    section = jsonio.section_from_json(_read_document(args.section))
    _check_genus(surface, section)
    z = jsonio.cp1_from_json(args.z if args.z == "inf" else jsonio.loads(args.z))
    return jsonio.point_to_json(dh.eval_section(section, z)), EXIT_OK


def cmd_section_fit(config: RunConfig, args):
    surface = _load_surface(config)
    p1, p2 = _load_point(args.point1, surface), _load_point(args.point2, surface)
    return jsonio.section_to_json(dh.fit_section(surface, p1, p2)), EXIT_OK


def cmd_aut_compose(config: RunConfig, args):
    surface = _load_surface(config, required=False)
    a, b = _load_element(args.first, surface), _load_element(args.second, surface)
    if isinstance(a, aut.Aut0Element) and isinstance(b, aut.Aut0Element):
        return jsonio.element_to_json(a.compose(b, surface)), EXIT_OK
    if isinstance(a, aut.HodgeAutElement) and isinstance(b, aut.HodgeAutElement):
        return jsonio.element_to_json(a.compose(b, surface)), EXIT_OK
    raise ConfigError("composition is defined for two aut0 or two hodge elements")


def cmd_aut_apply(config: RunConfig, args):
    surface = _load_surface(config, required=False)
    el = _load_element(args.element, surface)
    p = _load_point(args.point, surface)
    if isinstance(el, aut.GammaElement):
        if surface is None and el.kind != "duality":
            raise ConfigError("--surface is required for lattice elements")
        return jsonio.point_to_json(el.apply(surface, p)), EXIT_OK
    return jsonio.point_to_json(el.apply(p)), EXIT_OK


def cmd_verify(config: RunConfig, args):
    surface = _load_surface(config)
    names = None
    if args.only:
        unknown = sorted(set(args.only) - set(verify.PROPERTIES))
        if unknown:
            raise ConfigError(f"unknown properties: {', '.join(unknown)}")
        names = args.only
    results = verify.run_suite(surface, config.seed, config.trials, config.tolerance, names)
    rep = verify.report(surface, config.seed, config.trials, config.tolerance, results)
    return rep, EXIT_OK if rep["passed"] else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def _u64(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", help="period matrix JSON file")
    common.add_argument("--seed", type=_u64, default=0, help="unsigned 64-bit seed (default 0)")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="trials per property (default 1000)")
    common.add_argument("--tol", type=float, default=None, help=f"tolerance (default 1e-9, or ${TOL_ENV})")
    common.add_argument("--out", default="-", help="output file, '-' for stdout")

    parser = argparse.ArgumentParser(prog="dh-moduli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(handler=fn)
        return sp

    add("normal-form", cmd_normal_form, "gauge normal form of a point").add_argument("point")
    add("glue", cmd_glue, "move a point to the other chart").add_argument("point")
    add("monodromy", cmd_monodromy, "monodromy character of D/lambda").add_argument("point")
    sp = add("section-eval", cmd_section_eval, "evaluate a twistor line")
    sp.add_argument("section")
    sp.add_argument("--z", required=True, help="point of CP^1: '[re, im]' or 'inf'")
    sp = add("section-fit", cmd_section_fit, "twistor line through two points")
    sp.add_argument("point1")
    sp.add_argument("point2")
    sp = add("aut-compose", cmd_aut_compose, "compose two automorphisms (first after second)")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = add("aut-apply", cmd_aut_apply, "apply an automorphism to a point")
    sp.add_argument("element")
    sp.add_argument("point")
    sp = add("verify", cmd_verify, "run the seeded property suite")
    sp.add_argument("--only", nargs="+", metavar="PROPERTY", help="restrict to these properties")
    return parser


def _resolve_tolerance(flag: float | None) -> float:
    if flag is not None:
        return flag
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise ConfigError(f"{TOL_ENV} is not a number: {env!r}") from None
    return DEFAULT_TOL


def _write(out: str, doc) -> None:
    text = jsonio.dumps(doc)
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(args.surface, args.seed, args.trials, _resolve_tolerance(args.tol), args.out)
        doc, code = args.handler(config, args)
        _write(config.out, doc)
        return code
    except (ParseError, ConfigError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
