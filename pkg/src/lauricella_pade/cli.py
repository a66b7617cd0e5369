"""Command line front end: validate, build, measure, scan, eval.

Settings are taken from, in increasing priority: built-in defaults, the
instance file, environment variables ``LAURICELLA_PADE_<FLAG>`` (for example
``LAURICELLA_PADE_N_MAX=5``) and command line flags.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from .determinant import certify_range, check_hypotheses
from .evaluator import ConvergenceError, TruncationError, eval_arch, eval_padic, linear_form_scan
from .exact.rational import format_rational
from .heights import INF, LogLinear, Place, V_v, measure
from .io import InstanceFileError, dumps, instance_to_toml, load_instance, parse_epsilon, write_text
from .pade import build_system, required_truncation
from .solutions import build_family, default_truncation

ENV_PREFIX = "LAURICELLA_PADE_"

DEFAULTS: dict[str, Any] = {
    "n_max": 10,
    "beta": None,
    "place": INF,
    "epsilon": ("V", Fraction(1, 2)),
    "H_max": 10,
    "precision": 256,
    "T": None,
    "out_dir": None,
}

# flag name -> (settings key, parser for string values)
FLAGS = {
    "n-max": ("n_max", int),
    "beta": ("beta", Fraction),
    "place": ("place", Place.parse),
    "epsilon": ("epsilon", parse_epsilon),
    "h-max": ("H_max", int),
    "precision": ("precision", int),
    "truncation": ("T", int),
    "out-dir": ("out_dir", str),
}


class UsageError(ValueError):
    pass


def _parse_value(flag: str, text: str):
    key, conv = FLAGS[flag]
    try:
        val = conv(text)
    except (ValueError, ZeroDivisionError, InstanceFileError) as exc:
        raise UsageError(f"--{flag}: cannot parse {text!r} ({exc})") from None
    if key in ("n_max", "H_max", "precision", "T") and val < 0:
        raise UsageError(f"--{flag} must be non-negative")
    return val


def resolve_settings(file_options: dict, args: argparse.Namespace, environ=None) -> dict:
    environ = os.environ if environ is None else environ
    settings = dict(DEFAULTS)
    settings.update(file_options)
    for flag, (key, _) in FLAGS.items():
        env = ENV_PREFIX + flag.upper().replace("-", "_")
        if env in environ:
            settings[key] = _parse_value(flag, environ[env])
    for flag, (key, _) in FLAGS.items():
        text = getattr(args, flag.replace("-", "_"), None)
        if text is not None:
            settings[key] = _parse_value(flag, text)
    return settings


def _epsilon(setting, inst, beta, place):
    if isinstance(setting, tuple):
        return V_v(inst, beta, place) * setting[1]
    return LogLinear.const_(setting)


def _need_beta(settings: dict) -> Fraction:
    if settings["beta"] is None:
        raise UsageError("beta is required (instance file field 'beta' or --beta)")
    return settings["beta"]


# -- commands ----------------------------------------------------------------------


def cmd_validate(inst_file, settings, out) -> int:
    inst = inst_file.instance
    rep = check_hypotheses(inst, max(1, settings["n_max"]))
    doc = {"instance": inst.to_dict(), "instance_hash": inst.fingerprint(), "hypotheses": rep.to_dict()}
    text = dumps(doc)
    write_text(settings["out_dir"], "validate.json", text)
    write_text(settings["out_dir"], "instance.toml", instance_to_toml(inst))
    out.write(text)
    return 0 if rep.passed else 1


def cmd_build(inst_file, settings, out) -> int:
    inst = inst_file.instance
    n_max = settings["n_max"]
    T = max(settings["T"] or default_truncation(inst.m, n_max), required_truncation(inst, n_max))
    bundle = certify_range(inst, n_max, T)
    fam = build_family(inst, T)
    for n in range(n_max + 1):
        write_text(settings["out_dir"], f"pade_n{n:03d}.json", build_system(fam, n).to_json() + "\n")
    write_text(settings["out_dir"], "series.json", fam.to_json() + "\n")
    text = bundle.to_json() + "\n"
    write_text(settings["out_dir"], "certificates.json", text)
    out.write(text)
    return 0 if bundle.all_certified else 1


def cmd_measure(inst_file, settings, out) -> int:
    inst = inst_file.instance
    beta = _need_beta(settings)
    place = settings["place"]
    eps = _epsilon(settings["epsilon"], inst, beta, place)
    rep = measure(inst, beta, place, eps, prec=max(64, settings["precision"]))
    text = rep.to_json() + "\n"
    write_text(settings["out_dir"], "measure.json", text)
    out.write(text)
    return 0 if rep.applicable else 1


def cmd_scan(inst_file, settings, out) -> int:
    inst = inst_file.instance
    beta = _need_beta(settings)
    place = settings["place"]
    H_max = settings["H_max"]
    eps = _epsilon(settings["epsilon"], inst, beta, place)
    rep = measure(inst, beta, place, eps, prec=settings["precision"])
    T = settings["T"] or max(200, default_truncation(inst.m, 10))
    fam = build_family(inst, T)
    scan = linear_form_scan(fam, beta, place, eps, H_max, settings["precision"], report=rep)
    csv_text = scan.to_csv()
    write_text(settings["out_dir"], "scan.csv", csv_text)
    write_text(settings["out_dir"], "scan_summary.json", dumps(scan.to_dict()))
    out.write(csv_text if settings["out_dir"] is None else dumps(scan.to_dict()))
    return 0 if not scan.violations else 1


def cmd_eval(inst_file, settings, out) -> int:
    inst = inst_file.instance
    beta = _need_beta(settings)
    place = settings["place"]
    prec = settings["precision"]
    T = settings["T"] or max(200, default_truncation(inst.m, 10))
    fam = build_family(inst, T)
    values = []
    for j in range(inst.w + 1):
        if place.archimedean:
            x = eval_arch(fam, j, beta, prec)
            lo, hi = x.to_strings(max(20, prec * 3 // 10))
            values.append({"j": j, "lower": lo, "upper": hi})
        else:
            N = max(8, prec // 8)
            x = eval_padic(fam, j, beta, place.p, N)
            values.append(
                {"j": j, "p": place.p, "unit": str(x.unit), "valuation": x.valuation, "relative_precision": x.N}
            )
    doc = {"instance_hash": inst.fingerprint(), "beta": format_rational(beta), "place": str(place), "values": values}
    text = dumps(doc)
    write_text(settings["out_dir"], "eval.json", text)
    out.write(text)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "build": cmd_build,
    "measure": cmd_measure,
    "scan": cmd_scan,
    "eval": cmd_eval,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lauricella-pade", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", help="instance file (TOML)")
        for flag in FLAGS:
            p.add_argument(f"--{flag}", default=None)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None, environ=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = make_parser().parse_args(argv)
    try:
        inst_file = load_instance(args.file)
        settings = resolve_settings(inst_file.options, args, environ)
        return COMMANDS[args.command](inst_file, settings, out)
    except InstanceFileError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (UsageError, ConvergenceError, TruncationError, ValueError) as exc:
        err.write(f"error ({args.command}): {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
