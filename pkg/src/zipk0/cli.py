"""Command-line surface: declarative job files, deterministic reports.

Commands: validate, k0, k0-torus, hecke-check, demo-counterexample.
A job is described by a JSON or TOML file plus flag overrides; reports are
emitted as JSON (schema 1) or as a text rendering of the same data.  Exit
codes: 0 ok, 2 parse error, 3 validation failure, 4 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .groebner import ResourceCapError, poly_to_string
from .invariants import (
    SimplyConnectedHypothesisError,
    steinberg_candidate_weights,
    steinberg_freeness_check,
)
from .rootdata import (
    PRESET_NAMES,
    RootDatum,
    RootDatumError,
    WeylSizeCapError,
    fundamental_group,
    make_root_datum,
    preset,
    validate,
    weyl_enumerate,
)
from .zipk import (
    CocharacterDatum,
    compute_k0,
    compute_k0_torus,
    hecke_check,
    is_prime,
    kunneth_rank_check,
    theta_map_check,
    weyl_counterexample_demo,
)

SCHEMA_VERSION = 1
VALID_CHECKS = ("kunneth", "theta", "hecke", "steinberg", "counterexample")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4


class JobParseError(ValueError):
    pass


class JobSpec:
    """Resolved job: group datum plus pipeline parameters."""

    def __init__(
        self,
        group_name: str,
        rd: RootDatum,
        mu: tuple[int, ...],
        p: int,
        checks: tuple[str, ...],
        window: Optional[int],
        fmt: str,
        out: Optional[str],
        max_degree: int,
        module: str,
        group_explicit: Optional[dict] = None,
    ):
        self.group_name = group_name
        self.rd = rd
        self.mu = mu
        self.p = p
        self.checks = checks
        self.window = window
        self.fmt = fmt
        self.out = out
        self.max_degree = max_degree
        self.module = module
        self.group_explicit = group_explicit

    def echo(self) -> dict:
        twist = self.rd.twist
        return {
            "group": self.group_explicit if self.group_explicit is not None else self.group_name,
            "mu": list(self.mu),
            "p": self.p,
            "checks": sorted(self.checks),
            "window": self.window,
            "max_degree": self.max_degree,
            "twist": [list(r) for r in twist] if twist is not None else None,
        }


def _parse_int_vector(value: Any, what: str) -> tuple[int, ...]:
    if isinstance(value, str):
        value = value.strip()
        if value.startswith("["):
            value = json.loads(value)
        else:
            value = [v for v in value.split(",") if v.strip() != ""]
    try:
        return tuple(int(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise JobParseError(f"cannot parse {what} from {value!r}") from exc


def _parse_matrix(value: Any, what: str) -> tuple[tuple[int, ...], ...]:
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as exc:
            raise JobParseError(f"cannot parse {what}: {exc}") from exc
    try:
        return tuple(tuple(int(x) for x in row) for row in value)
    except (TypeError, ValueError) as exc:
        raise JobParseError(f"cannot parse {what} from {value!r}") from exc


def _load_job_file(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise JobParseError(f"cannot read job file {path}: {exc}") from exc
    text = raw.decode("utf-8")
    if path.endswith(".toml"):
        return _parse_toml(text, path)
    if path.endswith(".json"):
        return _parse_json(text, path)
    try:
        return _parse_json(text, path)
    except JobParseError:
        return _parse_toml(text, path)


def _parse_json(text: str, path: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobParseError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise JobParseError(f"job file {path} must contain an object")
    return data


def _parse_toml(text: str, path: str) -> dict:
    try:
        import tomllib  # Python >= 3.11
    except ImportError:
        try:
            import tomli as tomllib  # type: ignore[no-redef]
        except ImportError as exc:  # pragma: no cover
            raise JobParseError("TOML support requires Python 3.11+ or tomli") from exc
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise JobParseError(f"invalid TOML in {path}: {exc}") from exc


def _build_group(spec_value: Any, twist_override: Any) -> tuple[str, RootDatum, Optional[dict]]:
    """Preset name or explicit {rank, roots, coroots, simple_roots, twist}."""
    explicit: Optional[dict] = None
    if isinstance(spec_value, str) and spec_value.strip().startswith("{"):
        spec_value = json.loads(spec_value)
    if isinstance(spec_value, dict):
        explicit = spec_value
        try:
            rank = int(spec_value["rank"])
            roots = [_parse_int_vector(r, "root") for r in spec_value.get("roots", [])]
            coroots = [_parse_int_vector(r, "coroot") for r in spec_value.get("coroots", [])]
            simples = [_parse_int_vector(r, "simple root") for r in spec_value.get("simple_roots", [])]
        except (KeyError, TypeError) as exc:
            raise JobParseError(f"explicit group is missing fields: {exc}") from exc
        twist = spec_value.get("twist")
        if twist_override is not None:
            twist = twist_override
        tw = _parse_matrix(twist, "twist") if twist is not None else None
        for vec in list(roots) + list(coroots) + list(simples):
            if len(vec) != rank:
                raise JobParseError(f"vector {list(vec)} does not have length rank={rank}")
        try:
            rd = make_root_datum(rank, roots, coroots, simples, tw, name="explicit")
        except RootDatumError as exc:
            raise JobParseError(str(exc)) from exc
        return "explicit", rd, explicit
    if not isinstance(spec_value, str):
        raise JobParseError(f"group must be a preset name or an object, got {spec_value!r}")
    name = spec_value.strip()
    try:
        rd = preset(name)
    except KeyError as exc:
        raise JobParseError(str(exc)) from exc
    if twist_override is not None:
        tw = _parse_matrix(twist_override, "twist")
        rd = RootDatum(rd.rank, rd.roots, rd.coroots, rd.simple_indices, tw, rd.name)
    return rd.name, rd, None


def load_job(args: argparse.Namespace) -> JobSpec:
    data: dict = {}
    if getattr(args, "job_file", None):
        data = _load_job_file(args.job_file)
    unknown = set(data) - {
        "group", "mu", "p", "checks", "window", "format", "out", "max_degree",
        "twist", "module", "cocharacter",
    }
    if unknown:
        raise JobParseError(f"unknown job file keys: {sorted(unknown)}")

    group_value = args.group if args.group is not None else data.get("group")
    if group_value is None:
        if getattr(args, "command", None) == "demo-counterexample":
            group_value = "SL2"  # the demo lives over the rank-one datum
        else:
            raise JobParseError("no group given (preset name or explicit datum)")
    twist_value = args.twist if getattr(args, "twist", None) is not None else data.get("twist")
    group_name, rd, explicit = _build_group(group_value, twist_value)

    mu_value = args.mu if getattr(args, "mu", None) is not None else data.get(
        "cocharacter", data.get("mu")
    )
    mu = _parse_int_vector(mu_value, "cocharacter") if mu_value is not None else (0,) * rd.rank
    if len(mu) != rd.rank:
        raise JobParseError(
            f"cocharacter {list(mu)} has length {len(mu)}, expected rank {rd.rank}"
        )

    p_value = args.p if getattr(args, "p", None) is not None else data.get("p", 2)
    try:
        p = int(p_value)
    except (TypeError, ValueError) as exc:
        raise JobParseError(f"cannot parse prime from {p_value!r}") from exc

    checks_value = args.checks if getattr(args, "checks", None) is not None else data.get("checks", [])
    if isinstance(checks_value, str):
        checks_value = [c for c in checks_value.split(",") if c.strip()]
    checks = tuple(sorted({c.strip() for c in checks_value}))
    bad = [c for c in checks if c not in VALID_CHECKS]
    if bad:
        raise JobParseError(f"unknown checks {bad}; valid: {list(VALID_CHECKS)}")

    window_value = args.window if getattr(args, "window", None) is not None else data.get("window")
    window = int(window_value) if window_value is not None else None

    fmt = args.format if getattr(args, "format", None) is not None else data.get("format", "json")
    if fmt not in ("json", "text"):
        raise JobParseError(f"format must be json or text, got {fmt!r}")

    out = args.out if getattr(args, "out", None) is not None else data.get("out")
    max_degree_value = (
        args.max_degree if getattr(args, "max_degree", None) is not None else data.get("max_degree", 60)
    )
    module = args.module if getattr(args, "module", None) is not None else data.get("module", "Z/2")
    return JobSpec(
        group_name, rd, mu, p, checks, window, fmt, out, int(max_degree_value), module, explicit
    )


# ---------------------------------------------------------------------------
# Report construction


def _vec(v) -> list:
    return [int(x) for x in v]


def _module_dict(report) -> dict:
    return {
        "finite": report.finite,
        "rank": report.rank,
        "torsion": list(report.torsion),
        "bound": report.bound,
        "standard_monomials": [list(m) for m in report.standard_monomials],
        "note": report.note,
    }


def _levi_dict(levi) -> dict:
    return {
        "roots": [_vec(r) for r in levi.levi_roots],
        "simple_roots": [_vec(r) for r in levi.levi_simple_roots],
        "weyl_order": len(levi.weyl_subgroup),
        "parabolic_nonpositive": [_vec(levi.parent.roots[i]) for i in levi.nonpositive_root_indices],
        "parabolic_nonnegative": [_vec(levi.parent.roots[i]) for i in levi.nonnegative_root_indices],
    }


def _run_checks(job: JobSpec, datum: CocharacterDatum) -> dict:
    out: dict[str, Any] = {}
    window = job.window if job.window is not None else 3
    for check in job.checks:
        if check == "kunneth":
            r = kunneth_rank_check(datum, job.max_degree)
            out["kunneth"] = {
                "status": r.status,
                "torus_rank": r.torus_rank,
                "levi_rank": r.levi_rank,
                "levi_weyl_order": r.levi_weyl_order,
            }
        elif check == "theta":
            r = theta_map_check(datum, max_degree=job.max_degree)
            out["theta"] = {
                "generator_sanity": r.generator_sanity,
                "invariant_directions": [_vec(v) for v in r.invariant_directions],
                "all_invariant_pass": r.all_invariant_pass,
                "samples": [
                    {"chi": _vec(chi), "vanishes": ok} for chi, ok in r.samples
                ],
            }
        elif check == "hecke":
            r = hecke_check(datum, window)
            out["hecke"] = {
                "window": r.window,
                "hecke_rank": r.hecke_rank,
                "weyl_rank": r.weyl_rank,
                "orbit_span_rank": r.orbit_span_rank,
                "all_equal": r.all_equal,
            }
        elif check == "steinberg":
            weyl = weyl_enumerate(datum.rd)
            cands = steinberg_candidate_weights(datum.rd, weyl)
            r = steinberg_freeness_check(datum.rd, cands, weyl, spanning_radius=1)
            out["steinberg"] = {
                "candidates": [_vec(c) for c in r.candidates],
                "independent": r.independent,
                "spanning_ok": r.spanning_ok,
                "note": r.note,
            }
        elif check == "counterexample":
            r = weyl_counterexample_demo(job.module)
            out["counterexample"] = _counterexample_dict(r)
    return out


def _counterexample_dict(r) -> dict:
    verdict = (
        f"invariants {r.invariant_structure} strictly contain image {r.module}"
        if r.strictly_larger
        else "no excess invariants"
    )
    return {
        "module": r.module,
        "image_order": r.image_order,
        "invariant_order": r.invariant_order,
        "invariant_structure": r.invariant_structure,
        "strictly_larger": r.strictly_larger,
        "verdict": verdict,
    }


def cmd_validate(job: JobSpec) -> dict:
    validate(job.rd)
    inv = fundamental_group(job.rd)
    torsion = [d for d in inv if d > 1]
    if torsion:
        raise SimplyConnectedHypothesisError(inv)
    if not is_prime(job.p):
        raise RootDatumError("invalid-prime", f"p = {job.p} is not prime")
    return {
        "schema": SCHEMA_VERSION,
        "command": "validate",
        "job": job.echo(),
        "valid": True,
        "fundamental_group": inv,
        "derived_simply_connected": True,
    }


def cmd_k0(job: JobSpec) -> dict:
    validate(job.rd)
    datum = CocharacterDatum(job.rd, job.mu, job.p, job.rd.twist)
    kz = compute_k0(datum, job.max_degree)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "k0",
        "job": job.echo(),
        "levi": _levi_dict(kz.levi),
        "presentation": {
            "variables": list(kz.variables),
            "generator_weights": [_vec(w) for w in kz.generator_weights],
            "relations": kz.relation_strings(),
            "syzygy_relations": [poly_to_string(r, kz.ring_spec) for r in kz.syzygy_relations],
            "frobenius_relations": [poly_to_string(r, kz.ring_spec) for r in kz.frobenius_relations],
        },
        "groebner": {
            "variables": list(kz.ring_spec.names),
            "basis": kz.groebner.to_strings(),
        },
        "module": _module_dict(kz.module_report),
        "flags": {
            "experimental_twist": kz.experimental_twist,
            "one_nonzero": kz.one_nonzero,
        },
        "checks": _run_checks(job, datum),
    }
    return report


def cmd_k0_torus(job: JobSpec) -> dict:
    validate(job.rd)
    datum = CocharacterDatum(job.rd, job.mu, job.p, job.rd.twist)
    gb, module_report = compute_k0_torus(datum, job.max_degree)
    return {
        "schema": SCHEMA_VERSION,
        "command": "k0-torus",
        "job": job.echo(),
        "groebner": {
            "variables": list(gb.spec.names),
            "basis": gb.to_strings(),
        },
        "module": _module_dict(module_report),
        "flags": {"experimental_twist": datum.twist is not None},
    }


def cmd_hecke_check(job: JobSpec) -> dict:
    validate(job.rd)
    datum = CocharacterDatum(job.rd, job.mu, job.p, job.rd.twist)
    window = job.window if job.window is not None else 3
    r = hecke_check(datum, window)
    return {
        "schema": SCHEMA_VERSION,
        "command": "hecke-check",
        "job": job.echo(),
        "hecke": {
            "window": r.window,
            "hecke_rank": r.hecke_rank,
            "weyl_rank": r.weyl_rank,
            "orbit_span_rank": r.orbit_span_rank,
            "all_equal": r.all_equal,
        },
    }


def cmd_demo_counterexample(job: JobSpec) -> dict:
    r = weyl_counterexample_demo(job.module)
    return {
        "schema": SCHEMA_VERSION,
        "command": "demo-counterexample",
        "module": r.module,
        "counterexample": _counterexample_dict(r),
    }


# ---------------------------------------------------------------------------
# Rendering


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report: dict) -> str:
    lines: list[str] = []

    def walk(value, prefix: str):
        if isinstance(value, dict):
            for k in sorted(value):
                v = value[k]
                if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                    lines.append(f"{prefix}{k}:")
                    walk(v, prefix + "  ")
                else:
                    lines.append(f"{prefix}{k}: {_flat(v)}")
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (dict, list)) and item and not _is_flat_list(item):
                    lines.append(f"{prefix}-")
                    walk(item, prefix + "  ")
                else:
                    lines.append(f"{prefix}- {_flat(item)}")

    def _is_flat_list(v):
        return isinstance(v, list) and all(
            not isinstance(x, (dict, list)) or x == [] for x in v
        )

    def _flat(v):
        if isinstance(v, list):
            return "[" + ", ".join(str(_flat(x)) for x in v) + "]"
        if v is None:
            return "null"
        if isinstance(v, bool):
            return "true" if v else "false"
        return str(v)

    walk(report, "")
    return "\n".join(lines) + "\n"


def emit(report: dict, job: JobSpec) -> None:
    text = render_json(report) if job.fmt == "json" else render_text(report)
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zipk0",
        description=(
            "Exact presentations of the Grothendieck ring of a stack of G-zips: "
            "R(L)/IR(L) from a root datum, cocharacter and prime."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("validate", "check the root datum axioms and the simply-connectedness gate"),
        ("k0", "compute the presentation of R(L)/IR(L) with optional cross-checks"),
        ("k0-torus", "compute the torus-side quotient R(T)/IR(T)"),
        ("hecke-check", "compare Hecke, Weyl and orbit-span invariants in a window"),
        ("demo-counterexample", "torsion-module demo: Weyl invariants exceed the image"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("job_file", nargs="?", help="JSON or TOML job description")
        p.add_argument("--group", help=f"preset ({', '.join(PRESET_NAMES)}) or inline JSON datum")
        p.add_argument("--mu", help="cocharacter, e.g. 1,0 or [1,0]")
        p.add_argument("--p", help="prime")
        p.add_argument("--checks", help=f"comma list from {','.join(VALID_CHECKS)}")
        p.add_argument("--window", help="exponent box radius for windowed checks")
        p.add_argument("--format", choices=("json", "text"), help="report format (default json)")
        p.add_argument("--out", help="write the report to this path instead of stdout")
        p.add_argument("--max-degree", dest="max_degree", help="Groebner degree cap (default 60)")
        p.add_argument("--twist", help="finite-order unimodular matrix as JSON rows")
        p.add_argument("--module", help="module for the counterexample demo (Z or Z/<m>)")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "k0": cmd_k0,
    "k0-torus": cmd_k0_torus,
    "hecke-check": cmd_hecke_check,
    "demo-counterexample": cmd_demo_counterexample,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        job = load_job(args)
    except JobParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = COMMANDS[args.command](job)
    except (RootDatumError, SimplyConnectedHypothesisError, WeylSizeCapError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceCapError as exc:
        partial = {
            "schema": SCHEMA_VERSION,
            "command": args.command,
            "job": job.echo(),
            "error": "resource-cap",
            "detail": str(exc),
            "note": "partial report: computation aborted at the configured cap",
        }
        emit(partial, job)
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    emit(report, job)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
