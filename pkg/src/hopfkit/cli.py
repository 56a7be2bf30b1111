"""hopfkit command line: verify, dual, suite, orbits, cosplit."""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .based import BasedHopf, verify_based
from .families import RefError, parse_ref
from .hopf import FdHopf, bidual_check, dual, verify
from .scalars import parse_field
from .suites import CheckResult, Report, SUITES, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CONDITIONAL = 0, 1, 2, 3


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _load_json(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _is_file_ref(ref: str) -> bool:
    return ref.endswith(".json") or os.path.sep in ref or Path(ref).is_file()


def load_ref(ref: str, field=None):
    """A family/finite ref string or a structure-constant file."""
    if _is_file_ref(ref):
        obj = _load_json(Path(ref))
        try:
            return FdHopf.from_json(obj)
        except (ValueError, TypeError, KeyError) as exc:
            raise InputError(f"{ref}: invalid structure file: {exc}")
    try:
        return parse_ref(ref, field)
    except RefError as exc:
        raise InputError(str(exc))
    except (ValueError, ArithmeticError) as exc:
        raise InputError(f"{ref}: {exc}")


def _field(text: str | None):
    if text is None:
        return None
    try:
        return parse_field(text)
    except ValueError as exc:
        raise InputError(str(exc))


def _jobs(jobs: int | None) -> int:
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get("HOPFKIT_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"HOPFKIT_JOBS must be an integer, got {env!r}")
    return 1


def common(fn):
    @click.option("--degree", "-N", default=6, show_default=True, type=click.IntRange(0), help="Degree bound for families.")
    @click.option("--seed", default=0, show_default=True, type=int, help="Seed for randomized searches.")
    @click.option("--field", "field_text", default=None, help="Field override: Q, zeta<n>, gf<p>.")
    @click.option("--json", "json_path", default=None, type=click.Path(dir_okay=False), help="Write the JSON report here ('-' for stdout).")
    @click.option("--jobs", default=None, type=int, help="Concurrent checks (default: HOPFKIT_JOBS or 1).")
    @click.option("--timings", is_flag=True, help="Include per-check timings in the JSON report.")
    @functools.wraps(fn)
    def wrapper(*args, **kw):
        return fn(*args, **kw)

    return wrapper


def emit(report: Report, json_path: str | None, timings: bool) -> None:
    quiet = json_path == "-"
    if not quiet:
        for c in report.checks:
            line = f"{c.status.upper():<11} {c.name}"
            if c.witness:
                line += f"  [{c.witness}]"
            click.echo(line)
        s = report.to_json()["summary"]
        click.echo(f"{report.status}: {s['pass']} pass, {s['fail']} fail, {s['conditional']} conditional (N={report.degree})")
    if json_path:
        text = report.dumps(timings)
        if quiet:
            click.echo(text, nl=False)
        else:
            Path(json_path).write_text(text)
    sys.exit(report.exit_code)


@click.group()
@click.version_option(__version__, prog_name="hopfkit")
def main():
    """Exact checks for finite-dimensional and normal-form Hopf algebras."""


@main.command("verify")
@click.argument("ref")
@common
def cmd_verify(ref, degree, seed, field_text, json_path, jobs, timings):
    """Verify the axioms of REF (family ref or structure file)."""
    H = load_ref(ref, _field(field_text))
    if isinstance(H, BasedHopf):
        r = verify_based(H, degree)
        results = [CheckResult(k, v.status, v.witness) for k, v in r.checks.items()]
        inputs = {"ref": ref, "kind": "based", "verified_degree": r.verified_degree}
    else:
        r = verify(H)
        results = [CheckResult(k, v.status, v.witness) for k, v in r.checks.items()]
        inputs = {"ref": ref, "kind": "finite", "dim": H.dim, "method": r.method, "certificate": r.certificate,
                  "is_commutative": r.is_commutative, "is_cocommutative": r.is_cocommutative}
    emit(Report("verify", inputs, degree, seed, results), json_path, timings)


@main.command("dual")
@click.argument("ref")
@click.option("--out", "-o", default=None, type=click.Path(dir_okay=False), help="Write the dual structure file here.")
@common
def cmd_dual(ref, out, degree, seed, field_text, json_path, jobs, timings):
    """Write the dual of a finite-dimensional REF as a structure file."""
    H = load_ref(ref, _field(field_text))
    if isinstance(H, BasedHopf):
        raise InputError("finite dual of based families is handled by suites, not cmd_dual")
    D = dual(H)
    ok, wit = bidual_check(H)
    rv = verify(D)
    text = D.dumps() + "\n"
    if out:
        Path(out).write_text(text)
    elif json_path != "-":
        click.echo(text, nl=False)
    results = [
        CheckResult("dual_verify", "pass" if rv.passed else "fail", "; ".join(rv.failed()) or None),
        CheckResult("bidual_roundtrip", "pass" if ok else "fail", wit),
    ]
    report = Report("dual", {"ref": ref, "dim": H.dim}, degree, seed, results)
    if out or json_path:
        emit(report, json_path, timings)
    sys.exit(report.exit_code)


@main.command("suite", context_settings={"ignore_unknown_options": True})
@click.argument("name")
@click.argument("args", nargs=-1)
@common
def cmd_suite(name, args, degree, seed, field_text, json_path, jobs, timings):
    """Run the named check bundle (or 'all')."""
    if name != "all" and name not in SUITES:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}, all")
    try:
        report = run_suite(name, args, degree, seed, _jobs(jobs), _field(field_text))
    except RefError as exc:
        raise InputError(str(exc))
    except ValueError as exc:
        raise InputError(str(exc))
    emit(report, json_path, timings)


def _orbits_file(path: str, field, degree: int, seed: int) -> Report:
    from .orbits import CommAlgFd, action_from_json, is_H_simple, is_orbitally_semisimple, orbits

    obj = _load_json(Path(path))
    try:
        act = action_from_json(obj, field)
        A = CommAlgFd(act.space)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{path}: invalid action file: {exc}")
    lits = lambda p: [s.to_literal() for s in p.values]  # noqa: E731
    orbs = orbits(act, A.points)
    rep = is_orbitally_semisimple(act, A.points, A.complete)
    simple, sstatus = is_H_simple(act, A.points, A.complete)
    results = [
        CheckResult("points", "pass" if A.complete else "conditional",
                    None if A.complete else "character search incomplete",
                    {"count": len(A.points), "points": [lits(p) for p in A.points]}),
        CheckResult("orbits", "pass" if A.complete else "conditional", None,
                    {"orbits": [[lits(p) for p in o] for o in orbs]}),
        CheckResult("orbitally_semisimple", rep.status, None if rep.holds else "core differs from the orbit intersection",
                    {"holds": rep.holds, "per_orbit": rep.per_orbit}),
        CheckResult("H_simple", "pass" if sstatus != "conditional" else "conditional", None, {"holds": simple}),
    ]
    return Report("orbits", {"file": path, "algebra_dim": A.dim, "hopf_dim": act.K.dim}, degree, seed, results)


@main.command("orbits")
@click.argument("ref")
@common
def cmd_orbits(ref, degree, seed, field_text, json_path, jobs, timings):
    """Orbits and (OrbSemi) for an action file or a family ref."""
    F = _field(field_text)
    if _is_file_ref(ref):
        emit(_orbits_file(ref, F, degree, seed), json_path, timings)
    try:
        report = run_suite("orbits", [ref], degree, seed, _jobs(jobs), F)
    except (RefError, ValueError) as exc:
        raise InputError(str(exc))
    emit(report, json_path, timings)


@main.command("cosplit")
@click.argument("ref")
@common
def cmd_cosplit(ref, degree, seed, field_text, json_path, jobs, timings):
    """CoSplit check for a family ref."""
    try:
        report = run_suite("cosplit", [ref], degree, seed, _jobs(jobs), _field(field_text))
    except (RefError, ValueError) as exc:
        raise InputError(str(exc))
    emit(report, json_path, timings)


if __name__ == "__main__":  # pragma: no cover
    main()
