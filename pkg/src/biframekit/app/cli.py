"""Command-line interface.

Five subcommands over manifest files: ``bounds`` (optimal bound report),
``verify`` (check a claimed pair), ``construct`` (apply a construction rule
and certify the result), ``tensor`` (combine two manifests), and ``demo``
(run a bundled reference system against its claim).

Exit codes follow one contract everywhere: 0 when the requested property
verified, 1 when verification failed (a witness is printed where one
exists), 2 for usage, parse, or validation problems.  Text reports print
numbers with 12 significant digits; ``--format json`` emits the same report
as a machine-readable object at full precision.
"""

from __future__ import annotations

import json
from pathlib import Path

import click
import numpy as np

from .. import linalg
from ..biframe import (
    biframe_form,
    check_bounds,
    frame_operator,
    optimal_bounds,
)
from ..errors import BiframeError, MalformedBoundsError, ManifestError
from ..opcalc import (
    apply_operator,
    canonical_dual,
    combine_product,
    combine_sum,
    commuting_transform,
    perturb_positive,
    sandwich,
)
from ..tensor import factor_bounds_check, kron, tensor_system
from . import manifest
from .fixtures import fixture_names, fixture_record

_DOMINANCE_SLACK = 1e-8


def _num(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, float) and np.isinf(x):
        return "inf"
    return f"{x:.12g}"


def _scalar_repr(z) -> str:
    if np.iscomplexobj(np.asarray(z)):
        z = complex(z)
        sign = "+" if z.imag >= 0 else "-"
        return f"{z.real:.12g}{sign}{abs(z.imag):.12g}i"
    return _num(float(np.real(z)))


def _vec(v) -> str:
    if v is None:
        return "none"
    return "[" + ", ".join(_scalar_repr(z) for z in np.asarray(v)) + "]"


def _vec_json(v):
    if v is None:
        return None
    arr = np.asarray(v)
    if np.iscomplexobj(arr):
        return [[float(z.real), float(z.imag)] for z in arr]
    return [float(z) for z in arr]


def _emit(ctx: click.Context, payload: dict, lines: list[str]) -> None:
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def _load(path: str) -> manifest.ManifestRecord:
    try:
        return manifest.load(path)
    except ManifestError as exc:
        raise click.UsageError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise click.UsageError(str(exc)) from exc


def _read_matrix(value: str, dim: int, complex_field: bool, what: str) -> np.ndarray:
    """Parse an operator option: inline JSON rows, or a path to such JSON."""
    text = value
    candidate = Path(value)
    try:
        if candidate.exists() and candidate.is_file():
            text = candidate.read_text(encoding="utf-8")
    except OSError:
        pass
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{what}: not valid JSON ({exc.msg})") from exc
    try:
        return manifest._parse_matrix(rows, dim, dim, complex_field, what)
    except ManifestError as exc:
        raise click.UsageError(str(exc)) from exc


@click.group()
@click.option("--tol", type=float, default=linalg.DEFAULT_TOL, show_default=True,
              help="Relative tolerance for all verification decisions.")
@click.option("--quad-nodes", type=int, default=8, show_default=True,
              help="Quadrature resolution for quadrature-built demo systems.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True, help="Report style on stdout.")
@click.pass_context
def main(ctx: click.Context, tol: float, quad_nodes: int, fmt: str) -> None:
    """Bound analysis and constructions for sampled biframe systems."""
    ctx.obj = {"tol": tol, "quad_nodes": quad_nodes, "format": fmt}


@main.command()
@click.argument("file", type=click.Path())
@click.pass_context
def bounds(ctx: click.Context, file: str) -> None:
    """Print the optimal bound report for a manifest; exit 0 iff valid."""
    record = _load(file)
    report = optimal_bounds(record.system, tol=ctx.obj["tol"])
    payload = {
        "file": file,
        "label": record.label,
        "dim": record.system.dim,
        "field": record.system.field_name,
        "lower": report.lower_opt,
        "upper": report.upper_opt,
        "valid": report.valid,
        "degenerate": report.degenerate,
        "asymmetry": report.asymmetry,
        "witness": _vec_json(report.witness_lower),
        "negative_form_witness": _vec_json(report.witness_negative_form),
    }
    lines = [
        f"system: {record.label or file} "
        f"(dim {record.system.dim}, {record.system.field_name}, "
        f"{len(record.system.measure)} nodes)",
        f"optimal lower: {_num(report.lower_opt)}",
        f"optimal upper: {_num(report.upper_opt)}",
        f"valid: {'yes' if report.valid else 'no'}",
        f"asymmetry: {_num(report.asymmetry)}",
    ]
    if report.witness_lower is not None:
        lines.append(f"lower witness: {_vec(report.witness_lower)}")
    if report.witness_negative_form is not None:
        lines.append(f"negative-form witness: {_vec(report.witness_negative_form)}")
    _emit(ctx, payload, lines)
    ctx.exit(0 if report.valid else 1)


@main.command()
@click.argument("file", type=click.Path())
@click.option("--lower", type=float, default=None,
              help="Claimed lower constant (defaults to the manifest's claim).")
@click.option("--upper", type=float, default=None,
              help="Claimed upper constant (defaults to the manifest's claim).")
@click.pass_context
def verify(ctx: click.Context, file: str, lower: float | None, upper: float | None) -> None:
    """Check a claimed bound pair against a manifest; exit 0 iff it holds."""
    record = _load(file)
    if lower is None or upper is None:
        if record.claimed_bounds is None:
            raise click.UsageError(
                "no bounds given and the manifest carries no claimed_bounds"
            )
        lower = lower if lower is not None else record.claimed_bounds[0]
        upper = upper if upper is not None else record.claimed_bounds[1]
    try:
        outcome = check_bounds(record.system, lower, upper, tol=ctx.obj["tol"])
    except MalformedBoundsError as exc:
        raise click.UsageError(str(exc)) from exc
    payload = {
        "file": file,
        "lower": lower,
        "upper": upper,
        "ok": outcome.ok,
        "lower_ok": outcome.lower_ok,
        "upper_ok": outcome.upper_ok,
        "lower_margin": outcome.lower_margin,
        "upper_margin": outcome.upper_margin,
        "witness": _vec_json(outcome.witness),
    }
    lines = [
        f"claim: lower {_num(lower)}, upper {_num(upper)}",
        f"lower holds: {'yes' if outcome.lower_ok else 'no'} "
        f"(margin {_num(outcome.lower_margin)})",
        f"upper holds: {'yes' if outcome.upper_ok else 'no'} "
        f"(margin {_num(outcome.upper_margin)})",
        f"verdict: {'verified' if outcome.ok else 'REFUTED'}",
    ]
    if outcome.witness is not None:
        lines.append(f"witness: {_vec(outcome.witness)}")
    _emit(ctx, payload, lines)
    ctx.exit(0 if outcome.ok else 1)


_OPS_NEEDING_OPERATOR = {"apply", "dual", "sandwich", "perturb", "product", "commute"}


@main.command()
@click.argument("file", type=click.Path())
@click.option("--op", "op_name", required=True,
              type=click.Choice(["apply", "dual", "sandwich", "perturb",
                                 "sum", "product", "commute"]),
              help="Construction rule to apply.")
@click.option("--operator", "operator_text", default=None,
              help="Operator matrix as JSON rows (inline, or a path to a JSON "
                   "file).  For --op dual and --op product this is the new / "
                   "right target.")
@click.option("--power", type=int, default=1, show_default=True,
              help="Perturbation power (only with --op perturb).")
@click.option("--term", "terms_text", multiple=True,
              help='Sum term as JSON {"coeff": c, "target": rows}; repeatable '
                   "(only with --op sum).")
@click.option("-o", "--output", type=click.Path(), default=None,
              help="Write the constructed system's manifest here.")
@click.pass_context
def construct(ctx: click.Context, file: str, op_name: str, operator_text: str | None,
              power: int, terms_text: tuple[str, ...], output: str | None) -> None:
    """Apply a construction rule and certify the result's bounds.

    Exits 0 when the recomputed optimal bounds dominate the rule's
    guaranteed bounds, 1 when they do not (or a precondition fails).
    """
    record = _load(file)
    system = record.system
    tol = ctx.obj["tol"]
    complex_field = system.field_name == "complex"

    if op_name in _OPS_NEEDING_OPERATOR and operator_text is None:
        raise click.UsageError(f"--op {op_name} needs --operator")
    if op_name == "sum" and not terms_text:
        raise click.UsageError("--op sum needs at least one --term")

    try:
        if op_name == "sum":
            terms = []
            for raw in terms_text:
                try:
                    obj = json.loads(raw)
                except json.JSONDecodeError as exc:
                    raise click.UsageError(f"--term: not valid JSON ({exc.msg})") from exc
                if not isinstance(obj, dict) or "coeff" not in obj or "target" not in obj:
                    raise click.UsageError('--term needs {"coeff": ..., "target": ...}')
                coeff = manifest._parse_scalar(obj["coeff"], complex_field, "coeff")
                target = manifest._parse_matrix(obj["target"], system.dim, system.dim,
                                                complex_field, "target")
                terms.append((coeff, target))
            result = combine_sum(system, terms, tol=tol)
        else:
            mat = _read_matrix(operator_text, system.dim, complex_field, "--operator")
            if op_name == "apply":
                result = apply_operator(system, mat, tol=tol)
            elif op_name == "dual":
                result = canonical_dual(system, mat, tol=tol)
            elif op_name == "sandwich":
                result = sandwich(system, mat, tol=tol)
            elif op_name == "perturb":
                result = perturb_positive(system, mat, power, tol=tol)
            elif op_name == "product":
                result = combine_product(system, mat, tol=tol)
            else:
                result = commuting_transform(system, mat, tol=tol)
    except ManifestError as exc:
        raise click.UsageError(str(exc)) from exc
    except BiframeError as exc:
        click.echo(f"construction failed: {exc}", err=True)
        ctx.exit(1)

    after = optimal_bounds(result.system, tol=tol)
    lower_ok = (
        result.guaranteed_lower is None
        or (after.lower_opt is not None
            and after.lower_opt >= result.guaranteed_lower - _DOMINANCE_SLACK)
    )
    upper_ok = after.upper_opt <= result.guaranteed_upper + _DOMINANCE_SLACK
    dominated = lower_ok and upper_ok

    if output is not None:
        claim = None
        gl, gu = result.guaranteed_lower, result.guaranteed_upper
        if gl is not None and np.isfinite(gl) and np.isfinite(gu) and 0 < gl <= gu:
            claim = (gl, gu)
        manifest.save(result.system, output, claimed_bounds=claim,
                      label=f"{record.label or file} [{result.rule}]")

    payload = {
        "rule": result.rule,
        "certified": result.certified,
        "guaranteed_lower": result.guaranteed_lower,
        "guaranteed_upper": result.guaranteed_upper,
        "optimal_lower": after.lower_opt,
        "optimal_upper": after.upper_opt,
        "valid": after.valid,
        "dominated": dominated,
        "output": output,
    }
    lines = [
        f"rule: {result.rule} ({'certified' if result.certified else 'stated claim'})",
        f"guaranteed lower: {_num(result.guaranteed_lower)}",
        f"guaranteed upper: {_num(result.guaranteed_upper)}",
        f"optimal lower: {_num(after.lower_opt)}",
        f"optimal upper: {_num(after.upper_opt)}",
        f"dominance: {'ok' if dominated else 'VIOLATED'}",
    ]
    if output is not None:
        lines.append(f"wrote: {output}")
    _emit(ctx, payload, lines)
    ctx.exit(0 if dominated else 1)


@main.command()
@click.argument("left", type=click.Path())
@click.argument("right", type=click.Path())
@click.option("-o", "--output", type=click.Path(), required=True,
              help="Where to write the combined manifest.")
@click.pass_context
def tensor(ctx: click.Context, left: str, right: str, output: str) -> None:
    """Combine two manifests on the product space; exit 0 iff bounds multiply."""
    tol = ctx.obj["tol"]
    left_rec, right_rec = _load(left), _load(right)
    ts = tensor_system(left_rec.system, right_rec.system)

    s_left = frame_operator(ts.left)
    s_right = frame_operator(ts.right)
    s_comb = frame_operator(ts.combined)
    kron_gap = float(np.linalg.norm(s_comb - kron(s_left, s_right)))
    kron_gap /= max(1.0, float(np.linalg.norm(s_comb)))

    try:
        law_ok = factor_bounds_check(ts, tol=tol)
    except BiframeError as exc:
        click.echo(f"tensor check failed: {exc}", err=True)
        ctx.exit(1)

    lb, rb, cb = (optimal_bounds(s, tol=tol) for s in (ts.left, ts.right, ts.combined))
    manifest.save(ts.combined, output,
                  label=f"tensor of {left_rec.label or left} and {right_rec.label or right}")
    payload = {
        "left": {"lower": lb.lower_opt, "upper": lb.upper_opt},
        "right": {"lower": rb.lower_opt, "upper": rb.upper_opt},
        "combined": {"lower": cb.lower_opt, "upper": cb.upper_opt},
        "frame_operator_relative_gap": kron_gap,
        "product_law": law_ok,
        "output": output,
    }
    lines = [
        f"left optimal: ({_num(lb.lower_opt)}, {_num(lb.upper_opt)})",
        f"right optimal: ({_num(rb.lower_opt)}, {_num(rb.upper_opt)})",
        f"combined optimal: ({_num(cb.lower_opt)}, {_num(cb.upper_opt)})",
        f"frame operator gap (relative): {_num(kron_gap)}",
        f"product law: {'ok' if law_ok else 'VIOLATED'}",
        f"wrote: {output}",
    ]
    _emit(ctx, payload, lines)
    ctx.exit(0 if law_ok else 1)


@main.command()
@click.argument("name")
@click.pass_context
def demo(ctx: click.Context, name: str) -> None:
    """Run a bundled reference system against its claimed bounds.

    NAME is one of the bundled fixtures, or "example-5-3" for the tensor
    combination of its two factors.  Exits 0 when the claim verifies, 1 when
    it is refuted (printing the witness and the form value there).
    """
    tol = ctx.obj["tol"]
    known = fixture_names() + ("example-5-3",)
    if name not in known:
        raise click.UsageError(f"unknown demo {name!r} (known: {', '.join(known)})")

    if name == "example-5-3":
        ts = tensor_system(fixture_record("example-5-3-left").system,
                           fixture_record("example-5-3-right").system)
        system, claim = ts.combined, (1.0, 6.0)
        description = "tensor combination of the two factors"
    else:
        record = fixture_record(name, quad_nodes=ctx.obj["quad_nodes"])
        system, claim = record.system, record.claimed_bounds
        description = record.description

    outcome = check_bounds(system, *claim, tol=tol)
    report = optimal_bounds(system, tol=tol)
    payload = {
        "name": name,
        "description": description,
        "claimed": list(claim),
        "ok": outcome.ok,
        "lower": report.lower_opt,
        "upper": report.upper_opt,
        "witness": _vec_json(outcome.witness),
    }
    lines = [
        f"{name}: {description}",
        f"claimed bounds: ({_num(claim[0])}, {_num(claim[1])})",
        f"optimal lower: {_num(report.lower_opt)}",
        f"optimal upper: {_num(report.upper_opt)}",
    ]
    if outcome.ok:
        lines.append("verdict: PASS")
    else:
        witness = outcome.witness
        scaled = witness / np.max(np.abs(witness))
        value = biframe_form(system, scaled)
        payload["witness_scaled"] = _vec_json(scaled)
        payload["form_at_witness"] = value
        lines += [
            "verdict: FAIL",
            f"witness (scaled): {_vec(scaled)}",
            f"form at witness: {_num(value)}",
        ]
    _emit(ctx, payload, lines)
    ctx.exit(0 if outcome.ok else 1)


if __name__ == "__main__":
    main()
