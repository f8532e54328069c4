"""Command-line front end.

Every command builds the same request model the HTTP service accepts and
either calls the handler in-process (default) or POSTs it to a running
service given with ``--server``.  Output is machine-readable JSON unless
``--format human`` is chosen.

Exit codes: 0 all checks hold, 1 a verified mathematical check failed
(the failing inequality is printed with both sides), 2 usage or IO error.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
from pydantic import BaseModel

from .graphs import GraphError
from .service import models as m
from .service.app import ENDPOINTS
from .theta import ThetaIterationLimit

_MATH_FAIL = 1
_USAGE_FAIL = 2


def _graph_spec(value: str) -> m.GraphSpec:
    path = Path(value)
    if path.exists():
        return m.GraphSpec(text=path.read_text(encoding="utf-8"))
    return m.GraphSpec(generator=value)


def _load_colouring(path: str) -> m.ColouringPayload:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return m.ColouringPayload(**data)
    except FileNotFoundError:
        raise click.ClickException(f"colouring file not found: {path}")
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise click.ClickException(f"invalid colouring file {path}: {exc}")


def _call(ctx: click.Context, name: str, request: BaseModel | None) -> BaseModel | dict:
    path, request_model, handler = ENDPOINTS[name]
    server = ctx.obj.get("server")
    if server:
        import httpx

        payload = request.model_dump(mode="json") if request is not None else {}
        reply = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
        if reply.status_code != 200:
            click.echo(f"server error {reply.status_code}: {reply.text}", err=True)
            sys.exit(_USAGE_FAIL)
        body = reply.json()
        return body
    try:
        result = handler(request) if request_model is not None else handler()
    except ThetaIterationLimit as exc:
        click.echo(f"solver iteration limit: {exc}", err=True)
        sys.exit(_MATH_FAIL)
    except (GraphError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_USAGE_FAIL)
    return result


def _as_dict(result: BaseModel | dict) -> dict:
    if isinstance(result, BaseModel):
        return result.model_dump(mode="json", by_alias=True)
    return result


def _emit(ctx: click.Context, result: BaseModel | dict) -> dict:
    data = _as_dict(result)
    if ctx.obj.get("format") == "human":
        text = "\n".join(_human_lines(data))
    else:
        text = json.dumps(data, indent=2)
    out = ctx.obj.get("out")
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)
    return data


def _human_lines(data: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(_human_lines(value, prefix + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{prefix}{key}: [{len(value)} entries]")
            for i, item in enumerate(value):
                lines.append(f"{prefix}  - [{i}]")
                lines.extend(_human_lines(item, prefix + "    "))
        else:
            lines.append(f"{prefix}{key}: {value}")
    return lines


def _check_failures(data: dict) -> list[str]:
    """Collect failed mathematical checks with both sides where available."""
    fails: list[str] = []
    if data.get("holds") is False:
        if "product_upper" in data and "n" in data:
            fails.append(
                f"product chain failed: n = {data['n']} > product upper = {data['product_upper']}"
            )
        elif "theta_intersection" in data:
            lhs = data["theta_intersection"]["upper"]
            rhs = data["theta1"]["lower"] * data["theta2"]["lower"] + data.get("slack", 0.0)
            fails.append(f"submultiplicativity failed: {lhs} > {rhs}")
        else:
            fails.append("check reported holds=false")
    if data.get("all_hold") is False:
        for entry in data.get("entries", []):
            if not entry.get("holds", True):
                fails.append(
                    f"girth bound failed at g={entry['g']}: "
                    f"theta upper {data['theta_complement']['upper']} > bound {entry['bound']}"
                )
    for cls in data.get("classes", []):
        if cls.get("girth_bound_holds") is False:
            fails.append(
                f"class {cls['colour']} girth bound failed: theta upper "
                f"{cls['theta_complement']['upper']} > {2.0 + cls['epsilon']}"
            )
    if data.get("diagonal_independent") is False:
        fails.append("diagonal set is not independent in the product")
    if data.get("embedding_ok") is False:
        fails.append("product does not embed into the strong power as an induced subgraph")
    if data.get("alpha_exact") and data.get("alpha") is not None and data.get("n") is not None:
        if data["alpha"] < data["n"]:
            fails.append(f"alpha of the product {data['alpha']} < n = {data['n']}")
    return fails


def _finish(ctx: click.Context, result: BaseModel | dict) -> None:
    data = _emit(ctx, result)
    fails = _check_failures(data)
    if fails:
        for line in fails:
            click.echo(f"CHECK FAILED: {line}", err=True)
        sys.exit(_MATH_FAIL)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "human"]), default="json")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write output here.")
@click.option("--server", default=None, help="Base URL of a running service; POST instead of in-process calls.")
@click.pass_context
def main(ctx: click.Context, fmt: str, out: str | None, server: str | None):
    """Lovasz theta certificates, odd-girth bounds and colouring checks."""
    ctx.obj = {"format": fmt, "out": out, "server": server}


@main.group()
def graph():
    """Graph generation and inspection."""


@graph.command("gen")
@click.argument("name")
@click.pass_context
def graph_gen(ctx: click.Context, name: str):
    """Write a named generator (complete:n, cycle:n, empty:n, petersen, hypercube:k)."""
    from .graphs import graph_from_name, write_graph_text

    try:
        text = write_graph_text(graph_from_name(name))
    except GraphError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_USAGE_FAIL)
    out = ctx.obj.get("out")
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@graph.command("info")
@click.option("--graph", "spec", required=True, help="Generator name or path to a graph file.")
@click.pass_context
def graph_info_cmd(ctx: click.Context, spec: str):
    _finish(ctx, _call(ctx, "graph_info", m.GraphRequest(graph=_graph_spec(spec))))


@graph.command("odd-girth")
@click.option("--graph", "spec", required=True)
@click.pass_context
def graph_odd_girth_cmd(ctx: click.Context, spec: str):
    _finish(ctx, _call(ctx, "graph_odd_girth", m.GraphRequest(graph=_graph_spec(spec))))


@main.group()
def theta():
    """Theta solves with certified brackets."""


@theta.command("solve")
@click.option("--graph", "spec", required=True)
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.pass_context
def theta_solve_cmd(ctx: click.Context, spec: str, tol: float):
    req = m.ThetaSolveRequest(graph=_graph_spec(spec), tol=tol)
    _finish(ctx, _call(ctx, "theta_solve", req))


@theta.command("certify")
@click.option("--graph", "spec", required=True)
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.option("--dump-prefix", default=None, help="Write witness matrices to PREFIX.primal.txt / PREFIX.dual.txt.")
@click.pass_context
def theta_certify_cmd(ctx: click.Context, spec: str, tol: float, dump_prefix: str | None):
    """Solve and include the full witness matrices in the report."""
    req = m.ThetaSolveRequest(graph=_graph_spec(spec), tol=tol, include_witnesses=True)
    result = _call(ctx, "theta_solve", req)
    data = _as_dict(result)
    if dump_prefix:
        for key, suffix in (("primal_x", "primal"), ("dual_certificate", "dual")):
            rows = data.get(key)
            if rows:
                text = "\n".join(" ".join(repr(x) for x in row) for row in rows) + "\n"
                Path(f"{dump_prefix}.{suffix}.txt").write_text(text, encoding="utf-8")
    _finish(ctx, data)


@theta.command("submult")
@click.option("--graph1", "spec1", required=True)
@click.option("--graph2", "spec2", required=True)
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.pass_context
def theta_submult_cmd(ctx: click.Context, spec1: str, spec2: str, tol: float):
    req = m.SubmultRequest(graph1=_graph_spec(spec1), graph2=_graph_spec(spec2), tol=tol)
    _finish(ctx, _call(ctx, "theta_submult", req))


@main.group()
def cheb():
    """Chebyshev polynomial evaluation."""


@cheb.command("eval")
@click.option("--g", "degree", type=int, required=True)
@click.option("--x", type=float, required=True)
@click.option("--method", type=click.Choice(["recurrence", "closed"]), default="recurrence")
@click.pass_context
def cheb_eval_cmd(ctx: click.Context, degree: int, x: float, method: str):
    req = m.ChebEvalRequest(degree=degree, x=x, method=method)
    _finish(ctx, _call(ctx, "cheb_eval", req))


@cheb.command("coeffs")
@click.option("--g", "degree", type=int, required=True)
@click.pass_context
def cheb_coeffs_cmd(ctx: click.Context, degree: int):
    _finish(ctx, _call(ctx, "cheb_coeffs", m.ChebCoeffsRequest(degree=degree)))


@main.group()
def bounds():
    """Closed-form bounds and inequality audits."""


@bounds.command("audit")
@click.pass_context
def bounds_audit_cmd(ctx: click.Context):
    _finish(ctx, _call(ctx, "bounds_audit", None))


@bounds.command("girth-check")
@click.option("--graph", "spec", required=True)
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.option("--g-cap", type=int, default=99, show_default=True)
@click.pass_context
def bounds_girth_check_cmd(ctx: click.Context, spec: str, tol: float, g_cap: int):
    req = m.GirthCheckRequest(graph=_graph_spec(spec), tol=tol, g_cap=g_cap)
    _finish(ctx, _call(ctx, "bounds_girth_check", req))


@bounds.command("g-bound")
@click.option("--k", type=int, required=True)
@click.option("--delta", type=float, required=True)
@click.pass_context
def bounds_g_bound_cmd(ctx: click.Context, k: int, delta: float):
    _finish(ctx, _call(ctx, "bounds_g_bound", m.GBoundRequest(k=k, delta=delta)))


@bounds.command("product-check")
@click.option("--graph", "spec", required=True)
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.pass_context
def bounds_product_check_cmd(ctx: click.Context, spec: str, tol: float):
    req = m.ProductCheckRequest(graph=_graph_spec(spec), tol=tol)
    _finish(ctx, _call(ctx, "bounds_product_check", req))


@bounds.command("cycle-theta")
@click.option("--g", type=int, required=True)
@click.pass_context
def bounds_cycle_theta_cmd(ctx: click.Context, g: int):
    _finish(ctx, _call(ctx, "bounds_cycle_theta", m.CycleThetaRequest(g=g)))


@main.group()
def colouring():
    """Edge-colouring verification, pipelines and search."""


@colouring.command("verify")
@click.option("--file", "path", required=True, type=click.Path())
@click.pass_context
def colouring_verify_cmd(ctx: click.Context, path: str):
    req = m.ColouringRequest(colouring=_load_colouring(path))
    _finish(ctx, _call(ctx, "colouring_verify", req))


@colouring.command("pipeline")
@click.option("--file", "path", required=True, type=click.Path())
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.option("--g-cap", type=int, default=99, show_default=True)
@click.pass_context
def colouring_pipeline_cmd(ctx: click.Context, path: str, tol: float, g_cap: int):
    req = m.PipelineRequest(colouring=_load_colouring(path), tol=tol, g_cap=g_cap)
    _finish(ctx, _call(ctx, "colouring_pipeline", req))


@colouring.command("search")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--iterations", type=int, default=10_000, show_default=True)
@click.pass_context
def colouring_search_cmd(ctx: click.Context, n: int, k: int, seed: int, iterations: int):
    req = m.SearchRequest(n=n, k=k, seed=seed, iterations=iterations)
    _finish(ctx, _call(ctx, "colouring_search", req))


@colouring.command("brute-force")
@click.option("--k", type=int, required=True)
@click.pass_context
def colouring_brute_force_cmd(ctx: click.Context, k: int):
    _finish(ctx, _call(ctx, "colouring_brute_force", m.BruteForceRequest(k=k)))


@main.group()
def ramsey():
    """Aliases for the Ramsey-style commands."""


@ramsey.command("brute-force")
@click.option("--k", type=int, required=True)
@click.pass_context
def ramsey_brute_force_cmd(ctx: click.Context, k: int):
    _finish(ctx, _call(ctx, "colouring_brute_force", m.BruteForceRequest(k=k)))


@main.group()
def capacity():
    """Strong-product independence witnesses."""


@capacity.command("witness")
@click.option("--file", "path", required=True, type=click.Path())
@click.option("--max-factors", type=int, default=4, show_default=True)
@click.option("--cap", "size_cap", type=int, default=4096, show_default=True)
@click.pass_context
def capacity_witness_cmd(ctx: click.Context, path: str, max_factors: int, size_cap: int):
    req = m.CapacityRequest(
        colouring=_load_colouring(path), max_factors=max_factors, size_cap=size_cap
    )
    _finish(ctx, _call(ctx, "capacity_witness", req))


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
