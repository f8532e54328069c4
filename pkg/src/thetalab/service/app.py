"""FastAPI application exposing the toolkit as a stateless compute service.

Handlers are plain functions over the pydantic models; the CLI calls the
same functions in-process, while HTTP clients reach them through the routes
registered in :data:`ENDPOINTS`.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import bounds as bounds_mod
from .. import colourings as col_mod
from .. import graphs as graph_mod
from .. import theta as theta_mod
from ..chebyshev import cheb_coefficients, cheb_eval_closed, cheb_eval_recurrence
from ..graphs import GraphError
from ..theta import ThetaIterationLimit
from . import models as m


def graph_info(req: m.GraphRequest) -> m.GraphInfoReport:
    g = req.graph.resolve()
    girth, witness = graph_mod.odd_girth(g)
    degrees = [g.degree(v) for v in range(g.n)]
    return m.GraphInfoReport(
        n=g.n,
        m=g.num_edges,
        min_degree=min(degrees),
        max_degree=max(degrees),
        bipartite=girth.is_infinite,
        odd_girth=m.OddGirthReport.from_result(girth, witness),
        text=graph_mod.write_graph_text(g),
    )


def graph_odd_girth(req: m.GraphRequest) -> m.OddGirthReport:
    girth, witness = graph_mod.odd_girth(req.graph.resolve())
    return m.OddGirthReport.from_result(girth, witness)


def theta_solve(req: m.ThetaSolveRequest) -> m.ThetaReport:
    res = theta_mod.solve_theta(req.graph.resolve(), req.tol)
    return m.ThetaReport.from_result(res, witnesses=req.include_witnesses)


def theta_submultiplicativity(req: m.SubmultRequest) -> m.SubmultResponse:
    rep = theta_mod.verify_submultiplicativity(
        req.graph1.resolve(), req.graph2.resolve(), req.tol
    )
    return m.SubmultResponse.from_report(rep)


def cheb_eval(req: m.ChebEvalRequest) -> m.ChebEvalResponse:
    if req.method == "recurrence":
        value = cheb_eval_recurrence(req.degree, req.x)
    elif req.method == "closed":
        value = cheb_eval_closed(req.degree, req.x)
    else:
        raise ValueError(f"unknown method {req.method!r} (use recurrence or closed)")
    return m.ChebEvalResponse(degree=req.degree, x=req.x, method=req.method, value=value)


def cheb_coeffs(req: m.ChebCoeffsRequest) -> m.ChebCoeffsResponse:
    return m.ChebCoeffsResponse(degree=req.degree, coefficients=cheb_coefficients(req.degree))


def bounds_audit(_req: None = None) -> m.BoundsAuditResponse:
    return m.BoundsAuditResponse.from_report(bounds_mod.elementary_inequality_audit())


def bounds_girth_check(req: m.GirthCheckRequest) -> m.GirthCheckResponse:
    theta, girth, reports = bounds_mod.girth_theta_bound_check(
        req.graph.resolve(), req.tol, req.g_cap
    )
    entries = [m.GirthBoundEntry.from_report(r) for r in reports]
    return m.GirthCheckResponse(
        n=theta.n,
        odd_girth=girth.value,
        theta_complement=m.ThetaReport.from_result(theta),
        entries=entries,
        all_hold=all(e.holds for e in entries),
    )


def bounds_g_bound(req: m.GBoundRequest) -> m.GBoundResponse:
    inputs = bounds_mod.RamseyBoundInputs.from_k_delta(req.k, req.delta)
    return m.GBoundResponse.from_report(bounds_mod.derive_g_bound(inputs))


def bounds_product_check(req: m.ProductCheckRequest) -> m.ProductCheckResponse:
    rep = bounds_mod.vertex_transitive_product_check(req.graph.resolve(), req.tol)
    return m.ProductCheckResponse.from_report(rep)


def bounds_cycle_theta(req: m.CycleThetaRequest) -> m.CycleThetaResponse:
    return m.CycleThetaResponse(
        g=req.g,
        exact=bounds_mod.cycle_theta_exact(req.g),
        asymptotic=bounds_mod.cycle_theta_asymptotic(req.g),
    )


def colouring_verify(req: m.ColouringRequest) -> m.ColouringVerifyResponse:
    col = req.colouring.resolve()
    report = col_mod.shortest_mono_odd_cycle(col)
    counts = [col_mod.colour_class(col, c).num_edges for c in range(col.k)]
    return m.ColouringVerifyResponse(
        n=col.n,
        k=col.k,
        class_edge_counts=counts,
        shortest_mono_odd_cycle=m.MonoCycleModel.from_report(report),
        all_classes_bipartite=report.length is None,
    )


def colouring_pipeline(req: m.PipelineRequest) -> m.PipelineResponse:
    rep = col_mod.theta_pipeline(req.colouring.resolve(), req.tol, req.g_cap)
    return m.PipelineResponse.from_report(rep)


def colouring_search(req: m.SearchRequest) -> m.SearchResponse:
    res = col_mod.local_search_colouring(req.n, req.k, req.seed, req.iterations)
    return m.SearchResponse.from_result(res)


def colouring_brute_force(req: m.BruteForceRequest) -> m.BruteForceResponse:
    return m.BruteForceResponse.from_result(req.k, col_mod.brute_force_L(req.k))


def capacity_witness(req: m.CapacityRequest) -> m.CapacityResponse:
    rep = col_mod.capacity_witness(
        req.colouring.resolve(), max_factors=req.max_factors, size_cap=req.size_cap
    )
    return m.CapacityResponse.from_report(rep)


# name -> (path, request model or None, handler)
ENDPOINTS = {
    "graph_info": ("/graph/info", m.GraphRequest, graph_info),
    "graph_odd_girth": ("/graph/odd-girth", m.GraphRequest, graph_odd_girth),
    "theta_solve": ("/theta/solve", m.ThetaSolveRequest, theta_solve),
    "theta_submult": ("/theta/submultiplicativity", m.SubmultRequest, theta_submultiplicativity),
    "cheb_eval": ("/cheb/eval", m.ChebEvalRequest, cheb_eval),
    "cheb_coeffs": ("/cheb/coeffs", m.ChebCoeffsRequest, cheb_coeffs),
    "bounds_audit": ("/bounds/audit", None, bounds_audit),
    "bounds_girth_check": ("/bounds/girth-check", m.GirthCheckRequest, bounds_girth_check),
    "bounds_g_bound": ("/bounds/g-bound", m.GBoundRequest, bounds_g_bound),
    "bounds_product_check": ("/bounds/product-check", m.ProductCheckRequest, bounds_product_check),
    "bounds_cycle_theta": ("/bounds/cycle-theta", m.CycleThetaRequest, bounds_cycle_theta),
    "colouring_verify": ("/colouring/verify", m.ColouringRequest, colouring_verify),
    "colouring_pipeline": ("/colouring/pipeline", m.PipelineRequest, colouring_pipeline),
    "colouring_search": ("/colouring/search", m.SearchRequest, colouring_search),
    "colouring_brute_force": ("/colouring/brute-force", m.BruteForceRequest, colouring_brute_force),
    "capacity_witness": ("/capacity/witness", m.CapacityRequest, capacity_witness),
}


def create_app() -> FastAPI:
    app = FastAPI(title="thetalab", version="0.1.0")

    @app.exception_handler(GraphError)
    async def _graph_error(_request: Request, exc: GraphError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(_request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ThetaIterationLimit)
    async def _iteration_limit(_request: Request, exc: ThetaIterationLimit):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "best": exc.best.to_report()},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    for path, request_model, handler in ENDPOINTS.values():
        if request_model is None:

            def _make_noarg(h):
                def route():
                    return h()

                return route

            app.post(path)(_make_noarg(handler))
        else:

            def _make(h, model):
                def route(payload):
                    return h(payload)

                # Annotate at runtime with the class itself; a closure variable
                # in a stringified annotation would be invisible to FastAPI.
                route.__annotations__ = {"payload": model}
                return route

            app.post(path)(_make(handler, request_model))
    return app


app = create_app()
