"""Request/response schemas for the HTTP service (and the CLI that wraps it)."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator

from ..bounds import (
    GBoundReport,
    GirthBoundReport,
    InequalityAuditReport,
    ProductIdentityReport,
)
from ..colourings import (
    BruteForceResult,
    CapacityReport,
    EdgeColouring,
    LocalSearchResult,
    MonoOddCycleReport,
    PipelineReport,
)
from ..graphs import Graph, GraphError, OddGirth, build_graph, graph_from_name, read_graph_text
from ..theta import SubmultiplicativityReport, ThetaResult


class GraphSpec(BaseModel):
    """One of: a named generator, an explicit edge list, or graph text format."""

    generator: str | None = None
    n: int | None = None
    edges: list[tuple[int, int]] | None = None
    text: str | None = None

    @model_validator(mode="after")
    def _one_source(self):
        given = [self.generator is not None, self.edges is not None, self.text is not None]
        if sum(given) != 1:
            raise ValueError("give exactly one of generator, edges or text")
        if self.edges is not None and self.n is None:
            raise ValueError("edges need an explicit vertex count n")
        return self

    def resolve(self) -> Graph:
        if self.generator is not None:
            return graph_from_name(self.generator)
        if self.text is not None:
            return read_graph_text(self.text)
        assert self.n is not None and self.edges is not None
        return build_graph(self.n, self.edges)


class ColouringPayload(BaseModel):
    """Wire form of an edge colouring: every pair of K_n with its colour."""

    n: int
    k: int
    edges: list[tuple[int, int, int]]

    def resolve(self) -> EdgeColouring:
        want = self.n * (self.n - 1) // 2
        seen: dict[int, int] = {}
        from ..colourings import pair_rank

        for u, v, c in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise GraphError(f"bad pair ({u}, {v})")
            seen[pair_rank(u, v)] = c
        if len(seen) != want:
            raise GraphError(f"colouring covers {len(seen)} of {want} pairs")
        return EdgeColouring(self.n, self.k, [seen[r] for r in range(want)])

    @classmethod
    def from_colouring(cls, col: EdgeColouring) -> "ColouringPayload":
        edges = [(u, v, col.colour_of(u, v)) for v in range(1, col.n) for u in range(v)]
        return cls(n=col.n, k=col.k, edges=edges)


class ThetaSolveRequest(BaseModel):
    graph: GraphSpec
    tol: float = Field(default=1e-7, ge=1e-9)
    include_witnesses: bool = False


class ThetaReport(BaseModel):
    n: int
    lower: float
    upper: float
    gap: float
    iterations: int
    primal_x: list[list[float]] | None = None
    dual_certificate: list[list[float]] | None = None

    @classmethod
    def from_result(cls, res: ThetaResult, witnesses: bool = False) -> "ThetaReport":
        return cls(
            n=res.n,
            lower=res.lower,
            upper=res.upper,
            gap=res.gap,
            iterations=res.iterations,
            primal_x=res.primal_x.array.tolist() if witnesses else None,
            dual_certificate=res.dual_certificate.array.tolist() if witnesses else None,
        )


class GraphRequest(BaseModel):
    graph: GraphSpec


class OddGirthReport(BaseModel):
    value: int | None
    infinite: bool
    witness: list[int] | None

    @classmethod
    def from_result(cls, girth: OddGirth, witness) -> "OddGirthReport":
        return cls(
            value=girth.value,
            infinite=girth.is_infinite,
            witness=list(witness.vertices) if witness is not None else None,
        )


class GraphInfoReport(BaseModel):
    n: int
    m: int
    min_degree: int
    max_degree: int
    bipartite: bool
    odd_girth: OddGirthReport
    text: str


class ChebEvalRequest(BaseModel):
    degree: int = Field(ge=1)
    x: float
    method: str = "recurrence"


class ChebEvalResponse(BaseModel):
    degree: int
    x: float
    method: str
    value: float


class ChebCoeffsRequest(BaseModel):
    degree: int = Field(ge=1, le=63)


class ChebCoeffsResponse(BaseModel):
    degree: int
    coefficients: list[int]


class SubmultRequest(BaseModel):
    graph1: GraphSpec
    graph2: GraphSpec
    tol: float = Field(default=1e-7, ge=1e-9)


class SubmultResponse(BaseModel):
    theta_intersection: ThetaReport
    theta1: ThetaReport
    theta2: ThetaReport
    slack: float
    holds: bool

    @classmethod
    def from_report(cls, rep: SubmultiplicativityReport) -> "SubmultResponse":
        return cls(
            theta_intersection=ThetaReport.from_result(rep.theta_intersection),
            theta1=ThetaReport.from_result(rep.theta1),
            theta2=ThetaReport.from_result(rep.theta2),
            slack=rep.slack,
            holds=rep.holds,
        )


class GirthCheckRequest(BaseModel):
    graph: GraphSpec
    tol: float = Field(default=1e-7, ge=1e-9)
    g_cap: int = Field(default=99, ge=1)


class GirthBoundEntry(BaseModel):
    g: int
    epsilon: float
    bound: float
    alon_kahale: float
    holds: bool

    @classmethod
    def from_report(cls, rep: GirthBoundReport) -> "GirthBoundEntry":
        return cls(
            g=rep.g,
            epsilon=rep.epsilon,
            bound=rep.paper_bound,
            alon_kahale=rep.alon_kahale,
            holds=rep.holds,
        )


class GirthCheckResponse(BaseModel):
    n: int
    odd_girth: int | None
    theta_complement: ThetaReport
    entries: list[GirthBoundEntry]
    all_hold: bool


class GBoundRequest(BaseModel):
    k: int = Field(ge=1)
    delta: float = Field(gt=0.0, le=1.0)


class ChainStepModel(BaseModel):
    description: str
    lhs: float
    rhs: float
    holds: bool


class GBoundResponse(BaseModel):
    k: int
    delta: float
    n: int
    value: float
    x: float
    sharp_cap: float
    steps: list[ChainStepModel]

    @classmethod
    def from_report(cls, rep: GBoundReport) -> "GBoundResponse":
        return cls(
            k=rep.inputs.k,
            delta=rep.inputs.delta,
            n=rep.inputs.n,
            value=rep.value,
            x=rep.x,
            sharp_cap=rep.sharp_cap,
            steps=[ChainStepModel(**s.to_report()) for s in rep.steps],
        )


class BoundsAuditResponse(BaseModel):
    exp_half_delta_margin: float
    exp_half_delta_argmin: float
    two_power_margin: float
    two_power_argmin: float
    grid: int
    holds: bool

    @classmethod
    def from_report(cls, rep: InequalityAuditReport) -> "BoundsAuditResponse":
        return cls(**rep.to_report())


class ProductCheckRequest(BaseModel):
    graph: GraphSpec
    tol: float = Field(default=1e-7, ge=1e-9)


class ProductCheckResponse(BaseModel):
    n: int
    theta: ThetaReport
    theta_complement: ThetaReport
    product_lower: float
    product_upper: float
    holds: bool

    @classmethod
    def from_report(cls, rep: ProductIdentityReport) -> "ProductCheckResponse":
        return cls(
            n=rep.n,
            theta=ThetaReport.from_result(rep.theta),
            theta_complement=ThetaReport.from_result(rep.theta_complement),
            product_lower=rep.product_interval[0],
            product_upper=rep.product_interval[1],
            holds=rep.holds,
        )


class CycleThetaRequest(BaseModel):
    g: int = Field(ge=3)


class CycleThetaResponse(BaseModel):
    g: int
    exact: float
    asymptotic: float


class ColouringRequest(BaseModel):
    colouring: ColouringPayload


class MonoCycleModel(BaseModel):
    length: int | None
    colour: int | None
    witness: list[int] | None
    class_odd_girths: list[int | None]

    @classmethod
    def from_report(cls, rep: MonoOddCycleReport) -> "MonoCycleModel":
        return cls(**rep.to_report())


class ColouringVerifyResponse(BaseModel):
    n: int
    k: int
    class_edge_counts: list[int]
    shortest_mono_odd_cycle: MonoCycleModel
    all_classes_bipartite: bool


class PipelineRequest(BaseModel):
    colouring: ColouringPayload
    tol: float = Field(default=1e-7, ge=1e-9)
    g_cap: int = Field(default=99, ge=1)


class PipelineClassModel(BaseModel):
    colour: int
    theta_complement: ThetaReport
    odd_girth: int | None
    g_used: int
    epsilon: float
    girth_bound_holds: bool


class PipelineResponse(BaseModel):
    n: int
    k: int
    classes: list[PipelineClassModel]
    product_lower: float
    product_upper: float
    slack: float
    holds: bool

    @classmethod
    def from_report(cls, rep: PipelineReport) -> "PipelineResponse":
        return cls(
            n=rep.n,
            k=rep.k,
            classes=[
                PipelineClassModel(
                    colour=c.colour,
                    theta_complement=ThetaReport.from_result(c.theta_complement),
                    odd_girth=c.class_odd_girth.value,
                    g_used=c.g_used,
                    epsilon=c.epsilon,
                    girth_bound_holds=c.girth_bound_holds,
                )
                for c in rep.classes
            ],
            product_lower=rep.product_interval[0],
            product_upper=rep.product_interval[1],
            slack=rep.slack,
            holds=rep.holds,
        )


class SearchRequest(BaseModel):
    n: int = Field(ge=2, le=64)
    k: int = Field(ge=1, le=8)
    seed: int = 0
    iterations: int = Field(default=10_000, ge=1)


class SearchResponse(BaseModel):
    colouring: ColouringPayload
    report: MonoCycleModel
    iterations_used: int
    restarts: int

    @classmethod
    def from_result(cls, res: LocalSearchResult) -> "SearchResponse":
        return cls(
            colouring=ColouringPayload.from_colouring(res.best),
            report=MonoCycleModel.from_report(res.report),
            iterations_used=res.iterations_used,
            restarts=res.restarts,
        )


class BruteForceRequest(BaseModel):
    k: int = Field(ge=1, le=2)


class BruteForceResponse(BaseModel):
    k: int
    l_value: int = Field(alias="L")
    extremal: ColouringPayload
    colourings_checked: int

    model_config = {"populate_by_name": True}

    @classmethod
    def from_result(cls, k: int, res: BruteForceResult) -> "BruteForceResponse":
        return cls(
            k=k,
            L=res.l_value,
            extremal=ColouringPayload.from_colouring(res.extremal),
            colourings_checked=res.colourings_checked,
        )


class CapacityRequest(BaseModel):
    colouring: ColouringPayload
    max_factors: int = Field(default=4, ge=1)
    size_cap: int = Field(default=4096, ge=1)


class CapacityResponse(BaseModel):
    n: int
    k: int
    product_vertices: int
    diagonal: list[int]
    diagonal_independent: bool
    alpha: int | None
    alpha_exact: bool | None
    embedding_checked: bool
    embedding_ok: bool | None

    @classmethod
    def from_report(cls, rep: CapacityReport) -> "CapacityResponse":
        return cls(**rep.to_report())
