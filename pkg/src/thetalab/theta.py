"""Lovasz theta via a dual-barrier interior-point method with certificates.

The solver works on the standard pair

    primal:  max <J, X>   s.t.  tr X = 1,  X_ij = 0 on edges,  X PSD
    dual:    min lambda_1(D)  over symmetric D with D = 1 on the diagonal
             and on every non-edge (free on edges),

follows the central path of the dual log-det barrier, and then rounds the
path point into two exact-pattern witnesses:

* a dual matrix D = J - Y whose forced entries are exactly 1, giving the
  upper bound lambda_1(D);
* a primal X with exact zeros on edges and trace exactly 1, giving the
  lower bound <J, X>.  X is built from the correlation matrix of the path
  iterate, repaired by alternating PSD/pattern projections and, when the
  plain rounding is not tight enough, pushed uphill by a projected
  supergradient ascent on lambda_1 over the certificate set.

Both witnesses are re-validated with the package's own Jacobi eigensolver
before anything is returned, so the reported bracket never depends on the
optimisation loop being healthy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, GraphError, complement, edge_intersection
from .linalg import SymmetricMatrix, eig_symmetric

__all__ = [
    "OrthonormalRepresentation",
    "RepresentationReport",
    "ThetaResult",
    "ThetaIterationLimit",
    "CertificateError",
    "solve_theta",
    "validate_representation",
    "handle_value",
    "gram_matrix",
    "gram_lambda1_lower_bound",
    "tensor_representation",
    "verify_submultiplicativity",
    "SubmultiplicativityReport",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-7
MIN_TOL = 1e-9
MAX_THETA_VERTICES = 128
_UNIT_TOL = 1e-9


class CertificateError(RuntimeError):
    """A rounded witness failed its independent re-validation."""


class ThetaIterationLimit(RuntimeError):
    """Requested gap not reached; ``best`` holds the best certified bracket."""

    def __init__(self, best: "ThetaResult"):
        super().__init__(
            f"iteration limit: best certified gap {best.gap:.3e} on n={best.n}"
        )
        self.best = best


@dataclass(frozen=True)
class ThetaResult:
    """Certified bracket lower <= theta(G) <= upper with explicit witnesses."""

    n: int
    lower: float
    upper: float
    primal_x: SymmetricMatrix
    dual_certificate: SymmetricMatrix
    iterations: int
    gap: float

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "lower": self.lower,
            "upper": self.upper,
            "gap": self.gap,
            "iterations": self.iterations,
        }

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class OrthonormalRepresentation:
    """Unit vectors, one per vertex, plus an optional unit handle vector."""

    vectors: np.ndarray
    handle: np.ndarray | None = None

    def __post_init__(self):
        vecs = np.array(self.vectors, dtype=float)
        if vecs.ndim != 2:
            raise ValueError(f"vectors must be a 2-d array, got shape {vecs.shape}")
        norms = np.linalg.norm(vecs, axis=1)
        worst = float(np.abs(norms - 1.0).max()) if len(norms) else 0.0
        if worst > _UNIT_TOL:
            raise ValueError(f"vector norms deviate from 1 by {worst:.2e}")
        vecs.flags.writeable = False
        object.__setattr__(self, "vectors", vecs)
        if self.handle is not None:
            h = np.array(self.handle, dtype=float)
            if h.shape != (vecs.shape[1],):
                raise ValueError("handle dimension does not match the vectors")
            if abs(float(np.linalg.norm(h)) - 1.0) > _UNIT_TOL:
                raise ValueError("handle is not a unit vector")
            h.flags.writeable = False
            object.__setattr__(self, "handle", h)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class RepresentationReport:
    valid: bool
    worst_unit_deviation: float
    worst_orthogonality: float
    offending_pair: tuple[int, int] | None


def validate_representation(
    graph: Graph, rep: OrthonormalRepresentation, tol: float = 1e-8
) -> RepresentationReport:
    """Check unit norms and orthogonality on every non-edge of ``graph``."""
    if rep.n != graph.n:
        raise ValueError(f"representation has {rep.n} vectors for a {graph.n}-vertex graph")
    norms = np.linalg.norm(rep.vectors, axis=1)
    worst_unit = float(np.abs(norms - 1.0).max())
    gram = rep.vectors @ rep.vectors.T
    worst_orth = 0.0
    pair = None
    for i in range(graph.n):
        for j in range(i + 1, graph.n):
            if graph.has_edge(i, j):
                continue
            dev = abs(float(gram[i, j]))
            if dev > worst_orth:
                worst_orth = dev
                pair = (i, j)
    valid = worst_unit <= tol and worst_orth <= tol
    return RepresentationReport(valid, worst_unit, worst_orth, pair if not valid else pair)


def handle_value(rep: OrthonormalRepresentation) -> float:
    """max_i 1 / (c . u_i)^2; infinite when some product vanishes."""
    if rep.handle is None:
        raise ValueError("representation carries no handle vector")
    prods = rep.vectors @ rep.handle
    if np.any(prods == 0.0):
        return math.inf
    return float(np.max(1.0 / prods**2))


def gram_matrix(rep: OrthonormalRepresentation) -> SymmetricMatrix:
    """Pairwise inner products; PSD by construction, unit diagonal."""
    m = SymmetricMatrix(rep.vectors @ rep.vectors.T)
    spectrum = eig_symmetric(m, vectors=False)
    if spectrum.values[-1] < -1e-9:
        raise CertificateError(f"gram matrix has eigenvalue {spectrum.values[-1]:.2e}")
    return m


def gram_lambda1_lower_bound(graph: Graph, rep: OrthonormalRepresentation) -> float:
    """Largest gram eigenvalue: a certified lower bound for theta(complement)."""
    report = validate_representation(graph, rep)
    if not report.valid:
        raise ValueError(
            f"not an orthonormal representation (unit dev {report.worst_unit_deviation:.2e}, "
            f"orthogonality dev {report.worst_orthogonality:.2e} at {report.offending_pair})"
        )
    spectrum = eig_symmetric(gram_matrix(rep), vectors=False)
    return float(spectrum.values[0])


def tensor_representation(
    rep1: OrthonormalRepresentation, rep2: OrthonormalRepresentation
) -> OrthonormalRepresentation:
    """Vertex-wise Kronecker products; handles tensor when both are present."""
    if rep1.n != rep2.n:
        raise ValueError(f"vertex counts differ: {rep1.n} vs {rep2.n}")
    vecs = (rep1.vectors[:, :, None] * rep2.vectors[:, None, :]).reshape(
        rep1.n, rep1.dim * rep2.dim
    )
    handle = None
    if rep1.handle is not None and rep2.handle is not None:
        handle = np.kron(rep1.handle, rep2.handle)
    return OrthonormalRepresentation(vecs, handle)


# ---------------------------------------------------------------------------
# interior-point solver
# ---------------------------------------------------------------------------

_MU_SHRINK = 0.15
_STAGE_DEC2 = 1e-5
_FINAL_DEC2 = 1e-13
_ASCENT_CAP = 200
_POLISH_CAP = 80
_RETRY_STAGES = 3


class _DualBarrier:
    """Newton path-following on t - mu*logdet(t I + Y - J) over (t, y)."""

    def __init__(self, n: int, edges: list[tuple[int, int]]):
        self.n = n
        self.m = len(edges)
        self.ei = np.array([e[0] for e in edges], dtype=np.intp)
        self.ej = np.array([e[1] for e in edges], dtype=np.intp)
        self.J = np.ones((n, n))
        self.diag = np.arange(n)
        self.t = float(n + 1)
        self.y = np.zeros(self.m)
        self.newton_steps = 0

    def zmat(self, t: float, y: np.ndarray) -> np.ndarray:
        z = -self.J.copy()
        z[self.diag, self.diag] += t
        if self.m:
            z[self.ei, self.ej] += y
            z[self.ej, self.ei] += y
        return z

    def _phi(self, t: float, y: np.ndarray, mu: float) -> float | None:
        try:
            chol = np.linalg.cholesky(self.zmat(t, y))
        except np.linalg.LinAlgError:
            return None
        return t - mu * 2.0 * float(np.log(np.diag(chol)).sum())

    def center(self, mu: float, dec2_target: float, step_cap: int = 50) -> None:
        m = self.m
        for _ in range(step_cap):
            self.newton_steps += 1
            w = np.linalg.inv(self.zmat(self.t, self.y))
            g_t = 1.0 - mu * float(np.trace(w))
            if m:
                g_y = -2.0 * mu * w[self.ei, self.ej]
                h = np.empty((m + 1, m + 1))
                h[0, 0] = mu * float((w * w).sum())
                h_ty = 2.0 * mu * np.einsum("ek,ke->e", w[self.ei, :], w[:, self.ej])
                h[0, 1:] = h_ty
                h[1:, 0] = h_ty
                h[1:, 1:] = 2.0 * mu * (
                    w[np.ix_(self.ei, self.ei)] * w[np.ix_(self.ej, self.ej)]
                    + w[np.ix_(self.ei, self.ej)] * w[np.ix_(self.ej, self.ei)]
                )
                grad = np.concatenate(([g_t], g_y))
            else:
                h = np.array([[mu * float((w * w).sum())]])
                grad = np.array([g_t])
            scale = 1.0 / np.sqrt(np.clip(np.diag(h), 1e-300, None))
            hs = h * scale[:, None] * scale[None, :]
            hs[np.arange(len(hs)), np.arange(len(hs))] += 1e-14
            try:
                step = scale * np.linalg.solve(hs, -(scale * grad))
            except np.linalg.LinAlgError:
                step = -grad
            dec2 = float(-grad @ step)
            if dec2 <= 0.0:
                step = -grad
                dec2 = float(grad @ grad)
            phi0 = self._phi(self.t, self.y, mu)
            slope = float(grad @ step)
            alpha = 1.0
            d_t, d_y = step[0], step[1:]
            for _ls in range(60):
                phi1 = self._phi(self.t + alpha * d_t, self.y + alpha * d_y, mu)
                if phi1 is not None and phi1 <= phi0 + 0.01 * alpha * slope:
                    break
                alpha *= 0.5
            else:
                alpha = 0.0
            if alpha > 0.0:
                self.t += alpha * d_t
                self.y += alpha * d_y
            if dec2 <= dec2_target or alpha == 0.0:
                return

    def dual_matrix(self) -> np.ndarray:
        d = np.ones((self.n, self.n))
        if self.m:
            d[self.ei, self.ej] = 1.0 - self.y
            d[self.ej, self.ei] = 1.0 - self.y
        return d

    def primal_correlation(self, mu: float) -> np.ndarray:
        """Correlation matrix of mu * Z^{-1} with edge entries forced to zero."""
        x = mu * np.linalg.inv(self.zmat(self.t, self.y))
        if self.m:
            x[self.ei, self.ej] = 0.0
            x[self.ej, self.ei] = 0.0
        x = 0.5 * (x + x.T)
        d = np.clip(np.diag(x), 1e-300, None)
        root = np.sqrt(d)
        corr = x / np.outer(root, root)
        np.fill_diagonal(corr, 1.0)
        return corr


def _pattern_zero(m: np.ndarray, ei: np.ndarray, ej: np.ndarray) -> None:
    if len(ei):
        m[ei, ej] = 0.0
        m[ej, ei] = 0.0


def _polish(m: np.ndarray, ei: np.ndarray, ej: np.ndarray) -> np.ndarray:
    """Alternate PSD clipping with the exact unit-diagonal / zero-edge pattern."""
    for _ in range(_POLISH_CAP):
        vals, vecs = np.linalg.eigh(m)
        if vals[0] >= -1e-13:
            break
        m = (vecs * np.clip(vals, 0.0, None)) @ vecs.T
        m = 0.5 * (m + m.T)
        _pattern_zero(m, ei, ej)
        np.fill_diagonal(m, 1.0)
    return m


def _cert_value(m: np.ndarray) -> float:
    """lambda_1 of the PSD-shifted copy (M + eps I) / (1 + eps); always certified."""
    vals = np.linalg.eigvalsh(m)
    eps = max(0.0, -float(vals[0]))
    return (float(vals[-1]) + eps) / (1.0 + eps)


def _ascend(
    m: np.ndarray,
    upper: float,
    target_gap: float,
    ei: np.ndarray,
    ej: np.ndarray,
) -> np.ndarray:
    """Projected supergradient ascent of lambda_1 over the certificate set.

    Steps move along the pattern projection of the top eigenvector outer
    product and are re-projected by :func:`_polish`; the best iterate wins.
    """
    best_val = _cert_value(m)
    best = m
    beta = 0.05
    for _ in range(_ASCENT_CAP):
        if upper - best_val <= target_gap:
            break
        vals, vecs = np.linalg.eigh(m)
        w = vecs[:, -1]
        direction = np.outer(w, w)
        _pattern_zero(direction, ei, ej)
        np.fill_diagonal(direction, 0.0)
        candidate = _polish(m + beta * direction, ei, ej)
        value = _cert_value(candidate)
        if value > best_val:
            best_val = value
            best = candidate
            m = candidate
            beta = min(beta * 1.4, 2.0)
        else:
            beta *= 0.35
            if beta < 1e-13:
                break
    return best


def _certify(
    n: int,
    corr: np.ndarray,
    dual: np.ndarray,
    ei: np.ndarray,
    ej: np.ndarray,
    iterations: int,
) -> ThetaResult:
    """Turn a candidate correlation matrix and dual matrix into a validated bracket.

    All spectral quantities here come from the Jacobi eigensolver, so the
    certified numbers are independent of the interior-point loop.
    """
    spec_m = eig_symmetric(corr, vectors=True)
    eps = max(0.0, -float(spec_m.values[-1])) + spec_m.off_residual
    m2 = (corr + eps * np.eye(n)) / (1.0 + eps)
    _pattern_zero(m2, ei, ej)
    np.fill_diagonal(m2, 1.0)
    w = spec_m.vectors[:, 0]
    x = m2 * np.outer(w, w)
    x = 0.5 * (x + x.T)
    x /= float(np.trace(x))
    spec_x = eig_symmetric(x, vectors=False)
    eta = max(0.0, -float(spec_x.values[-1])) + spec_x.off_residual + 1e-15
    x = (x + eta * np.eye(n)) / (1.0 + eta * n)
    _pattern_zero(x, ei, ej)
    x /= float(np.trace(x))
    lower = float(x.sum())

    spec_d = eig_symmetric(dual, vectors=False)
    upper = float(spec_d.values[0]) + spec_d.off_residual

    # independent feasibility checks on the exact-pattern witnesses
    if len(ei) and float(np.abs(x[ei, ej]).max()) != 0.0:
        raise CertificateError("primal witness has nonzero edge entries")
    if abs(float(np.trace(x)) - 1.0) > 1e-10:
        raise CertificateError("primal witness trace differs from 1")
    spec_check = eig_symmetric(x, vectors=False)
    if float(spec_check.values[-1]) < -1e-8:
        raise CertificateError(
            f"primal witness indefinite: {float(spec_check.values[-1]):.2e}"
        )
    forced = np.ones((n, n), dtype=bool)
    if len(ei):
        forced[ei, ej] = False
        forced[ej, ei] = False
    if float(np.abs(dual[forced] - 1.0).max()) != 0.0:
        raise CertificateError("dual witness breaks the forced all-ones pattern")
    if lower > upper + 1e-9:
        raise CertificateError(
            f"weak duality violated by the witnesses: {lower} > {upper}"
        )
    return ThetaResult(
        n=n,
        lower=lower,
        upper=upper,
        primal_x=SymmetricMatrix(x),
        dual_certificate=SymmetricMatrix(dual),
        iterations=iterations,
        gap=upper - lower,
    )


def solve_theta(graph: Graph, tol: float = DEFAULT_TOL) -> ThetaResult:
    """Certified bracket for theta(G); n <= 128 and tol >= 1e-9.

    Raises :class:`ThetaIterationLimit` (with the best bracket attached) if
    the requested gap is still open after the retry schedule; the attached
    bracket is valid regardless.
    """
    n = graph.n
    if n > MAX_THETA_VERTICES:
        raise GraphError(f"solve_theta is limited to n <= {MAX_THETA_VERTICES}, got {n}")
    if tol < MIN_TOL:
        raise ValueError(f"tolerance below {MIN_TOL}: {tol}")
    if n == 1:
        one = SymmetricMatrix(np.array([[1.0]]))
        return ThetaResult(1, 1.0, 1.0, one, one, 0, 0.0)

    edges = graph.edge_list()
    barrier = _DualBarrier(n, edges)
    mu = 1.0 / float(np.trace(np.linalg.inv(barrier.zmat(barrier.t, barrier.y))))
    mu_target = tol / (8.0 * n)
    best: ThetaResult | None = None
    for _attempt in range(_RETRY_STAGES + 1):
        while mu > mu_target:
            barrier.center(mu, _STAGE_DEC2)
            mu = max(mu * _MU_SHRINK, mu_target)
        barrier.center(mu, _FINAL_DEC2)
        corr = _polish(barrier.primal_correlation(mu), barrier.ei, barrier.ej)
        dual = barrier.dual_matrix()
        upper_hint = float(np.linalg.eigvalsh(dual)[-1])
        if upper_hint - _cert_value(corr) > 0.25 * tol:
            corr = _ascend(corr, upper_hint, 0.25 * tol, barrier.ei, barrier.ej)
        result = _certify(n, corr, dual, barrier.ei, barrier.ej, barrier.newton_steps)
        if best is None or result.gap < best.gap:
            best = result
        if best.gap <= tol:
            return best
        mu_target /= 5.0
        mu = mu_target
        if mu_target < 1e-14:
            break
    raise ThetaIterationLimit(best)


@dataclass(frozen=True)
class SubmultiplicativityReport:
    theta_intersection: ThetaResult
    theta1: ThetaResult
    theta2: ThetaResult
    slack: float
    holds: bool

    def to_report(self) -> dict:
        return {
            "theta_intersection": self.theta_intersection.to_report(),
            "theta1": self.theta1.to_report(),
            "theta2": self.theta2.to_report(),
            "slack": self.slack,
            "holds": self.holds,
        }


def verify_submultiplicativity(
    g1: Graph, g2: Graph, tol: float = DEFAULT_TOL
) -> SubmultiplicativityReport:
    """Check theta(G1 and G2) <= theta(G1) * theta(G2) on certified brackets.

    The inequality is evaluated at the unfavourable bracket ends with slack
    3 * tol * (theta1 + theta2 + 1), so solver noise can never fake a pass.
    """
    if g1.n != g2.n:
        raise GraphError(f"vertex counts differ: {g1.n} vs {g2.n}")
    if g1.n > 64:
        raise GraphError(f"verify_submultiplicativity is limited to n <= 64, got {g1.n}")
    both = solve_theta(edge_intersection(g1, g2), tol)
    t1 = solve_theta(g1, tol)
    t2 = solve_theta(g2, tol)
    slack = 3.0 * tol * (t1.upper + t2.upper + 1.0)
    holds = both.upper <= t1.lower * t2.lower + slack
    return SubmultiplicativityReport(both, t1, t2, slack, holds)


def theta_of_complement(graph: Graph, tol: float = DEFAULT_TOL) -> ThetaResult:
    """Convenience wrapper for theta(complement(G))."""
    return solve_theta(complement(graph), tol)
