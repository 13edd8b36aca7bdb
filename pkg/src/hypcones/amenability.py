"""Distances to subspaces, cones, and faces; empirical facial error bounds.

The central quantity is the ratio dist(x, F) / dist(x, K) for a face F of
a cone K, maximized over points x of the span of F: its supremum is the
face's error-bound constant, and sampling it yields an empirical lower
bound.  Everything here reduces to two projection primitives:

* orthogonal projection onto a subspace (closed form), and
* projection onto a cone, either a registered closed form (orthant clip,
  second-order cone formula, eigenvalue clipping) or a cutting-plane
  method on min |x - y| subject to the smallest hyperbolic eigenvalue of
  y being nonnegative.  The eigenvalue is concave, the sums of the k
  smallest eigenvalues are concave as well, and each violated prefix sum
  contributes a supporting cut; the quadratic master problem is solved as
  a least-distance program via nonnegative least squares.

All norms are Euclidean, optionally with a fixed diagonal weight vector
(the symmetric-matrix fixture needs off-diagonal weight 2 so that its
coordinate geometry is the Frobenius one); reports state the norm used.
Samples with denominators below 1e-12 * (1 + |x|) are discarded from
ratio statistics rather than contributing 0/0 noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import nnls

from .cones import HyperbolicityCone, derivative_cone, in_interior, member, new_cone
from .errors import ConvergenceError, NumericalInconsistencyError
from .faces import FaceDescriptor
from .polynomials import MODE_FLOAT, Polynomial, Subspace

_TINY_REL = 1e-12  # ratio-denominator discard threshold
_MAX_CUTS = 300
_MAX_ITER = 500


def _weight_array(weights, n: int) -> np.ndarray:
    if weights is None:
        return np.ones(n)
    w = np.asarray(weights, dtype=float)
    if w.shape != (n,) or np.any(w <= 0):
        raise ValueError("weights must be a positive vector matching the dimension")
    return w


def weighted_norm(v, weights=None) -> float:
    v = np.asarray(v, dtype=float)
    w = _weight_array(weights, v.shape[-1])
    return float(np.sqrt(np.sum(w * v * v, axis=-1)))


@dataclass(frozen=True)
class ProjectionResult:
    """A certified projection: the point is in the target set within tolerance."""

    point: np.ndarray
    distance: float
    method: str  # "closed_form" | "cutting_plane" | "subspace"
    iterations: int
    residual: float
    converged: bool = True


def dist_to_subspace(x, subspace: Subspace, weights=None) -> ProjectionResult:
    """Orthogonal projection onto the subspace under the (weighted) metric.

    The residual reported is the largest inner product of x - point with
    the orthonormalized basis, an exact orthogonality certificate up to
    rounding.
    """
    x = np.asarray([float(v) for v in x], dtype=float)
    w = _weight_array(weights, subspace.ambient_dim)
    if subspace.dim == 0:
        return ProjectionResult(
            point=np.zeros_like(x),
            distance=weighted_norm(x, w),
            method="subspace",
            iterations=0,
            residual=0.0,
        )
    basis = subspace.orthonormalized(w)
    coords = basis @ (w * x)
    point = coords @ basis
    resid = x - point
    residual = float(np.abs(basis @ (w * resid)).max())
    return ProjectionResult(
        point=point,
        distance=weighted_norm(resid, w),
        method="subspace",
        iterations=0,
        residual=residual,
    )


# ---------------------------------------------------------------------------
# cone projection


def _ldp(g_rows: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Least-distance program min |v| s.t. G v >= h, via one NNLS solve."""
    if h.size == 0 or h.max() <= 0:
        return np.zeros(g_rows.shape[1])
    e_mat = np.vstack([g_rows.T, h[None, :]])
    f = np.zeros(e_mat.shape[0])
    f[-1] = 1.0
    u, _ = nnls(e_mat, f)
    r = e_mat @ u - f
    if abs(r[-1]) < 1e-13:
        raise NumericalInconsistencyError("least-distance master problem is infeasible")
    return -r[:-1] / r[-1]


class _EigenOracle:
    """Eigenvalues and eigenvalue-sum supergradients for one float cone."""

    def __init__(self, cone: HyperbolicityCone):
        self.cone = cone.as_float()
        self.e = np.asarray(self.cone.e, dtype=float)
        d = self.cone.degree
        pe = float(self.cone.p.evaluate(self.e))
        # the sum of all eigenvalues is linear in the point; its gradient is
        # the coefficient vector of the next-to-top derivative, normalized
        lin = self.cone.derivs[d - 1]
        g = np.zeros(self.cone.num_vars)
        for exp, c in lin.terms.items():
            j = max(range(len(exp)), key=lambda i: exp[i])
            g[j] = float(c)
        self.total_gradient = g / (math.factorial(d - 1) * pe)
        self.grad_polys = [self.cone.p.partial_derivative(j) for j in range(self.cone.num_vars)]
        self.deriv1 = self.cone.derivs[1]

    def eigenvalues(self, y: np.ndarray) -> np.ndarray:
        # recentering along e (eigenvalue-sum zero) keeps companion roots
        # well conditioned far from the origin
        mean = float(self.total_gradient @ y) / self.cone.degree
        coeffs = np.array(
            [float(c) for c in self.cone.line_coeffs(y - mean * self.e).coeffs]
        )
        return mean + np.sort(-np.roots(coeffs[::-1]).real)

    def root_gradient(self, y: np.ndarray, lam: float) -> np.ndarray | None:
        """Gradient of one simple eigenvalue; None when it is too degenerate."""
        w_pt = lam * self.e - y
        denom = float(self.deriv1.evaluate(w_pt))
        scale = (
            float(self.cone.p.evaluate(self.e))
            * self.cone.degree
            * (1.0 + abs(lam) + float(np.abs(y).max())) ** max(self.cone.degree - 1, 0)
        )
        if abs(denom) <= 1e-11 * max(scale, 1.0):
            return None
        grad = np.array([float(g.evaluate(w_pt)) for g in self.grad_polys])
        return grad / denom

    def cuts(self, y: np.ndarray, lam: np.ndarray, inner_tol: float):
        """Supporting cuts (g, b) with g . v >= b from violated prefix sums.

        A prefix k is usable when a spectral gap separates eigenvalue k
        from k+1; its gradient is assembled from the complement (total sum
        minus the gradients of the eigenvalues above the cut), which stays
        stable while the small eigenvalues cluster near the boundary.
        Returns None when every violated prefix is too degenerate, in which
        case the caller perturbs the point and retries.
        """
        d = lam.size
        gap_tol = 1e-7 * (1.0 + np.abs(lam).max())
        prefix = np.cumsum(lam)
        cuts = []
        degenerate = False
        for k in range(1, d + 1):
            if prefix[k - 1] >= -inner_tol:
                continue
            if k < d and lam[k] - lam[k - 1] <= gap_tol:
                continue
            g = self.total_gradient.copy()
            ok = True
            for i in range(k, d):
                gi = self.root_gradient(y, lam[i])
                if gi is None:
                    ok = False
                    break
                g -= gi
            if not ok:
                degenerate = True
                continue
            cuts.append((g, float(g @ y - prefix[k - 1])))
        if not cuts and degenerate:
            return None
        return cuts


def project_to_cone(
    cone: HyperbolicityCone,
    x,
    projector=None,
    weights=None,
    max_iter: int = _MAX_ITER,
    seed: int = 0,
) -> ProjectionResult:
    """Projection of x onto the cone under the (weighted) Euclidean metric.

    With a registered closed-form ``projector`` the answer is direct.  The
    generic path runs the cutting-plane method, terminating once the
    constraint violation is at most the cone's feasibility tolerance and
    successive iterates move by at most its step tolerance; the final
    iterate is shifted along the hyperbolicity direction so its smallest
    eigenvalue is nonnegative (eigenvalues are additive along that
    direction), which certifies membership.  If the iteration cap is hit,
    the best feasible point found is returned flagged as non-converged.
    """
    x = np.asarray([float(v) for v in x], dtype=float)
    w = _weight_array(weights, cone.num_vars)
    if projector is not None:
        point = np.asarray(projector(x), dtype=float)
        return ProjectionResult(
            point=point,
            distance=weighted_norm(x - point, w),
            method="closed_form",
            iterations=0,
            residual=0.0,
        )
    fc = cone.as_float()
    if fc.degree == 0:
        return ProjectionResult(x.copy(), 0.0, "cutting_plane", 0, 0.0)
    oracle = _EigenOracle(fc)
    feas_tol = fc.tol.feas
    step_tol = fc.tol.step
    rng = np.random.default_rng(seed)

    def snapped(y: np.ndarray) -> tuple[np.ndarray, float]:
        lam_min = oracle.eigenvalues(y)[0]
        if lam_min < 0:
            y = y - lam_min * oracle.e
            lam_min = oracle.eigenvalues(y)[0]
        return y, max(0.0, -lam_min)

    lam = oracle.eigenvalues(x)
    scale = 1.0 + float(np.abs(lam).max())
    if lam[0] >= -feas_tol * scale:
        point, residual = (x.copy(), 0.0) if lam[0] >= 0 else snapped(x)
        return ProjectionResult(
            point=point,
            distance=weighted_norm(x - point, w),
            method="cutting_plane",
            iterations=0,
            residual=residual,
        )

    sw = np.sqrt(w)
    xhat = sw * x
    g_rows: list[np.ndarray] = []
    offsets: list[float] = []

    def add_cuts(y: np.ndarray, lam: np.ndarray) -> bool:
        got = oracle.cuts(y, lam, inner_tol=1e-14 * scale)
        attempts = 0
        while got is None and attempts < 5:
            # every violated prefix was spectrally degenerate; nudge and retry
            attempts += 1
            y_pert = y + 1e-9 * (1.0 + np.abs(y).max()) * rng.standard_normal(y.size)
            got = oracle.cuts(y_pert, oracle.eigenvalues(y_pert), inner_tol=0.0)
            y = y_pert
        if got is None:
            raise ConvergenceError("could not form a stable cut at a degenerate point")
        for g, b in got:
            g_rows.append(g / sw)
            offsets.append(b)
        del g_rows[:-_MAX_CUTS]
        del offsets[:-_MAX_CUTS]
        return bool(got)

    add_cuts(x, lam)
    y_prev = x
    best: tuple[float, np.ndarray, float] | None = None
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        g_mat = np.array(g_rows)
        h = np.array(offsets) - g_mat @ xhat
        v = _ldp(g_mat, h)
        y = (xhat + v) / sw
        lam = oracle.eigenvalues(y)
        violation = max(0.0, -float(lam[0]))
        step = weighted_norm(y - y_prev, w)
        y_prev = y
        if violation <= feas_tol * scale:
            cand, resid = snapped(y)
            dist = weighted_norm(x - cand, w)
            if best is None or dist < best[0]:
                best = (dist, cand, resid)
            if step <= step_tol * (1.0 + np.linalg.norm(y)):
                converged = True
                break
        if not add_cuts(y, lam) and violation <= feas_tol * scale:
            converged = True
            break
    if best is None:
        cand, resid = snapped(y_prev)
        best = (weighted_norm(x - cand, w), cand, resid)
    return ProjectionResult(
        point=best[1],
        distance=best[0],
        method="cutting_plane",
        iterations=iterations,
        residual=best[2],
        converged=converged,
    )


def feasible_shift(cone: HyperbolicityCone, x) -> np.ndarray:
    """Cheap feasible point: shift along e until the smallest eigenvalue is 0."""
    oracle = _EigenOracle(cone)
    x = np.asarray([float(v) for v in x], dtype=float)
    lam = oracle.eigenvalues(x)[0]
    return x - min(lam, 0.0) * oracle.e


def projection_certificate(
    cone: HyperbolicityCone,
    x,
    result: ProjectionResult,
    samples: int = 64,
    seed: int = 0,
    weights=None,
) -> float:
    """Largest inner product of x - point with unit feasible directions.

    For a correct projection this is at most ~0 (tolerance scaled): no
    feasible direction from the projected point may correlate positively
    with the residual.  Feasible points are generated by eigenvalue shifts
    of random Gaussians, plus the apex and the hyperbolicity direction.
    """
    x = np.asarray([float(v) for v in x], dtype=float)
    point = np.asarray(result.point, dtype=float)
    w = _weight_array(weights, cone.num_vars)
    resid = x - point
    nr = weighted_norm(resid, w)
    if nr <= _TINY_REL * (1.0 + weighted_norm(x, w)):
        return 0.0
    rng = np.random.default_rng(seed)
    fc = cone.as_float()
    probes = [np.zeros_like(x), np.asarray(fc.e, dtype=float)]
    scale = 1.0 + np.linalg.norm(x)
    for _ in range(samples):
        probes.append(feasible_shift(fc, scale * rng.standard_normal(x.size)))
    worst = -math.inf
    # directions below rounding scale are the point itself, not evidence
    floor = 1e-9 * (1.0 + weighted_norm(x, w) + weighted_norm(point, w))
    for y in probes:
        d = y - point
        nd = weighted_norm(d, w)
        if nd <= floor:
            continue
        worst = max(worst, float(np.sum(w * resid * d)) / nd)
    return worst


# ---------------------------------------------------------------------------
# face distances


class FaceDistance:
    """Distance to a face, computed inside its span.

    Two backends: a cataloged closed-form projector in the catalog's span
    coordinates (orthogonal basis with known squared norms), or the
    generic cutting-plane projector on the face's own cone expressed in an
    orthonormalized basis of the span.  Either way the coordinates are
    isometric to the ambient (weighted) metric on the span, so coordinate
    distances are ambient distances.
    """

    def __init__(
        self,
        face: FaceDescriptor,
        face_projector=None,
        catalog_rows=None,
        span_weights=None,
        weights=None,
    ):
        self.face = face
        n = face.parent.num_vars
        self.w = _weight_array(weights, n)
        self.ortho = face.span.orthonormalized(self.w)
        if face_projector is not None:
            rows = np.asarray(
                catalog_rows if catalog_rows is not None else face.span.matrix(), dtype=float
            )
            sw = np.asarray(
                span_weights
                if span_weights is not None
                else [float(np.sum(self.w * r * r)) for r in rows],
                dtype=float,
            )
            self.rows, self.sweights, self.projector = rows, sw, face_projector
            self.cone = None
        else:
            span_f = Subspace.from_rows(self.ortho, mode=MODE_FLOAT, ambient_dim=n)
            q = face.parent.derivs[face.m].as_float().subspace_restriction(span_f)
            z_coords = self.ortho @ (self.w * np.asarray([float(v) for v in face.z]))
            self.cone = new_cone(q, z_coords, samples=0, tol=face.parent.tol)
            self.rows = self.sweights = self.projector = None

    def sphere_points(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform samples on the unit sphere of the span (weighted metric)."""
        g = rng.standard_normal((count, self.ortho.shape[0]))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        return g @ self.ortho

    def distance(self, x) -> float:
        x = np.asarray([float(v) for v in x], dtype=float)
        if self.projector is not None:
            coords = (self.rows @ (self.w * x)) / self.sweights
            proj = np.asarray(self.projector(coords), dtype=float)
            return float(np.sqrt(np.sum(self.sweights * (coords - proj) ** 2)))
        coords = self.ortho @ (self.w * x)
        return project_to_cone(self.cone, coords).distance


# ---------------------------------------------------------------------------
# empirical error-bound estimates


@dataclass(frozen=True)
class AmenabilityEstimate:
    """Empirical face error-bound ratio: a lower bound on any true constant."""

    kappa_hat: float | None
    samples: int
    worst_point: tuple | None
    discarded: int
    radius_set: tuple
    seed: int
    kappa_by_radius: dict
    norm: str = "euclidean"
    ratios: tuple | None = None

    def to_json_dict(self) -> dict:
        return {
            "kappa_hat": self.kappa_hat,
            "samples": self.samples,
            "worst_point": list(self.worst_point) if self.worst_point else None,
            "discarded": self.discarded,
            "radius_set": list(self.radius_set),
            "seed": self.seed,
            "kappa_by_radius": {str(k): v for k, v in sorted(self.kappa_by_radius.items())},
            "norm": self.norm,
        }


def amenability_estimate(
    face: FaceDescriptor,
    samples: int = 1000,
    seed: int = 0,
    radius_set=(1.0,),
    parent_projector=None,
    face_projector=None,
    catalog_rows=None,
    span_weights=None,
    weights=None,
    keep_ratios: bool = False,
) -> AmenabilityEstimate:
    """Sample span points and maximize dist(x, face) / dist(x, cone).

    Points are drawn uniformly from the unit sphere of the face's span and
    rescaled by every radius in ``radius_set`` (the ratio is scale
    invariant, so agreement across radii is a self-check of the
    projectors).  Samples essentially on the cone are discarded: there the
    bound holds trivially and the ratio is 0/0.  When every sample is
    discarded the face fills its span near the sphere and the estimate
    reports that instead of failing.
    """
    fd = FaceDistance(
        face,
        face_projector=face_projector,
        catalog_rows=catalog_rows,
        span_weights=span_weights,
        weights=weights,
    )
    rng = np.random.default_rng(seed)
    unit = fd.sphere_points(samples, rng)
    parent = face.parent
    kappa: float | None = None
    worst = None
    discarded = 0
    used = 0
    ratios: list[float] = []
    kappa_by_radius: dict[float, float | None] = {}
    for radius in radius_set:
        kr: float | None = None
        for row in unit:
            x = radius * row
            dk = project_to_cone(parent, x, projector=parent_projector, weights=weights).distance
            if dk <= _TINY_REL * (1.0 + weighted_norm(x, fd.w)):
                discarded += 1
                continue
            df = fd.distance(x)
            ratio = df / dk
            used += 1
            if keep_ratios:
                ratios.append(ratio)
            if kr is None or ratio > kr:
                kr = ratio
            if kappa is None or ratio > kappa:
                kappa = ratio
                worst = tuple(float(v) for v in x)
        kappa_by_radius[float(radius)] = kr
    return AmenabilityEstimate(
        kappa_hat=kappa,
        samples=used,
        worst_point=worst,
        discarded=discarded,
        radius_set=tuple(float(r) for r in radius_set),
        seed=seed,
        kappa_by_radius=kappa_by_radius,
        norm="euclidean" if weights is None else "weighted-euclidean",
        ratios=tuple(ratios) if keep_ratios else None,
    )


@dataclass(frozen=True)
class LinearRegularityEstimate:
    """Empirical constant for dist(x, L /\\ K) <= k (dist(x, L) + dist(x, K))."""

    kappa_hat: float | None
    samples: int
    discarded: int
    worst_point: tuple | None
    seed: int
    norm: str = "euclidean"

    def __float__(self) -> float:
        return float("nan") if self.kappa_hat is None else self.kappa_hat

    def to_json_dict(self) -> dict:
        return {
            "kappa_hat": self.kappa_hat,
            "samples": self.samples,
            "discarded": self.discarded,
            "worst_point": list(self.worst_point) if self.worst_point else None,
            "seed": self.seed,
            "norm": self.norm,
        }


def linear_regularity_estimate(
    subspace: Subspace,
    cone: HyperbolicityCone,
    witness,
    samples: int = 200,
    seed: int = 0,
    projector=None,
    weights=None,
    max_pocs_iter: int = 500,
    require_interior: bool = True,
) -> LinearRegularityEstimate:
    """Sample the additive error bound for a subspace meeting the cone's interior.

    dist(x, L /\\ K) is evaluated by alternating projections refined until
    both feasibility residuals certify the iterate; since that point is
    (tolerance-)feasible, the distance to it upper-bounds the true one and
    the reported constant is a valid empirical lower bound.

    The interiority of the witness is the qualification under which a
    finite true constant is guaranteed; ``require_interior=False`` relaxes
    the check to plain membership for subspaces that only touch the
    boundary (the sampling itself is indifferent, but the reported
    constant then has no a-priori reason to stay bounded).
    """
    if require_interior:
        if not in_interior(cone, witness):
            raise ValueError("witness must be interior to the cone and inside the subspace")
    elif not member(cone, witness):
        raise ValueError("witness must belong to the cone")
    if not subspace.contains(witness):
        raise ValueError("witness must lie in the subspace")
    w = _weight_array(weights, cone.num_vars)
    rng = np.random.default_rng(seed)
    kappa: float | None = None
    worst = None
    discarded = 0
    used = 0
    fc = cone.as_float()
    for _ in range(samples):
        x = rng.standard_normal(cone.num_vars) * (1.0 + np.linalg.norm(np.asarray(witness, dtype=float)))
        dl = dist_to_subspace(x, subspace, weights=w)
        dk = project_to_cone(fc, x, projector=projector, weights=w)
        denom = dl.distance + dk.distance
        if denom <= _TINY_REL * (1.0 + weighted_norm(x, w)):
            discarded += 1
            continue
        y = x.copy()
        certified = False
        for _ in range(max_pocs_iter):
            y_l = dist_to_subspace(y, subspace, weights=w).point
            y_k = project_to_cone(fc, y_l, projector=projector, weights=w).point
            step = weighted_norm(y_k - y, w)
            y = y_k
            dl_res = dist_to_subspace(y, subspace, weights=w).distance
            if dl_res <= 1e-9 * (1.0 + np.linalg.norm(y)):
                certified = True
                break
            if step <= 1e-12 * (1.0 + np.linalg.norm(y)):
                break
        if not certified:
            raise ConvergenceError("alternating projections failed to certify feasibility")
        ratio = weighted_norm(x - y, w) / denom
        used += 1
        if kappa is None or ratio > kappa:
            kappa = ratio
            worst = tuple(float(v) for v in x)
    return LinearRegularityEstimate(
        kappa_hat=kappa,
        samples=used,
        discarded=discarded,
        worst_point=worst,
        seed=seed,
        norm="euclidean" if weights is None else "weighted-euclidean",
    )


@dataclass(frozen=True)
class ChainReport:
    """Per-sample distance chain behind the face error bound.

    For span points x the face distance is controlled by the distance to
    the derivative relaxation of the face's order (the witness is interior
    to it), and that distance never exceeds the distance to the parent
    cone, which contains it.  Violations of the per-sample sandwich are
    collected, not raised.
    """

    z_interior_ok: bool
    samples: int
    retained: int
    sandwich_violations: tuple
    kappa_relaxation: float | None
    kappa_parent: float | None
    seed: int

    @property
    def ok(self) -> bool:
        return self.z_interior_ok and not self.sandwich_violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json_dict(self) -> dict:
        return {
            "z_interior_ok": self.z_interior_ok,
            "samples": self.samples,
            "retained": self.retained,
            "sandwich_violations": [list(v) for v in self.sandwich_violations],
            "kappa_relaxation": self.kappa_relaxation,
            "kappa_parent": self.kappa_parent,
            "seed": self.seed,
            "ok": self.ok,
        }


def amenability_proof_path_check(
    face: FaceDescriptor,
    samples: int = 1000,
    seed: int = 0,
    parent_projector=None,
    face_projector=None,
    catalog_rows=None,
    span_weights=None,
    weights=None,
) -> ChainReport:
    """Numerically instantiate the distance chain that yields the face bound.

    Checks that the witness is interior to its derivative relaxation, and
    per sampled span point that dist(x, relaxation) <= dist(x, parent)
    within tolerance (the parent sits inside the relaxation); reports the
    empirical ratio constants against both the relaxation and the parent.
    """
    parent = face.parent
    relax = derivative_cone(parent, face.m)
    z_ok = in_interior(relax, face.z)
    fd = FaceDistance(
        face,
        face_projector=face_projector,
        catalog_rows=catalog_rows,
        span_weights=span_weights,
        weights=weights,
    )
    rng = np.random.default_rng(seed)
    pts = fd.sphere_points(samples, rng)
    relax_f = relax.as_float()
    violations = []
    kappa_rel: float | None = None
    kappa_par: float | None = None
    retained = 0
    for x in pts:
        dk = project_to_cone(parent, x, projector=parent_projector, weights=weights).distance
        drel = project_to_cone(relax_f, x, weights=weights).distance
        if drel > dk + 1e-6 * (1.0 + dk):
            violations.append(tuple(float(v) for v in x))
        tiny = _TINY_REL * (1.0 + weighted_norm(x, fd.w))
        if dk <= tiny:
            continue
        retained += 1
        df = fd.distance(x)
        if kappa_par is None or df / dk > kappa_par:
            kappa_par = df / dk
        if drel > tiny and (kappa_rel is None or df / drel > kappa_rel):
            kappa_rel = df / drel
    return ChainReport(
        z_interior_ok=z_ok,
        samples=samples,
        retained=retained,
        sandwich_violations=tuple(violations),
        kappa_relaxation=kappa_rel,
        kappa_parent=kappa_par,
        seed=seed,
    )
