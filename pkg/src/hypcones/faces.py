"""Faces of hyperbolicity cones and intersections of cones.

A face of the cone is pinned down by a pair (z, span): a point z in its
relative interior and the linear span of the face.  With m the order of
vanishing of the line polynomial at z, the face is exactly the set of
points of span lying in the m-th derivative relaxation, and the
restriction q of D_e^m p to the span is itself hyperbolic along z with the
face as its cone.  The routines here construct such descriptors, verify
the representation by sampling, recover the span from z alone, and build
intersection cones out of the product of the restricted derivatives.

Face descriptors never enumerate the face lattice; everything is anchored
at explicit witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _linalg
from .cones import (
    HyperbolicityCone,
    derivative_cone,
    in_interior,
    member,
    member_batch,
    membership_margin,
    multiplicity,
    new_cone,
    cone_from_json_dict,
)
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    NotHyperbolicError,
    NumericalInconsistencyError,
)
from .polynomials import (
    MODE_RATIONAL,
    Polynomial,
    Subspace,
    as_vector,
    poly_from_json_dict,
    poly_to_json_dict,
    vector_from_json,
    vector_to_json,
)

_BIDIRECTION_EPS0 = 1.0
_BIDIRECTION_EPS_MIN = 1e-12
_FLOAT_VANISH_SAMPLES = 200


@dataclass(frozen=True)
class FaceDescriptor:
    """A verified (witness, span) description of a face.

    Invariants established at construction: z is a member with multiplicity
    m and lies in the interior of the m-th derivative relaxation; every
    lower derivative vanishes identically on the span; q is that relaxation
    polynomial restricted to span coordinates and is positive at z.
    """

    parent: HyperbolicityCone
    z: tuple
    m: int
    span: Subspace
    q: Polynomial
    z_coords: tuple

    @property
    def dim(self) -> int:
        return self.span.dim


def _vanishes_on_span(p: Polynomial, span: Subspace, seed: int = 0) -> bool:
    """Identical vanishing of p on the span.

    Exact mode restricts symbolically, which is the source of truth; float
    mode falls back to sampled evaluation with a scaled tolerance.
    """
    if p.mode == MODE_RATIONAL:
        return p.subspace_restriction(span).is_zero
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((_FLOAT_VANISH_SAMPLES, span.dim)) @ span.matrix()
    vals = p.evaluate_batch(pts)
    scale = max(1.0, float(np.abs(pts).max()) ** p.degree) * max(
        1.0, max(abs(float(c)) for c in p.terms.values()) if p.terms else 1.0
    )
    return bool(np.all(np.abs(vals) <= 1e-9 * scale))


def make_face(cone: HyperbolicityCone, z, span: Subspace, seed: int = 0) -> FaceDescriptor:
    """Build and verify a face descriptor from a witness and its span.

    Rejects when z is outside the cone, when some derivative of order below
    the multiplicity of z fails to vanish identically on the span (the span
    is then not the span of the face of z), or when z is not interior to
    the relaxation at that multiplicity.
    """
    z = as_vector(z, cone.mode, cone.num_vars)
    if span.ambient_dim != cone.num_vars:
        raise DimensionMismatchError("span ambient dimension does not match the cone")
    if not member(cone, z):
        raise ValueError("witness z is not a member of the cone")
    if not span.contains(z):
        raise ValueError("witness z is not inside the proposed span")
    m = multiplicity(cone, z).m
    for k in range(m):
        if not _vanishes_on_span(cone.derivs[k], span, seed=seed):
            raise ValueError(
                f"derivative of order {k} does not vanish identically on the span; "
                "the span is larger than the face of z"
            )
    if not in_interior(derivative_cone(cone, m), z):
        raise ValueError("witness z is not interior to the derivative relaxation of its order")
    q = cone.derivs[m].subspace_restriction(span)
    z_coords = span.coords(z)
    qz = q.evaluate(z_coords)
    if not (qz > 0 if cone.mode == MODE_RATIONAL else float(qz) > 0.0):
        raise NumericalInconsistencyError(
            f"restricted relaxation polynomial is not positive at the witness: {qz}"
        )
    return FaceDescriptor(parent=cone, z=tuple(z), m=m, span=span, q=q, z_coords=tuple(z_coords))


@dataclass(frozen=True)
class FaceVerificationReport:
    """Sampling evidence that span /\\ relaxation really is the face.

    A violation is a sampled span point on which membership in the
    relaxation and membership in the parent cone disagree outside the
    numerical boundary band, or a witness that fails the interiority
    recheck.  ``ok`` is True when nothing was found.
    """

    samples: int
    m: int
    z_interior_ok: bool
    violations: tuple = ()
    band_skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.z_interior_ok and not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json_dict(self) -> dict:
        return {
            "samples": self.samples,
            "m": self.m,
            "z_interior_ok": self.z_interior_ok,
            "band_skipped": self.band_skipped,
            "violations": [list(map(float, v)) for v in self.violations],
            "ok": self.ok,
        }


def verify_face_representation(
    face: FaceDescriptor,
    samples: int = 10_000,
    seed: int = 0,
    m_override: int | None = None,
) -> FaceVerificationReport:
    """Sample the span and check (point in relaxation) <=> (point in parent).

    ``m_override`` swaps in a deliberately wrong relaxation order, the
    negative control: on a nontrivial face it must produce violations,
    either sampled ones or a failed witness interiority recheck.
    """
    m = face.m if m_override is None else m_override
    if m < 0 or m > face.parent.degree:
        raise ValueError(f"relaxation order {m} outside 0..{face.parent.degree}")
    relax = derivative_cone(face.parent, m)
    z_ok = in_interior(relax, face.z)
    rng = np.random.default_rng(seed)
    basis = face.span.matrix()
    pts = rng.standard_normal((samples, face.span.dim)) @ basis
    in_relax, margin_relax = member_batch(relax, pts)
    in_parent, margin_parent = member_batch(face.parent, pts)
    disagree = np.nonzero(in_relax != in_parent)[0]
    exact = face.parent.mode == MODE_RATIONAL
    violations = []
    band_skipped = 0
    for idx in disagree:
        in_band = abs(margin_relax[idx]) <= 1.0 or abs(margin_parent[idx]) <= 1.0
        if exact:
            # settle the verdict exactly on the rationalized sample point
            xr = tuple(Fraction(float(v)).limit_denominator(10**9) for v in pts[idx])
            if member(relax, xr) == member(face.parent, xr):
                band_skipped += 1
                continue
            violations.append(tuple(float(v) for v in pts[idx]))
        elif in_band:
            band_skipped += 1
        else:
            violations.append(tuple(float(v) for v in pts[idx]))
    return FaceVerificationReport(
        samples=samples,
        m=m,
        z_interior_ok=z_ok,
        violations=tuple(violations),
        band_skipped=band_skipped,
    )


def face_as_cone(face: FaceDescriptor, samples: int = 1000, seed: int = 0) -> HyperbolicityCone:
    """The face as a hyperbolicity cone in span coordinates.

    The restricted relaxation polynomial is guaranteed hyperbolic along the
    witness coordinates, so a validation failure here means tolerances
    broke down, not mathematics.
    """
    try:
        return new_cone(face.q, face.z_coords, samples=samples, seed=seed, tol=face.parent.tol)
    except (NotHyperbolicError, ConvergenceError) as exc:
        raise NumericalInconsistencyError(
            f"face cone failed hyperbolicity validation: {exc}"
        ) from exc


# ---------------------------------------------------------------------------
# span discovery


@dataclass(frozen=True)
class SpanDiscovery:
    """Surviving span candidate with the confidence record of the search."""

    span: Subspace
    m: int
    kernel_dim: int  # dimension of the gradient-kernel candidate
    hessian_refined: bool
    directions_tested: int
    epsilons: tuple  # accepted bidirection step per final basis direction
    trivial_interior: bool = False


def _snap_direction(d: np.ndarray) -> tuple:
    """Rationalize a float direction, max-normalized first.

    Scaling the largest entry to exactly 1 lets limit_denominator recover
    clean rationals (equal entries stay equal); without it the last-bit
    noise of an orthonormalization turns boundary-aligned directions into
    slightly off-span ones that an exact membership test then rejects.
    """
    d = np.asarray(d, dtype=float)
    scale = np.abs(d).max()
    return tuple(Fraction(float(v / scale)).limit_denominator(10**9) for v in d)


def _bidirection_eps(cone: HyperbolicityCone, z, d: np.ndarray) -> float | None:
    """Largest probed step eps with z +- eps*d both members; None if none found.

    Halving search from 1 downward.  For rational cones the direction is
    snapped to a rational and membership is exact, shrinking to 1e-12.  For
    float cones membership is band-tolerant, and the search stops at 1e-4:
    below that a genuine quadratic boundary violation sinks beneath the
    scaled zero band and every direction would pass vacuously.
    """
    exact = cone.mode == MODE_RATIONAL
    if exact:
        z = as_vector(z, MODE_RATIONAL, cone.num_vars)
        dr = _snap_direction(d)
        eps = Fraction(1)
        while eps >= Fraction(1, 10**12):
            plus = tuple(zi + eps * di for zi, di in zip(z, dr))
            minus = tuple(zi - eps * di for zi, di in zip(z, dr))
            if member(cone, plus) and member(cone, minus):
                return float(eps)
            eps /= 2
        return None
    zf = np.asarray(z, dtype=float)
    df = np.asarray(d, dtype=float) / max(np.abs(d).max(), 1e-300)
    eps = _BIDIRECTION_EPS0
    while eps >= 1e-4:
        if (
            membership_margin(cone, zf + eps * df) >= -1.0
            and membership_margin(cone, zf - eps * df) >= -1.0
        ):
            return eps
        eps /= 2
    return None


def _hessian_matrix(p: Polynomial, x: np.ndarray) -> np.ndarray:
    pf = p.as_float()
    n = p.num_vars
    h = np.zeros((n, n))
    for i in range(n):
        pi = pf.partial_derivative(i)
        for j in range(i, n):
            h[i, j] = h[j, i] = pi.partial_derivative(j).evaluate(x)
    return h


def discover_span(
    cone: HyperbolicityCone,
    z,
    seed: int = 0,
    rotations: int = 3,
) -> SpanDiscovery:
    """Heuristic recovery of the span of the face whose relative interior holds z.

    Pipeline: start from the intersection of the kernels of the gradients
    of the vanishing derivatives at z (those gradients annihilate the span);
    shrink it by intersecting with kernels of the same derivatives' Hessian
    forms restricted to the candidate whenever those forms are semidefinite
    (the span sits inside their zero sets, and the gradient kernel alone is
    strictly larger already for second-order boundary curvature); finally
    prune and confirm with the two-sided membership test z +- eps*d, probing
    every basis direction and a few random rotations of the basis.

    Interior witnesses short-circuit to the whole space.  Raises
    ConvergenceError when the confirmation stage cannot separate the
    candidate at tolerance; the result is a heuristic validated against
    cataloged fixture faces, not a certificate.
    """
    z = as_vector(z, cone.mode, cone.num_vars)
    if not member(cone, z):
        raise ValueError("z is not a member of the cone")
    n = cone.num_vars
    if in_interior(cone, z):
        return SpanDiscovery(
            span=Subspace.whole_space(n, cone.mode),
            m=0,
            kernel_dim=n,
            hessian_refined=False,
            directions_tested=0,
            epsilons=(),
            trivial_interior=True,
        )
    m = multiplicity(cone, z).m
    exact = cone.mode == MODE_RATIONAL

    # stage 1: gradient kernels (echelon-structured basis in exact mode)
    if exact:
        grads = [list(cone.derivs[k].gradient(z)) for k in range(m)]
        grads = [g for g in grads if any(v != 0 for v in g)]
        rows = _linalg.nullspace_exact(grads, n)
        w_rows = np.array([[float(v) for v in r] for r in rows]) if rows else np.zeros((0, n))
        exact_rows: list[tuple] | None = list(rows)
    else:
        zf = np.asarray(z, dtype=float)
        grads = np.array([cone.derivs[k].as_float().gradient(zf) for k in range(m)])
        scale = np.abs(grads).max(axis=1, keepdims=True)
        grads = grads[(scale > 1e-12).ravel()]
        w_rows = _linalg.nullspace_float(grads) if len(grads) else np.eye(n)
        exact_rows = None
    kernel_dim = len(w_rows)

    # stage 2: Hessian-kernel refinement on the candidate
    zf = np.asarray([float(v) for v in z], dtype=float)
    hessian_refined = False
    for k in range(m):
        if len(w_rows) == 0:
            break
        h = _hessian_matrix(cone.derivs[k], zf)
        r = w_rows @ h @ w_rows.T
        eig, vec = np.linalg.eigh(r)
        scale = max(1.0, np.abs(eig).max())
        semidefinite = bool(np.all(eig >= -1e-9 * scale)) or bool(np.all(eig <= 1e-9 * scale))
        if not semidefinite:
            continue  # zero set is not a subspace; leave it to the pruning stage
        kernel = np.abs(eig) <= 1e-9 * scale
        if kernel.all():
            continue
        w_rows = vec[:, kernel].T @ w_rows
        hessian_refined = True
        exact_rows = None
    if hessian_refined and len(w_rows):
        w_rows = _linalg.orthonormal_rows(w_rows)

    # stage 3: bidirection pruning of basis directions
    directions_tested = 0

    def prune(rows: np.ndarray) -> tuple[np.ndarray, list[float]]:
        nonlocal directions_tested
        keep, eps_list = [], []
        for row in rows:
            directions_tested += 1
            eps = _bidirection_eps(cone, z, row)
            if eps is not None:
                keep.append(row)
                eps_list.append(eps)
        return np.array(keep) if keep else np.zeros((0, n)), eps_list

    w_rows, eps_list = prune(w_rows)

    # stage 4: confirmation with random rotations of the surviving basis
    rng = np.random.default_rng(seed)
    for _ in range(rotations if len(w_rows) > 1 else 0):
        gauss = rng.standard_normal((len(w_rows), len(w_rows)))
        qmat, _ = np.linalg.qr(gauss)
        for row in qmat @ w_rows:
            directions_tested += 1
            if _bidirection_eps(cone, z, row) is None:
                raise ConvergenceError(
                    "span candidate failed a rotated bidirection test; "
                    "cannot separate the span at tolerance"
                )

    if exact and exact_rows is not None and len(exact_rows) == len(w_rows):
        span = Subspace.from_rows(exact_rows, mode=MODE_RATIONAL, ambient_dim=n)
    elif exact:
        span = Subspace.from_rows(
            [_snap_direction(row) for row in w_rows], mode=MODE_RATIONAL, ambient_dim=n
        )
    else:
        span = Subspace.from_rows(w_rows, mode=cone.mode, ambient_dim=n)

    # exact necessary condition: the vanishing derivatives vanish on the span
    if exact:
        for k in range(m):
            if not cone.derivs[k].subspace_restriction(span).is_zero:
                raise ConvergenceError(
                    f"span candidate does not annihilate the order-{k} derivative; "
                    "discovery failed at tolerance"
                )
    return SpanDiscovery(
        span=span,
        m=m,
        kernel_dim=kernel_dim,
        hessian_refined=hessian_refined,
        directions_tested=directions_tested,
        epsilons=tuple(eps_list),
    )


@dataclass(frozen=True)
class MultConstancyReport:
    """Relative-interior sampling of a face against the parent multiplicity."""

    ok: bool
    samples: int
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def mult_constancy_check(
    face: FaceDescriptor, samples: int = 200, seed: int = 0
) -> MultConstancyReport:
    """Every relative-interior point of the face must share the witness multiplicity.

    Points are drawn as small perturbations of the witness inside the span
    and kept when interior to the face cone; rejection happening every time
    means the sampler cannot reach the relative interior and is an error.
    """
    fc = face_as_cone(face, samples=0)
    rng = np.random.default_rng(seed)
    exact = face.parent.mode == MODE_RATIONAL
    zc = np.asarray([float(v) for v in face.z_coords], dtype=float)
    scale = 0.25 * (1.0 + np.linalg.norm(zc))
    accepted = 0
    attempts = 0
    while accepted < samples and attempts < 50 * samples:
        attempts += 1
        coords = zc + scale * rng.standard_normal(face.span.dim)
        if exact:
            coords = tuple(Fraction(float(v)).limit_denominator(10**6) for v in coords)
        if not in_interior(fc, coords):
            continue
        accepted += 1
        x = face.span.from_coords(coords)
        got = multiplicity(face.parent, x).m
        if got != face.m:
            return MultConstancyReport(False, accepted, witness=tuple(map(float, x)))
    if accepted == 0:
        raise ConvergenceError("could not sample the relative interior of the face")
    return MultConstancyReport(True, accepted)


# ---------------------------------------------------------------------------
# intersections


@dataclass(frozen=True)
class ConeIntersection:
    """Intersection of two hyperbolicity cones, presented inside a subspace.

    ``cone`` is the hyperbolicity cone of the product of the two restricted
    derivative polynomials on ``span``; as a set of ambient points (mapped
    through the span basis) it equals the intersection of the parents.
    """

    cone: HyperbolicityCone
    span: Subspace
    z_coords: tuple
    face1: FaceDescriptor
    face2: FaceDescriptor

    def member_ambient(self, x) -> bool:
        """Membership of an ambient point; points outside the span are outside."""
        if not self.span.contains(x):
            return False
        return member(self.cone, self.span.coords(x))


def intersect(
    cone1: HyperbolicityCone,
    cone2: HyperbolicityCone,
    z,
    samples: int = 500,
    seed: int = 0,
) -> ConeIntersection:
    """Present the intersection of two cones as a hyperbolicity cone.

    ``z`` must witness the relative interior of the intersection (finding
    one is a conic feasibility problem left to the caller).  The minimal
    faces of each parent containing the intersection are recovered through
    z, their restricted polynomials multiplied (in ambient variables), and
    the product restricted to the intersection of the two face spans; the
    result is hyperbolic along z there.
    """
    if cone1.num_vars != cone2.num_vars:
        raise DimensionMismatchError("cones live in different ambient spaces")
    if not member(cone1, z) or not member(cone2, z):
        raise ValueError("witness z must belong to both cones")
    d1 = discover_span(cone1, z, seed=seed)
    d2 = discover_span(cone2, z, seed=seed)
    f1 = make_face(cone1, z, d1.span, seed=seed)
    f2 = make_face(cone2, z, d2.span, seed=seed)
    span = d1.span.intersect(d2.span)
    if span.dim == 0:
        raise ValueError("face spans intersect trivially; the intersection is the origin")
    product = cone1.derivs[f1.m] * cone2.derivs[f2.m]
    restricted = product.subspace_restriction(span)
    z_coords = span.coords(z)
    try:
        icone = new_cone(restricted, z_coords, samples=samples, seed=seed, tol=cone1.tol)
    except (NotHyperbolicError, ConvergenceError) as exc:
        raise NumericalInconsistencyError(
            f"intersection cone failed hyperbolicity validation: {exc}"
        ) from exc
    return ConeIntersection(cone=icone, span=span, z_coords=tuple(z_coords), face1=f1, face2=f2)


# ---------------------------------------------------------------------------
# face files


def face_to_json_dict(face: FaceDescriptor) -> dict:
    return {
        "cone": face.parent.to_json_dict(),
        "z": vector_to_json(face.z, face.parent.mode),
        "span": [vector_to_json(row, face.parent.mode) for row in face.span.basis],
        "m": face.m,
        "q": poly_to_json_dict(face.q),
        "z_coords": vector_to_json(face.z_coords, face.parent.mode),
    }


def face_from_json_dict(data: dict) -> FaceDescriptor:
    """Rebuild a face descriptor from its file form, re-verifying everything.

    The stored multiplicity and restricted polynomial must match what the
    verification recomputes; a mismatch means the file is stale or corrupt.
    """
    parent = cone_from_json_dict(data["cone"])
    z = vector_from_json(data["z"], parent.mode)
    span = Subspace.from_rows(
        [vector_from_json(r, parent.mode) for r in data["span"]],
        mode=parent.mode,
        ambient_dim=parent.num_vars,
    )
    face = make_face(parent, z, span)
    if face.m != int(data["m"]):
        raise ValueError(f"stored multiplicity {data['m']} does not match recomputed {face.m}")
    stored_q = poly_from_json_dict(data["q"])
    if parent.mode == MODE_RATIONAL and stored_q != face.q:
        raise ValueError("stored restricted polynomial does not match the recomputed one")
    return face
