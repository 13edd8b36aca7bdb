"""Hyperbolicity cones: validation, eigenvalue maps, membership, multiplicity.

A polynomial p homogeneous of degree d with p(e) > 0 is hyperbolic along e
when every line t -> p(te - x) has only real zeros; the associated closed
cone collects the x whose line polynomial has only nonnegative zeros.  The
equivalent inequality description

    p(x) >= 0,  D_e p(x) >= 0,  ...,  D_e^{d-1} p(x) >= 0

(successive directional derivatives along e) is what the membership oracle
evaluates: it is cheap and, for rational data, exact.  The eigenvalue route
(roots of the line polynomial) is kept as an independent cross-check.

Cones are immutable once built; the derivative polynomials D_e^0 p .. D_e^d p
are cached eagerly at construction and shared with derivative-relaxation
cones.  Randomized hyperbolicity validation takes an explicit seed and
records it, so every verdict is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    NotHyperbolicError,
    NumericalInconsistencyError,
)
from .polynomials import (
    MODE_FLOAT,
    MODE_RATIONAL,
    Polynomial,
    as_vector,
    poly_from_json_dict,
    poly_to_json_dict,
    vector_from_json,
    vector_to_json,
)
from .realroots import RootList, UnivariatePoly, Verdict, all_roots_real, real_roots

# denominator cap when rationalizing float sample points for exact certification
_RATIONALIZE_DEN = 10**6


@dataclass(frozen=True)
class Tolerances:
    """Float-mode tolerance bundle; rational mode ignores all of it."""

    zero_rel: float = 1e-10  # scaled zero band for derivative sign conditions
    imag_rel: float = 1e-8  # root realness and coefficient vanishing
    cluster_rel: float = 1e-6  # eigenvalue clustering
    feas: float = 1e-8  # projection constraint violation at termination
    step: float = 1e-10  # projection successive-iterate motion at termination


@dataclass(frozen=True)
class Certification:
    kind: str  # "unchecked" | "validated_exact" | "validated_probabilistic"
    samples: int = 0
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "samples": self.samples, "seed": self.seed}


@dataclass(frozen=True)
class MultiplicitySignature:
    """Order of vanishing of the line polynomial at 0, with the derivative values.

    For a cone member the zero block is exactly zero and the positive block
    strictly positive; the two blocks are the values D_e^k p(x) for k below
    and from the multiplicity, respectively.
    """

    m: int
    zero_block: tuple
    positive_block: tuple


@dataclass(frozen=True)
class HyperbolicityCone:
    p: Polynomial
    e: tuple
    derivs: tuple  # D_e^0 p .. D_e^d p
    tol: Tolerances = field(default_factory=Tolerances)
    certification: Certification = field(default_factory=lambda: Certification("unchecked"))

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    @property
    def degree(self) -> int:
        return self.p.degree

    @property
    def num_vars(self) -> int:
        return self.p.num_vars

    @property
    def mode(self) -> str:
        return self.p.mode

    def as_float(self) -> "HyperbolicityCone":
        if self.mode == MODE_FLOAT:
            return self
        cached = self._cache.get("as_float")
        if cached is None:
            cached = HyperbolicityCone(
                p=self.p.as_float(),
                e=tuple(float(v) for v in self.e),
                derivs=tuple(d.as_float() for d in self.derivs),
                tol=self.tol,
                certification=self.certification,
            )
            self._cache["as_float"] = cached
        return cached

    # -- raw evaluations ------------------------------------------------

    def derivative_values(self, x) -> tuple:
        x = as_vector(x, self.mode, self.num_vars)
        return tuple(d.evaluate(x) for d in self.derivs)

    def derivative_values_batch(self, points: np.ndarray) -> np.ndarray:
        """Array of shape (npoints, degree + 1) of D_e^k p values (float)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return np.column_stack([d.evaluate_batch(pts) for d in self.derivs])

    def line_coeffs(self, x) -> UnivariatePoly:
        """Coefficients of t -> p(x + te), from the cached derivatives."""
        x = as_vector(x, self.mode, self.num_vars)
        if self.mode == MODE_RATIONAL:
            coeffs = tuple(
                d.evaluate(x) / math.factorial(k) for k, d in enumerate(self.derivs)
            )
        else:
            coeffs = tuple(
                d.evaluate(x) / float(math.factorial(k)) for k, d in enumerate(self.derivs)
            )
        return UnivariatePoly(coeffs, mode=self.mode)

    def scaled_zero_tols(self, values, x) -> np.ndarray:
        """Per-derivative zero thresholds: zero_rel * max_j |v_j| * (1 + |x|^(d-k)).

        Homogeneity makes absolute thresholds meaningless, hence the norm
        power correction per derivative order.
        """
        v = np.abs(np.asarray([float(val) for val in values]))
        nx = float(np.linalg.norm(np.asarray([float(c) for c in x], dtype=float)))
        d = self.degree
        powers = np.array([1.0 + nx ** (d - k) for k in range(len(values))])
        return self.tol.zero_rel * v.max() * powers

    def to_json_dict(self) -> dict:
        return {
            "polynomial": poly_to_json_dict(self.p),
            "e": vector_to_json(self.e, self.mode),
            "certification": self.certification.to_json_dict(),
        }


def cone_from_json_dict(data: dict, tol: Tolerances | None = None) -> HyperbolicityCone:
    p = poly_from_json_dict(data["polynomial"])
    e = vector_from_json(data["e"], p.mode)
    cert = data.get("certification", {})
    samples = int(cert.get("samples", 0) or 0)
    return new_cone(
        p, e, samples=samples, seed=int(cert.get("seed", 0) or 0), tol=tol
    )


def _rationalize(x: np.ndarray) -> tuple:
    return tuple(Fraction(float(v)).limit_denominator(_RATIONALIZE_DEN) for v in x)


def new_cone(
    p: Polynomial,
    e,
    samples: int = 0,
    seed: int = 0,
    tol: Tolerances | None = None,
) -> HyperbolicityCone:
    """Validate (p, e) as a hyperbolic pair and build the cone.

    Rejects immediately when p(e) <= 0.  With ``samples`` > 0 the line
    polynomial through each of ``samples`` seeded standard Gaussian points
    is certified real rooted: by Sturm sequences on rationalized points in
    rational mode (verdicts are then proofs for the sampled lines), by
    companion-matrix eigenvalues in float mode.  ``samples`` = 0 skips the
    randomized check and marks the cone unchecked.

    Raises NotHyperbolicError with the witness point when a sampled line
    has a complex zero, and ConvergenceError when a float verdict lands in
    the inconclusive gray band.
    """
    tol = tol or Tolerances()
    e = as_vector(e, p.mode, p.num_vars)
    pe = p.evaluate(e)
    if pe <= 0:
        raise NotHyperbolicError(f"p(e) = {pe} is not positive")
    derivs = [p]
    for _ in range(p.degree):
        derivs.append(derivs[-1].directional_derivative(e))
    top = derivs[-1]
    expected = math.factorial(p.degree) * pe
    got = top.evaluate(e)  # degree 0, any point works
    if p.mode == MODE_RATIONAL:
        if got != expected:
            raise NumericalInconsistencyError(
                f"top derivative is {got}, expected {expected}"
            )
    elif not math.isclose(float(got), float(expected), rel_tol=1e-9):
        raise NumericalInconsistencyError(f"top derivative is {got}, expected {expected}")

    cert = Certification("unchecked")
    if samples > 0:
        rng = np.random.default_rng(seed)
        exact = p.mode == MODE_RATIONAL
        for _ in range(samples):
            xf = rng.standard_normal(p.num_vars)
            x = _rationalize(xf) if exact else xf
            u = p.line_restriction(x, e)
            verdict = all_roots_real(u, tol.imag_rel)
            if verdict is Verdict.NOT_REAL_ROOTED:
                raise NotHyperbolicError(
                    "sampled line polynomial has a complex zero", witness=x
                )
            if verdict is Verdict.INCONCLUSIVE:
                raise ConvergenceError(
                    f"realness inconclusive at sampled point {list(map(float, x))}"
                )
        cert = Certification(
            "validated_exact" if exact else "validated_probabilistic", samples, seed
        )
    return HyperbolicityCone(p=p, e=e, derivs=tuple(derivs), tol=tol, certification=cert)


def eigenvalue_mean(cone: HyperbolicityCone, x) -> float:
    """Average of the eigenvalues of x: a linear functional of the point."""
    d = cone.degree
    if d == 0:
        return 0.0
    top = cone.derivs[d - 1].evaluate(x)
    return float(top) / (math.factorial(d - 1) * float(cone.p.evaluate(cone.e)) * d)


def eigenvalues(cone: HyperbolicityCone, x) -> RootList:
    """Ascending zeros of t -> p(te - x), with multiplicities.

    Computed from the restriction to the line x + te: the two line
    polynomials agree up to the substitution t -> -t and a sign, so the
    eigenvalues are the negated roots of t -> p(x + te).  In float mode the
    point is first recentered along e so its eigenvalues sum to zero
    (eigenvalues are additive along e); companion-matrix roots of the
    centered polynomial are far better conditioned than of a shifted one.
    """
    mean = 0.0
    if cone.mode == MODE_FLOAT and cone.degree >= 1:
        x = np.asarray(x, dtype=float)
        mean = eigenvalue_mean(cone, x)
        x = x - mean * np.asarray(cone.e, dtype=float)
    u = cone.line_coeffs(x)
    roots = real_roots(u, cone.tol.imag_rel, cone.tol.cluster_rel)
    if cone.mode == MODE_FLOAT:
        return RootList(
            tuple(mean - r for r in reversed(roots.roots)),
            tuple(reversed(roots.multiplicities)),
        )
    return RootList(
        tuple(-r for r in reversed(roots.roots)),
        tuple(reversed(roots.multiplicities)),
    )


def _sign_member(cone: HyperbolicityCone, x, strict: bool) -> bool:
    values = cone.derivative_values(x)
    d = cone.degree
    if cone.mode == MODE_RATIONAL:
        if strict:
            return all(v > 0 for v in values[:d])
        return all(v >= 0 for v in values[:d])
    tols = cone.scaled_zero_tols(values, x)
    vals = np.asarray([float(v) for v in values[:d]])
    if strict:
        return bool(np.all(vals > tols[:d]))
    return bool(np.all(vals >= -tols[:d]))


def _eigen_member(cone: HyperbolicityCone, x, strict: bool) -> bool:
    if cone.mode == MODE_RATIONAL:
        from .realroots import (
            _deriv,
            _eval_frac,
            _exact_div,
            _gcd_poly,
            _primitive_int,
            _strip,
            _sturm_chain,
            _variations,
            _variations_at_inf,
        )

        u = cone.line_coeffs(x)
        c = _strip(_primitive_int(list(u.coeffs)))
        if len(c) <= 1:
            return True
        g = _gcd_poly(c, _strip(_deriv(list(c))))
        sqfree = _exact_div(c, g) if len(g) > 1 else c
        chain = _sturm_chain(sqfree)
        # eigenvalues are the negated roots of u, so membership means u has
        # no positive root; interior additionally excludes a root at 0
        va = _variations([_eval_frac(f, Fraction(0)) for f in chain])
        vb = _variations_at_inf(chain, positive=True)
        if va - vb > 0:
            return False
        if strict and _eval_frac(c, Fraction(0)) == 0:
            return False
        return True
    ev = eigenvalues(cone, x)
    if not ev.roots:
        return True
    lam = ev.as_float()
    band = cone.tol.imag_rel * (1.0 + np.abs(lam).max())
    if strict:
        return bool(lam.min() > band)
    return bool(lam.min() >= -band)


def member(cone: HyperbolicityCone, x, method: str = "signs") -> bool:
    """Closed-cone membership through the derivative sign conditions.

    ``method="eigen"`` switches to the independent eigenvalue route (the
    smallest zero of the line polynomial must be nonnegative), kept as a
    cross-check rather than the default since it needs root extraction.
    """
    if method == "signs":
        return _sign_member(cone, x, strict=False)
    if method == "eigen":
        return _eigen_member(cone, x, strict=False)
    raise ValueError(f"unknown membership method {method!r}")


def in_interior(cone: HyperbolicityCone, x, method: str = "signs") -> bool:
    """Strict version of :func:`member` (all sign conditions strictly positive)."""
    if method == "signs":
        return _sign_member(cone, x, strict=True)
    if method == "eigen":
        return _eigen_member(cone, x, strict=True)
    raise ValueError(f"unknown membership method {method!r}")


def membership_margin(cone: HyperbolicityCone, x) -> float:
    """Smallest derivative sign condition in scaled-tolerance units (float).

    Values >= -1 mean member, > +1 interior; magnitudes <= 1 flag a point
    inside the numerical boundary band where verdicts are unreliable.
    """
    fc = cone.as_float()
    values = fc.derivative_values(x)
    d = fc.degree
    if d == 0:
        return math.inf
    tols = fc.scaled_zero_tols(values, x)
    vals = np.asarray(values[:d], dtype=float)
    return float(np.min(vals / tols[:d]))


def member_batch(cone: HyperbolicityCone, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized float membership for many points: (verdicts, margins)."""
    fc = cone.as_float()
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = fc.degree
    values = fc.derivative_values_batch(pts)
    if d == 0:
        return np.ones(len(pts), dtype=bool), np.full(len(pts), np.inf)
    norms = np.linalg.norm(pts, axis=1)
    powers = np.array([[1.0 + nx ** (d - k) for k in range(d)] for nx in norms])
    tols = fc.tol.zero_rel * np.abs(values).max(axis=1, keepdims=True) * powers
    margins = np.min(values[:, :d] / tols, axis=1)
    return margins >= -1.0, margins


def multiplicity(cone: HyperbolicityCone, x) -> MultiplicitySignature:
    """Order of vanishing of the line polynomial at zero, with value blocks.

    The multiplicity is the first k with D_e^k p(x) nonzero (up to the
    scaled tolerance in float mode).  For points of the cone the remaining
    block must be strictly positive; when rounding destroys that pattern a
    NumericalInconsistencyError is raised rather than returning a signature
    that contradicts the structure theory.
    """
    values = cone.derivative_values(x)
    d = cone.degree
    if cone.mode == MODE_RATIONAL:
        nonzero = [k for k, v in enumerate(values) if v != 0]
        if not nonzero:
            raise NumericalInconsistencyError("all derivative values vanish")
        m = nonzero[0]
        if member(cone, x) and any(v <= 0 for v in values[m:]):
            raise NumericalInconsistencyError(
                f"multiplicity signature of a member is not zero-then-positive: {values}"
            )
    else:
        tols = cone.scaled_zero_tols(values, x)
        vals = np.asarray([float(v) for v in values])
        big = np.nonzero(np.abs(vals) > tols)[0]
        if big.size == 0:
            raise NumericalInconsistencyError("all derivative values vanish")
        m = int(big[0])
        if member(cone, x) and not np.all(vals[m:] > -tols[m:]):
            raise NumericalInconsistencyError(
                f"multiplicity signature of a member is not zero-then-positive: {values}"
            )
    return MultiplicitySignature(m, tuple(values[:m]), tuple(values[m:]))


def derivative_cone(cone: HyperbolicityCone, order: int) -> HyperbolicityCone:
    """The relaxation cone of D_e^order p along the same direction.

    Order 0 returns the cone itself and order d the whole space (the cone
    of the positive constant D_e^d p, whose sign conditions are vacuous).
    Derivative caches are sliced from the parent, never recomputed.
    """
    if order < 0 or order > cone.degree:
        raise ValueError(f"derivative order {order} outside 0..{cone.degree}")
    if order == 0:
        return cone
    return HyperbolicityCone(
        p=cone.derivs[order],
        e=cone.e,
        derivs=cone.derivs[order:],
        tol=cone.tol,
        certification=cone.certification,
    )


@dataclass(frozen=True)
class GardingReport:
    """Outcome of the direction-invariance check; truthy when no disagreement."""

    ok: bool
    checked: int
    within_band: int
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def garding_invariance_check(
    cone: HyperbolicityCone, z, samples: int = 200, seed: int = 0
) -> GardingReport:
    """Rebuild the cone along an interior direction z and compare memberships.

    Membership must not depend on which interior direction defines the cone;
    this samples Gaussian points and reports the first disagreement outside
    the numerical boundary band (float mode) as a witness.  Points whose
    margins fall inside the band for either cone are skipped and counted.
    """
    z = as_vector(z, cone.mode, cone.num_vars)
    if not in_interior(cone, z):
        raise ValueError("direction z must be interior to the cone")
    other = new_cone(cone.p, z, samples=samples, seed=seed, tol=cone.tol)
    rng = np.random.default_rng(seed + 1)
    exact = cone.mode == MODE_RATIONAL
    within_band = 0
    for _ in range(samples):
        xf = rng.standard_normal(cone.num_vars)
        x = _rationalize(xf) if exact else xf
        m1 = member(cone, x)
        m2 = member(other, x)
        if m1 != m2:
            if not exact:
                band1 = abs(membership_margin(cone, x)) <= 1.0
                band2 = abs(membership_margin(other, x)) <= 1.0
                if band1 or band2:
                    within_band += 1
                    continue
            return GardingReport(False, samples, within_band, witness=tuple(x))
    return GardingReport(True, samples, within_band)
