"""Sparse homogeneous multivariate polynomials and linear subspaces.

A polynomial in n variables is stored as a mapping from exponent tuples
(length n, entries summing to the degree) to nonzero coefficients:

    x1*x2*x3        ->  {(1, 1, 1): 1}
    x1^2 - x2^2     ->  {(2, 0): 1, (0, 2): -1}

Two coefficient modes exist.  Mode "rational" keeps fractions.Fraction
coefficients and makes every arithmetic result and sign decision exact;
it is the default everywhere a membership or vanishing decision matters.
Mode "float" trades exactness for numpy-backed speed on large sample
sweeps.  Values are immutable after construction and safe to share across
threads.

The zero polynomial is representable (empty term map) and carries its
degree as declared metadata, since restricting a polynomial to a subspace
can legitimately produce it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _linalg
from .errors import DimensionMismatchError, HomogeneityError, ModeMismatchError
from .realroots import UnivariatePoly

MODE_RATIONAL = "rational"
MODE_FLOAT = "float"

Exponent = tuple[int, ...]


def _check_mode(mode: str) -> str:
    if mode not in (MODE_RATIONAL, MODE_FLOAT):
        raise ValueError(f"unknown coefficient mode {mode!r}")
    return mode


def as_scalar(value, mode: str):
    """Coerce a number to the scalar type of the given mode."""
    if mode == MODE_RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            return Fraction(value)  # exact binary expansion
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to a rational scalar")
    return float(value)


def as_vector(x, mode: str, dim: int | None = None):
    """Coerce a sequence to a mode vector: Fraction tuple or float ndarray."""
    if mode == MODE_RATIONAL:
        vec = tuple(as_scalar(v, mode) for v in x)
    else:
        vec = np.asarray(x, dtype=float)
        if vec.ndim != 1:
            raise DimensionMismatchError(f"expected a vector, got shape {vec.shape}")
    if dim is not None and len(vec) != dim:
        raise DimensionMismatchError(f"expected a vector of length {dim}, got {len(vec)}")
    return vec


def format_scalar(value, mode: str):
    if mode == MODE_RATIONAL:
        f = as_scalar(value, mode)
        return f"{f.numerator}/{f.denominator}"
    return float(value)


def parse_scalar(value, mode: str):
    if mode == MODE_RATIONAL:
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, (int, float)):
            return Fraction(value)
        raise TypeError(f"cannot parse rational coefficient from {value!r}")
    return float(value)


@dataclass(frozen=True)
class Polynomial:
    """Sparse homogeneous polynomial; construct via :meth:`from_terms`."""

    num_vars: int
    degree: int
    mode: str
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    # -- construction -------------------------------------------------

    @classmethod
    def from_terms(
        cls,
        num_vars: int,
        terms: Mapping[Sequence[int], object],
        mode: str = MODE_RATIONAL,
        degree: int | None = None,
    ) -> "Polynomial":
        """Build a polynomial from an exponent -> coefficient mapping.

        Zero coefficients are dropped.  Every exponent tuple must have
        length ``num_vars`` and the same entry sum; that common sum is the
        degree.  For an empty mapping the degree must be passed explicitly.
        """
        _check_mode(mode)
        if num_vars < 1:
            raise ValueError("num_vars must be positive")
        clean: dict[Exponent, object] = {}
        inferred: int | None = None
        for exp, coef in terms.items():
            exp = tuple(int(k) for k in exp)
            if len(exp) != num_vars:
                raise DimensionMismatchError(
                    f"exponent {exp} has length {len(exp)}, expected {num_vars}"
                )
            if any(k < 0 for k in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_scalar(coef, mode)
            if c == 0:
                continue
            total = sum(exp)
            if inferred is None:
                inferred = total
            elif total != inferred:
                raise HomogeneityError(
                    f"mixed total degrees {inferred} and {total}; polynomial must be homogeneous"
                )
            clean[exp] = clean.get(exp, as_scalar(0, mode)) + c
        clean = {e: c for e, c in clean.items() if c != 0}
        if not clean:
            if inferred is None and degree is None:
                raise ValueError("zero polynomial needs an explicit degree")
            deg = degree if degree is not None else inferred
        else:
            deg = inferred
            if degree is not None and degree != inferred:
                raise HomogeneityError(
                    f"declared degree {degree} does not match term degree {inferred}"
                )
        return cls(num_vars=num_vars, degree=int(deg), mode=mode, terms=clean)

    @classmethod
    def zero(cls, num_vars: int, degree: int, mode: str = MODE_RATIONAL) -> "Polynomial":
        return cls.from_terms(num_vars, {}, mode=mode, degree=degree)

    @classmethod
    def constant(cls, num_vars: int, value, mode: str = MODE_RATIONAL) -> "Polynomial":
        return cls.from_terms(num_vars, {(0,) * num_vars: value}, mode=mode, degree=0)

    @classmethod
    def coordinate(cls, num_vars: int, index: int, mode: str = MODE_RATIONAL) -> "Polynomial":
        exp = [0] * num_vars
        exp[index] = 1
        return cls.from_terms(num_vars, {tuple(exp): 1}, mode=mode)

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in graded-lexicographic order (descending), the serialization order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def _arrays(self):
        """Cached (exponent matrix, coefficient vector) for vectorized float work."""
        cached = self._cache.get("arrays")
        if cached is None:
            items = self.sorted_terms()
            if items:
                exps = np.array([e for e, _ in items], dtype=np.int64)
                coefs = np.array([float(c) for _, c in items], dtype=float)
            else:
                exps = np.zeros((0, self.num_vars), dtype=np.int64)
                coefs = np.zeros(0, dtype=float)
            cached = (exps, coefs)
            self._cache["arrays"] = cached
        return cached

    # -- evaluation ----------------------------------------------------

    def evaluate(self, x):
        """Value at a point; exact in rational mode."""
        x = as_vector(x, self.mode, self.num_vars)
        if self.mode == MODE_FLOAT:
            exps, coefs = self._arrays()
            if coefs.size == 0:
                return 0.0
            return float(np.prod(np.asarray(x, dtype=float) ** exps, axis=1) @ coefs)
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for xi, k in zip(x, exp):
                if k:
                    if xi == 0:
                        v = Fraction(0)
                        break
                    v *= xi**k
            total += v
        return total

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """Values at many points at once (float arithmetic regardless of mode)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.num_vars:
            raise DimensionMismatchError(
                f"points have dimension {pts.shape[1]}, expected {self.num_vars}"
            )
        exps, coefs = self.as_float()._arrays()
        if coefs.size == 0:
            return np.zeros(pts.shape[0])
        return np.prod(pts[:, None, :] ** exps[None, :, :], axis=2) @ coefs

    def gradient(self, x):
        """Vector of first partial derivatives at a point."""
        return [self.partial_derivative(j).evaluate(x) for j in range(self.num_vars)]

    # -- arithmetic ------------------------------------------------------

    def _require_compatible(self, other: "Polynomial"):
        if self.num_vars != other.num_vars:
            raise DimensionMismatchError(
                f"polynomials in {self.num_vars} and {other.num_vars} variables"
            )
        if self.mode != other.mode:
            raise ModeMismatchError(f"cannot mix modes {self.mode!r} and {other.mode!r}")

    def add(self, other: "Polynomial") -> "Polynomial":
        """Sum of two polynomials of equal degree (keeps homogeneity)."""
        self._require_compatible(other)
        if self.degree != other.degree and not (self.is_zero or other.is_zero):
            raise HomogeneityError("cannot add homogeneous polynomials of different degrees")
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, as_scalar(0, self.mode)) + c
        return Polynomial.from_terms(
            self.num_vars, out, mode=self.mode, degree=max(self.degree, other.degree)
        )

    def scale(self, factor) -> "Polynomial":
        f = as_scalar(factor, self.mode)
        return Polynomial.from_terms(
            self.num_vars,
            {e: c * f for e, c in self.terms.items()},
            mode=self.mode,
            degree=self.degree,
        )

    def multiply(self, other: "Polynomial") -> "Polynomial":
        """Product; the term map is the convolution with exact zeros cancelled."""
        self._require_compatible(other)
        out: dict[Exponent, object] = {}
        zero = as_scalar(0, self.mode)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, zero) + c1 * c2
        return Polynomial.from_terms(
            self.num_vars, out, mode=self.mode, degree=self.degree + other.degree
        )

    __mul__ = multiply

    # -- calculus --------------------------------------------------------

    def partial_derivative(self, index: int) -> "Polynomial":
        key = ("partial", index)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        out: dict[Exponent, object] = {}
        for exp, c in self.terms.items():
            k = exp[index]
            if k:
                e = list(exp)
                e[index] = k - 1
                key2 = tuple(e)
                out[key2] = out.get(key2, as_scalar(0, self.mode)) + c * k
        result = Polynomial.from_terms(
            self.num_vars, out, mode=self.mode, degree=max(self.degree - 1, 0)
        )
        self._cache[key] = result
        return result

    def directional_derivative(self, direction, order: int = 1) -> "Polynomial":
        """Iterated directional derivative along ``direction``.

        The result is homogeneous of degree ``degree - order``; order 0
        returns the polynomial unchanged.  Orders above the degree are
        rejected (the result would be identically zero, which almost always
        signals a caller bug).
        """
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        if order > self.degree:
            raise ValueError(f"derivative order {order} exceeds degree {self.degree}")
        e = as_vector(direction, self.mode, self.num_vars)
        p = self
        for _ in range(order):
            out: dict[Exponent, object] = {}
            zero = as_scalar(0, p.mode)
            for exp, c in p.terms.items():
                for j, k in enumerate(exp):
                    if k and e[j] != 0:
                        ex = list(exp)
                        ex[j] = k - 1
                        ex = tuple(ex)
                        out[ex] = out.get(ex, zero) + c * k * e[j]
            p = Polynomial.from_terms(
                self.num_vars, out, mode=self.mode, degree=max(p.degree - 1, 0)
            )
        return p

    def line_restriction(self, x, direction) -> UnivariatePoly:
        """Coefficients of t -> p(x + t*direction), ascending in t.

        Coefficient k equals the k-th directional derivative at x divided
        by k factorial; the top coefficient is the polynomial evaluated at
        the direction itself.
        """
        x = as_vector(x, self.mode, self.num_vars)
        coeffs = []
        p = self
        for k in range(self.degree + 1):
            coeffs.append(p.evaluate(x) / (Fraction(math.factorial(k)) if self.mode == MODE_RATIONAL else float(math.factorial(k))))
            if k < self.degree:
                p = p.directional_derivative(direction)
        return UnivariatePoly(tuple(coeffs), mode=self.mode)

    def subspace_restriction(self, subspace: "Subspace") -> "Polynomial":
        """The polynomial u -> p(B u) in the subspace's basis coordinates.

        Homogeneous of the same degree in dim(B) variables; may come out
        identically zero, in which case the degree is kept as metadata.
        """
        if subspace.ambient_dim != self.num_vars:
            raise DimensionMismatchError(
                f"subspace ambient dimension {subspace.ambient_dim} != {self.num_vars}"
            )
        if subspace.mode != self.mode:
            raise ModeMismatchError("subspace and polynomial modes differ")
        r = subspace.dim
        if r == 0:
            raise ValueError("cannot restrict to a zero-dimensional subspace")
        lin = []
        for j in range(self.num_vars):
            coeffs = {}
            for i, b in enumerate(subspace.basis):
                if b[j] != 0:
                    exp = [0] * r
                    exp[i] = 1
                    coeffs[tuple(exp)] = b[j]
            lin.append(Polynomial.from_terms(r, coeffs, mode=self.mode, degree=1))
        pow_cache: dict[tuple[int, int], Polynomial] = {}

        def lin_power(j: int, k: int) -> Polynomial:
            if k == 0:
                return Polynomial.constant(r, 1, mode=self.mode)
            got = pow_cache.get((j, k))
            if got is None:
                got = lin_power(j, k - 1) * lin[j]
                pow_cache[(j, k)] = got
            return got

        acc: dict[Exponent, object] = {}
        zero = as_scalar(0, self.mode)
        for exp, c in self.terms.items():
            piece = Polynomial.constant(r, 1, mode=self.mode)
            for j, k in enumerate(exp):
                if k:
                    piece = piece * lin_power(j, k)
            for e2, c2 in piece.terms.items():
                acc[e2] = acc.get(e2, zero) + c * c2
        return Polynomial.from_terms(r, acc, mode=self.mode, degree=self.degree)

    # -- conversions -----------------------------------------------------

    def as_float(self) -> "Polynomial":
        if self.mode == MODE_FLOAT:
            return self
        cached = self._cache.get("as_float")
        if cached is None:
            cached = Polynomial.from_terms(
                self.num_vars,
                {e: float(c) for e, c in self.terms.items()},
                mode=MODE_FLOAT,
                degree=self.degree,
            )
            self._cache["as_float"] = cached
        return cached

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{j}" if k == 1 else f"x{j}^{k}" for j, k in enumerate(exp) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class Subspace:
    """A linear subspace given by a tuple of independent basis vectors."""

    ambient_dim: int
    mode: str
    basis: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    @classmethod
    def from_rows(cls, rows: Iterable, mode: str = MODE_RATIONAL, ambient_dim: int | None = None) -> "Subspace":
        rows = list(rows)
        if ambient_dim is None:
            if not rows:
                raise ValueError("ambient_dim required for an empty basis")
            ambient_dim = len(rows[0])
        vecs = tuple(as_vector(r, _check_mode(mode), ambient_dim) for r in rows)
        if vecs:
            if mode == MODE_RATIONAL:
                r = _linalg.rank_exact([list(v) for v in vecs])
            else:
                r = _linalg.rank_float(np.array(vecs))
            if r != len(vecs):
                raise ValueError("basis vectors are linearly dependent")
        return cls(ambient_dim=ambient_dim, mode=mode, basis=vecs)

    @classmethod
    def whole_space(cls, dim: int, mode: str = MODE_RATIONAL) -> "Subspace":
        eye = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        return cls.from_rows(eye, mode=mode)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        """Basis as a float matrix, one row per vector."""
        return np.array([[float(v) for v in b] for b in self.basis], dtype=float)

    def contains(self, x, rtol: float = 1e-8) -> bool:
        x = as_vector(x, self.mode, self.ambient_dim)
        if self.dim == 0:
            if self.mode == MODE_RATIONAL:
                return all(v == 0 for v in x)
            return bool(np.linalg.norm(x) <= rtol)
        if self.mode == MODE_RATIONAL:
            return _linalg.in_rowspan_exact([list(b) for b in self.basis], list(x))
        return _linalg.coords_in_basis_float(self.matrix(), x, rtol) is not None

    def coords(self, x):
        """Coordinates of x in the basis; raises when x is outside the span."""
        x = as_vector(x, self.mode, self.ambient_dim)
        if self.mode == MODE_RATIONAL:
            c = _linalg.coords_in_basis_exact([list(b) for b in self.basis], list(x))
            if c is None:
                raise ValueError("vector is not in the subspace")
            return tuple(c)
        c = _linalg.coords_in_basis_float(self.matrix(), x)
        if c is None:
            raise ValueError("vector is not in the subspace")
        return c

    def from_coords(self, u):
        """Ambient vector with the given basis coordinates."""
        if len(u) != self.dim:
            raise DimensionMismatchError(f"expected {self.dim} coordinates, got {len(u)}")
        if self.mode == MODE_RATIONAL:
            u = tuple(as_scalar(v, self.mode) for v in u)
            return tuple(
                sum(u[i] * self.basis[i][j] for i in range(self.dim))
                for j in range(self.ambient_dim)
            )
        return np.asarray(u, dtype=float) @ self.matrix()

    def orthonormalized(self, weights=None) -> np.ndarray:
        """Rows forming an orthonormal basis of the same span (float).

        ``weights`` selects a diagonal metric; distance computations in
        weighted spaces must orthonormalize in that metric.
        """
        key = ("ortho", None if weights is None else tuple(np.asarray(weights, float)))
        cached = self._cache.get(key)
        if cached is None:
            cached = _linalg.orthonormal_rows(self.matrix(), weights)
            self._cache[key] = cached
        return cached

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("subspaces live in different ambient spaces")
        if self.mode != other.mode:
            raise ModeMismatchError("subspace modes differ")
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim, self.mode, ())
        if self.mode == MODE_RATIONAL:
            rows = _linalg.intersect_rowspans_exact(
                [list(b) for b in self.basis], [list(b) for b in other.basis], self.ambient_dim
            )
            return Subspace.from_rows(rows, mode=self.mode, ambient_dim=self.ambient_dim)
        # float path: kernel of [B1^T | -B2^T] pushed through B1
        b1, b2 = self.matrix(), other.matrix()
        stacked = np.hstack([b1.T, -b2.T])
        null = _linalg.nullspace_float(stacked)
        vecs = null[:, : self.dim] @ b1
        keep = _linalg.orthonormal_rows(vecs) if len(vecs) else vecs
        return Subspace.from_rows(keep, mode=self.mode, ambient_dim=self.ambient_dim)

    def as_float(self) -> "Subspace":
        if self.mode == MODE_FLOAT:
            return self
        return Subspace.from_rows(self.matrix(), mode=MODE_FLOAT, ambient_dim=self.ambient_dim)


# ---------------------------------------------------------------------------
# JSON file format
#
# {"vars": n, "degree": d, "mode": "rational" | "float",
#  "terms": [{"exp": [k1, ..., kn], "coef": "<int>/<int>" | number}]}

def poly_to_json_dict(p: Polynomial) -> dict:
    return {
        "vars": p.num_vars,
        "degree": p.degree,
        "mode": p.mode,
        "terms": [
            {"exp": list(exp), "coef": format_scalar(c, p.mode)} for exp, c in p.sorted_terms()
        ],
    }


def poly_from_json_dict(data: dict) -> Polynomial:
    try:
        num_vars = int(data["vars"])
        degree = int(data["degree"])
        mode = _check_mode(data.get("mode", MODE_RATIONAL))
        terms = {
            tuple(int(k) for k in item["exp"]): parse_scalar(item["coef"], mode)
            for item in data["terms"]
        }
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polynomial JSON: {exc}") from exc
    return Polynomial.from_terms(num_vars, terms, mode=mode, degree=degree)


def save_polynomial(p: Polynomial, path) -> None:
    with open(path, "w") as fh:
        json.dump(poly_to_json_dict(p), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_polynomial(path) -> Polynomial:
    with open(path) as fh:
        return poly_from_json_dict(json.load(fh))


def vector_to_json(x, mode: str) -> list:
    return [format_scalar(v, mode) for v in x]


def vector_from_json(data: Sequence, mode: str):
    return as_vector([parse_scalar(v, mode) for v in data], mode)
