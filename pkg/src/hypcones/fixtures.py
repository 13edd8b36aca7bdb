"""Cones with known structure: ground-truth oracles for everything else.

Each fixture bundles a validated cone with independent answers: a
closed-form Euclidean projector, an eigenvalue routine that does not go
through line-polynomial roots, a multiplicity oracle, and a catalog of
faces given by (witness, span, multiplicity) with provenance notes.

The symmetric-matrix fixture stores a matrix through its upper-triangle
entries directly (off-diagonals are not sqrt(2)-scaled, keeping the
determinant polynomial integral), so its Euclidean geometry is the
Frobenius one: inner products weight off-diagonal coordinates by 2.  The
``weights`` field carries that diagonal metric; distance computations must
respect it.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from .cones import HyperbolicityCone, derivative_cone, new_cone
from .polynomials import (
    Polynomial,
    Subspace,
    poly_to_json_dict,
    vector_to_json,
)

_ZERO_TOL = 1e-9


@dataclass(frozen=True)
class CatalogFace:
    """One parameterized face: witness, span, multiplicity, and closed forms."""

    name: str
    z: tuple
    span_rows: tuple
    m: int
    note: str
    span_weights: tuple  # diagonal metric of the span basis (Gram diagonal)
    face_projector: object  # closed-form projector in span coordinates, or None

    def span(self, mode: str = "rational") -> Subspace:
        return Subspace.from_rows(self.span_rows, mode=mode, ambient_dim=len(self.z))


@dataclass(frozen=True)
class Fixture:
    name: str
    cone: HyperbolicityCone
    projector: object  # closed-form ambient projector, or None
    faces: tuple
    mult_oracle: object  # independent multiplicity, or None
    eig_oracle: object  # independent eigenvalues, or None
    member_oracle: object  # independent membership, or None
    weights: tuple | None = None  # ambient diagonal metric; None means Euclidean

    def face(self, name: str) -> CatalogFace:
        for entry in self.faces:
            if entry.name == name:
                return entry
        raise KeyError(f"fixture {self.name} has no cataloged face {name!r}")


def _count_small(values: np.ndarray, scale: float) -> int:
    return int(np.sum(np.abs(values) <= _ZERO_TOL * scale))


@cache
def orthant(n: int) -> Fixture:
    """Nonnegative orthant: the cone of the product of the coordinates.

    Eigenvalues of a point are its sorted coordinates; the face of a
    support set S keeps the coordinates in S, with multiplicity equal to
    the number of off-support (zero) coordinates; the projector clips
    negatives.
    """
    if n < 1:
        raise ValueError("orthant needs n >= 1")
    p = Polynomial.from_terms(n, {(1,) * n: 1})
    cone = new_cone(p, (1,) * n)

    def projector(x):
        return np.maximum(np.asarray(x, dtype=float), 0.0)

    def eig_oracle(x):
        return np.sort(np.asarray(x, dtype=float))

    def mult_oracle(x):
        x = np.asarray(x, dtype=float)
        return _count_small(x, 1.0 + np.abs(x).max())

    def member_oracle(x, tol=1e-9):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= -tol * (1.0 + np.abs(x).max())))

    def clip(u):
        return np.maximum(np.asarray(u, dtype=float), 0.0)

    supports = [tuple(range(n))]
    if n > 1:
        supports.append(tuple(range(n - 1)))
        supports.append((0,))
    if n > 3:
        supports.append((0, 1))
    faces = []
    for s in supports:
        z = tuple(1 if i in s else 0 for i in range(n))
        rows = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in s)
        faces.append(
            CatalogFace(
                name="support-" + "".join(map(str, s)),
                z=z,
                span_rows=rows,
                m=n - len(s),
                note="coordinate face: points supported on the index set; "
                "multiplicity counts the off-support coordinates",
                span_weights=(1,) * len(s),
                face_projector=clip,
            )
        )
    return Fixture(
        name=f"orthant({n})",
        cone=cone,
        projector=projector,
        faces=tuple(faces),
        mult_oracle=mult_oracle,
        eig_oracle=eig_oracle,
        member_oracle=member_oracle,
    )


@cache
def lorentz(n: int) -> Fixture:
    """Second-order cone from the quadratic x0^2 - x1^2 - ... - x_{n-1}^2.

    Eigenvalues are x0 -/+ the norm of the remaining coordinates; proper
    faces are the boundary rays; projection is the standard second-order
    cone formula.
    """
    if n < 2:
        raise ValueError("lorentz needs n >= 2")
    terms = {tuple(2 if j == i else 0 for j in range(n)): (1 if i == 0 else -1) for i in range(n)}
    p = Polynomial.from_terms(n, terms)
    e = tuple([1] + [0] * (n - 1))
    cone = new_cone(p, e)

    def projector(x):
        x = np.asarray(x, dtype=float)
        s, v = x[0], x[1:]
        nv = float(np.linalg.norm(v))
        if nv <= s:
            return x.copy()
        if nv <= -s:
            return np.zeros_like(x)
        alpha = 0.5 * (s + nv)
        out = np.empty_like(x)
        out[0] = alpha
        out[1:] = alpha * v / nv
        return out

    def eig_oracle(x):
        x = np.asarray(x, dtype=float)
        nv = float(np.linalg.norm(x[1:]))
        return np.array([x[0] - nv, x[0] + nv])

    def mult_oracle(x):
        lam = eig_oracle(x)
        return _count_small(lam, 1.0 + np.abs(lam).max())

    def member_oracle(x, tol=1e-9):
        x = np.asarray(x, dtype=float)
        return bool(x[0] >= np.linalg.norm(x[1:]) - tol * (1.0 + np.abs(x).max()))

    ray_dir = tuple([1, 1] + [0] * (n - 2))
    faces = (
        CatalogFace(
            name="full",
            z=e,
            span_rows=tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n)),
            m=0,
            note="the cone itself as its own face",
            span_weights=(1,) * n,
            face_projector=projector,
        ),
        CatalogFace(
            name="ray",
            z=ray_dir,
            span_rows=(ray_dir,),
            m=1,
            note="boundary rays are the only proper nonzero faces of a "
            "second-order cone; span weight is the squared basis norm",
            span_weights=(2,),
            face_projector=lambda u: np.maximum(np.asarray(u, dtype=float), 0.0),
        ),
    )
    return Fixture(
        name=f"lorentz({n})",
        cone=cone,
        projector=projector,
        faces=faces,
        mult_oracle=mult_oracle,
        eig_oracle=eig_oracle,
        member_oracle=member_oracle,
    )


def _sym_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym_to_vec(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    return np.array([mat[i, j] for i, j in _sym_pairs(n)], dtype=float)


def vec_to_sym(x, n: int) -> np.ndarray:
    out = np.zeros((n, n))
    for val, (i, j) in zip(np.asarray(x, dtype=float), _sym_pairs(n)):
        out[i, j] = out[j, i] = val
    return out


def _det_polynomial(n: int) -> Polynomial:
    """Determinant of a symmetric matrix in its upper-triangle entries."""
    pairs = _sym_pairs(n)
    index = {pair: k for k, pair in enumerate(pairs)}
    terms: dict[tuple, Fraction] = {}
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        # permutation parity via cycle count
        visited = [False] * n
        cycles = 0
        for i in range(n):
            if not visited[i]:
                cycles += 1
                j = i
                while not visited[j]:
                    visited[j] = True
                    j = seen[j]
        sign = 1 if (n - cycles) % 2 == 0 else -1
        exp = [0] * len(pairs)
        for i in range(n):
            a, b = min(i, perm[i]), max(i, perm[i])
            exp[index[(a, b)]] += 1
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + sign
    return Polynomial.from_terms(len(pairs), terms)


def _psd_face(n: int, u_cols: list[tuple], name: str, note: str) -> CatalogFace:
    """Face of matrices whose range sits inside the span of the given columns.

    Columns must be orthonormal: then the span basis u_a u_b^T + u_b u_a^T
    (a < b) plus u_a u_a^T is orthogonal in the Frobenius metric with the
    same squared norms as the smaller matrix cone's own coordinates, so the
    face projector is just eigenvalue clipping in the small space.
    """
    r = len(u_cols)
    cols = [tuple(Fraction(v) for v in c) for c in u_cols]

    def outer_sym(a: int, b: int) -> tuple:
        # u_a u_b^T + u_b u_a^T for a != b, u_a u_a^T for a == b
        ua, ub = cols[a], cols[b]
        return tuple(
            ua[i] * ub[j] + (ub[i] * ua[j] if a != b else Fraction(0))
            for i, j in _sym_pairs(n)
        )

    z = tuple(
        sum((c[i] * c[j] for c in cols), Fraction(0)) for i, j in _sym_pairs(n)
    )
    rows = tuple(outer_sym(a, b) for a, b in _sym_pairs(r))

    def face_projector(ucoords):
        s = vec_to_sym(ucoords, r)
        lam, vec = np.linalg.eigh(s)
        clipped = (vec * np.maximum(lam, 0.0)) @ vec.T
        return sym_to_vec(clipped)

    return CatalogFace(
        name=name,
        z=z,
        span_rows=rows,
        m=n - r,
        note=note,
        span_weights=tuple(1 if a == b else 2 for a, b in _sym_pairs(r)),
        face_projector=face_projector,
    )


@cache
def psd(n: int) -> Fixture:
    """Positive semidefinite matrices through the symbolic determinant.

    Variables are the n(n+1)/2 upper-triangle entries; hyperbolic
    eigenvalues coincide with matrix eigenvalues, multiplicity with the
    corank, projection with eigenvalue clipping.  Capped at n = 4, where
    the expanded determinant is still desk sized.
    """
    if not 1 <= n <= 4:
        raise ValueError("psd fixture supports 1 <= n <= 4")
    p = _det_polynomial(n)
    e = tuple(1 if i == j else 0 for i, j in _sym_pairs(n))
    cone = new_cone(p, e)
    weights = tuple(1 if i == j else 2 for i, j in _sym_pairs(n))

    def projector(x):
        mat = vec_to_sym(x, n)
        lam, vec = np.linalg.eigh(mat)
        clipped = (vec * np.maximum(lam, 0.0)) @ vec.T
        return sym_to_vec(clipped)

    def eig_oracle(x):
        return np.linalg.eigvalsh(vec_to_sym(x, n))

    def mult_oracle(x):
        lam = eig_oracle(x)
        return _count_small(lam, 1.0 + np.abs(lam).max())

    def member_oracle(x, tol=1e-9):
        lam = eig_oracle(x)
        return bool(lam.min() >= -tol * (1.0 + np.abs(lam).max()))

    def unit(i):
        return tuple(Fraction(int(j == i)) for j in range(n))

    faces = [
        _psd_face(
            n,
            [unit(i) for i in range(n)],
            "rank-%d" % n,
            "the cone itself: full-range matrices",
        )
    ]
    for r in range(n - 1, 0, -1):
        faces.append(
            _psd_face(
                n,
                [unit(i) for i in range(r)],
                "rank-%d" % r,
                "matrices supported on the leading %d-dimensional range; "
                "multiplicity is the corank" % r,
            )
        )
    if n >= 2:
        tilted = [Fraction(3, 5), Fraction(4, 5)] + [Fraction(0)] * (n - 2)
        faces.append(
            _psd_face(
                n,
                [tuple(tilted)],
                "rank-1-rotated",
                "rank-one face along a non-coordinate unit direction, "
                "exercising range spans outside the coordinate pattern",
            )
        )
    return Fixture(
        name=f"psd({n})",
        cone=cone,
        projector=projector,
        faces=tuple(faces),
        mult_oracle=mult_oracle,
        eig_oracle=eig_oracle,
        member_oracle=member_oracle,
        weights=weights,
    )


@cache
def renegar_orthant(n: int, m: int) -> Fixture:
    """Derivative relaxation of the orthant: the elementary-symmetric cone.

    The m-th directional derivative of the coordinate product along the
    all-ones vector is m! times the elementary symmetric polynomial of
    degree n - m.  No closed-form projector exists; membership through the
    exact sign conditions is the oracle.
    """
    if not 0 <= m < n:
        raise ValueError("renegar_orthant needs 0 <= m < n")
    cone = derivative_cone(orthant(n).cone, m)
    return Fixture(
        name=f"renegar_orthant({n},{m})",
        cone=cone,
        projector=None,
        faces=(),
        mult_oracle=None,
        eig_oracle=None,
        member_oracle=None,
    )


FAMILIES = {
    "orthant": (orthant, ("n",)),
    "lorentz": (lorentz, ("n",)),
    "psd": (psd, ("n",)),
    "renegar_orthant": (renegar_orthant, ("n", "m")),
}


def by_name(family: str, n: int, m: int = 0) -> Fixture:
    if family == "orthant":
        return orthant(n)
    if family == "lorentz":
        return lorentz(n)
    if family == "psd":
        return psd(n)
    if family == "renegar_orthant":
        return renegar_orthant(n, m)
    raise KeyError(f"unknown fixture family {family!r}; known: {sorted(FAMILIES)}")


def list_fixtures() -> list[str]:
    return [
        "orthant(n): product of coordinates, n >= 1",
        "lorentz(n): second-order cone, n >= 2",
        "psd(n): symmetric determinant cone, 1 <= n <= 4",
        "renegar_orthant(n, m): elementary-symmetric relaxation of orthant(n), 0 <= m < n",
    ]


def emit(fixture: Fixture, directory, prefix: str | None = None) -> list[str]:
    """Write the polynomial file and the face catalog as JSON; returns paths."""
    import os

    prefix = prefix or fixture.name.replace("(", "_").replace(")", "").replace(",", "_")
    poly_path = os.path.join(directory, f"{prefix}.poly.json")
    with open(poly_path, "w") as fh:
        json.dump(poly_to_json_dict(fixture.cone.p), fh, indent=1, sort_keys=True)
        fh.write("\n")
    catalog = {
        "name": fixture.name,
        "cone": fixture.cone.to_json_dict(),
        "weights": list(fixture.weights) if fixture.weights else None,
        "faces": [
            {
                "name": f.name,
                "z": vector_to_json(f.z, fixture.cone.mode),
                "span": [vector_to_json(r, fixture.cone.mode) for r in f.span_rows],
                "m": f.m,
                "span_weights": list(f.span_weights),
                "note": f.note,
            }
            for f in fixture.faces
        ],
    }
    faces_path = os.path.join(directory, f"{prefix}.faces.json")
    with open(faces_path, "w") as fh:
        json.dump(catalog, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return [poly_path, faces_path]
