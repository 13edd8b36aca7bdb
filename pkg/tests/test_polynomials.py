import json
from fractions import Fraction

import numpy as np
import pytest

from hypcones import _linalg
from hypcones.errors import DimensionMismatchError, HomogeneityError, ModeMismatchError
from hypcones.polynomials import (
    Polynomial,
    Subspace,
    poly_from_json_dict,
    poly_to_json_dict,
)

from conftest import random_homogeneous_poly, random_rational_vector


def poly(num_vars, terms, **kw):
    return Polynomial.from_terms(num_vars, terms, **kw)


ORTHANT3 = poly(3, {(1, 1, 1): 1})
LORENTZ3 = poly(3, {(2, 0, 0): 1, (0, 2, 0): -1, (0, 0, 2): -1})


def test_evaluate_examples():
    assert ORTHANT3.evaluate((1, 2, 3)) == 6
    assert ORTHANT3.evaluate((0, 0, 0)) == 0
    assert LORENTZ3.evaluate((2, 1, 1)) == 2


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        ORTHANT3.evaluate((1, 2))


def test_multiply_examples():
    x1 = Polynomial.coordinate(2, 0)
    x2 = Polynomial.coordinate(2, 1)
    assert x1 * x2 == poly(2, {(1, 1): 1})
    p = poly(2, {(2, 0): 3, (1, 1): -1})
    assert p * Polynomial.constant(2, 1) == p
    assert (x1.add(x2)) * (x1.add(x2.scale(-1))) == poly(2, {(2, 0): 1, (0, 2): -1})


def test_multiply_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        ORTHANT3.multiply(ORTHANT3.as_float())


def test_directional_derivative_examples():
    e = (1, 1, 1)
    assert ORTHANT3.directional_derivative(e) == poly(3, {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    assert ORTHANT3.directional_derivative(e, 3) == Polynomial.constant(3, 6)
    assert LORENTZ3.directional_derivative((1, 0, 0)) == poly(3, {(1, 0, 0): 2})
    assert ORTHANT3.directional_derivative(e, 0) is ORTHANT3


def test_directional_derivative_order_too_high():
    with pytest.raises(ValueError):
        ORTHANT3.directional_derivative((1, 1, 1), 4)


def test_line_restriction_examples():
    e = (1, 1, 1)
    assert ORTHANT3.line_restriction((0, 0, 0), e).coeffs == (0, 0, 0, 1)
    assert ORTHANT3.line_restriction((1, 1, 1), e).coeffs == (1, 3, 3, 1)
    assert LORENTZ3.line_restriction((0, 1, 0), (1, 0, 0)).coeffs == (-1, 0, 1)


def test_subspace_restriction_examples():
    b = Subspace.from_rows([[1, 1, 0], [0, 0, 1]])
    assert ORTHANT3.subspace_restriction(b) == poly(2, {(2, 1): 1})
    eye = Subspace.whole_space(3)
    assert ORTHANT3.subspace_restriction(eye) == ORTHANT3
    line = Subspace.from_rows([[1, 1, 0]])
    restricted = LORENTZ3.subspace_restriction(line)
    assert restricted.is_zero and restricted.degree == 2


def test_homogeneity_property(rng):
    for _ in range(100):
        nv = int(rng.integers(2, 5))
        deg = int(rng.integers(1, 5))
        p = random_homogeneous_poly(rng, nv, deg, nterms=4)
        x = random_rational_vector(rng, nv)
        t = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
        assert p.evaluate(tuple(t * xi for xi in x)) == t**deg * p.evaluate(x)


def test_homogeneity_property_float(rng):
    for _ in range(100):
        nv = int(rng.integers(2, 5))
        deg = int(rng.integers(1, 5))
        p = random_homogeneous_poly(rng, nv, deg, nterms=4).as_float()
        x = rng.standard_normal(nv)
        t = float(rng.standard_normal())
        lhs = p.evaluate(t * x)
        rhs = t**deg * p.evaluate(x)
        assert abs(lhs - rhs) <= 1e-10 * (1 + abs(lhs) + abs(rhs))


def test_derivative_composition(rng):
    for _ in range(25):
        p = random_homogeneous_poly(rng, 3, 4, nterms=5)
        e = random_rational_vector(rng, 3)
        j, k = 1, 2
        left = p.directional_derivative(e, j).directional_derivative(e, k)
        assert left == p.directional_derivative(e, j + k)


def test_taylor_consistency(rng):
    for _ in range(25):
        p = random_homogeneous_poly(rng, 3, 3, nterms=5)
        x = random_rational_vector(rng, 3)
        e = random_rational_vector(rng, 3)
        u = p.line_restriction(x, e)
        t = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 7)))
        shifted = tuple(xi + t * ei for xi, ei in zip(x, e))
        assert p.evaluate(shifted) == u.evaluate(t)


def interpolated_line_coeffs(p, x, e):
    """Independent oracle: exact Vandermonde fit of p along the line x + t e."""
    d = p.degree
    ts = [Fraction(k) for k in range(d + 1)]
    vals = [p.evaluate(tuple(xi + t * ei for xi, ei in zip(x, e))) for t in ts]
    rows = [[t**k for k in range(d + 1)] for t in ts]
    sol = _linalg.solve_exact(rows, vals)
    assert sol is not None
    return tuple(sol)


def test_line_restriction_against_interpolation(rng):
    for _ in range(20):
        p = random_homogeneous_poly(rng, 3, int(rng.integers(1, 5)), nterms=4)
        x = random_rational_vector(rng, 3)
        e = random_rational_vector(rng, 3)
        assert p.line_restriction(x, e).coeffs == interpolated_line_coeffs(p, x, e)


def test_restriction_commutes_with_inspan_derivative(rng):
    for _ in range(15):
        p = random_homogeneous_poly(rng, 4, 3, nterms=5)
        rows = [random_rational_vector(rng, 4), random_rational_vector(rng, 4)]
        try:
            b = Subspace.from_rows(rows)
        except ValueError:
            continue
        u = (Fraction(2, 3), Fraction(-1, 2))
        e = b.from_coords(u)
        left = p.directional_derivative(e).subspace_restriction(b)
        right = p.subspace_restriction(b).directional_derivative(u)
        assert left == right


def test_zero_polynomial_representable():
    z = Polynomial.zero(3, 5)
    assert z.is_zero and z.degree == 5
    assert z.evaluate((1, 2, 3)) == 0
    with pytest.raises(ValueError):
        Polynomial.from_terms(3, {})


def test_constructor_rejects_inhomogeneous():
    with pytest.raises(HomogeneityError):
        poly(2, {(1, 0): 1, (2, 0): 1})


def test_json_round_trip_and_determinism():
    p = poly(3, {(2, 1, 0): Fraction(3, 7), (0, 2, 1): -2, (1, 1, 1): 1})
    doc = poly_to_json_dict(p)
    assert poly_from_json_dict(doc) == p
    # graded-lex descending term order makes serialization canonical
    assert json.dumps(doc, sort_keys=True) == json.dumps(poly_to_json_dict(p), sort_keys=True)
    exps = [tuple(t["exp"]) for t in doc["terms"]]
    assert exps == sorted(exps, reverse=True)


def test_json_rejects_inhomogeneous():
    doc = {
        "vars": 2,
        "degree": 2,
        "mode": "rational",
        "terms": [{"exp": [2, 0], "coef": "1/1"}, {"exp": [1, 0], "coef": "1/1"}],
    }
    with pytest.raises((HomogeneityError, ValueError)):
        poly_from_json_dict(doc)


def test_subspace_rank_check_and_coords():
    with pytest.raises(ValueError):
        Subspace.from_rows([[1, 2, 3], [2, 4, 6]])
    b = Subspace.from_rows([[1, 1, 0], [0, 0, 2]])
    assert b.contains((2, 2, 1))
    assert not b.contains((1, 0, 0))
    coords = b.coords((3, 3, 4))
    assert b.from_coords(coords) == (3, 3, 4)


def test_subspace_orthonormalized_weighted():
    b = Subspace.from_rows([[1, 1, 0], [1, 0, 1]])
    w = np.array([1.0, 2.0, 2.0])
    q = b.orthonormalized(w)
    gram = (q * w) @ q.T
    assert np.allclose(gram, np.eye(2), atol=1e-12)


def test_subspace_intersection():
    a = Subspace.from_rows([[1, 0, 0], [0, 1, 0]])
    b = Subspace.from_rows([[0, 1, 0], [0, 0, 1]])
    mid = a.intersect(b)
    assert mid.dim == 1 and mid.contains((0, 5, 0))


def test_evaluate_batch_matches_scalar(rng):
    p = random_homogeneous_poly(rng, 3, 3, nterms=6)
    pts = rng.standard_normal((40, 3))
    batch = p.evaluate_batch(pts)
    single = [p.as_float().evaluate(row) for row in pts]
    assert np.allclose(batch, single, rtol=1e-12, atol=1e-12)
