from fractions import Fraction

import numpy as np
import pytest

from hypcones import fixtures as fx
from hypcones.cones import (
    Tolerances,
    cone_from_json_dict,
    derivative_cone,
    eigenvalues,
    garding_invariance_check,
    in_interior,
    member,
    member_batch,
    membership_margin,
    multiplicity,
    new_cone,
)
from hypcones.errors import (
    ConvergenceError,
    NotHyperbolicError,
    NumericalInconsistencyError,
)
from hypcones.polynomials import Polynomial

ORTHANT3 = Polynomial.from_terms(3, {(1, 1, 1): 1})
LORENTZ3 = Polynomial.from_terms(3, {(2, 0, 0): 1, (0, 2, 0): -1, (0, 0, 2): -1})


def orthant_cone():
    return fx.orthant(3).cone


def lorentz_cone():
    return fx.lorentz(3).cone


def test_new_cone_validates_orthant():
    cone = new_cone(ORTHANT3, (1, 1, 1), samples=200, seed=0)
    assert cone.certification.kind == "validated_exact"
    assert cone.certification.samples == 200


def test_new_cone_rejects_negative_direction_value():
    with pytest.raises(NotHyperbolicError):
        new_cone(LORENTZ3, (0, 1, 0))


def test_new_cone_rejects_definite_quadratic_with_witness():
    p = Polynomial.from_terms(2, {(2, 0): 1, (0, 2): 1})
    with pytest.raises(NotHyperbolicError) as exc:
        new_cone(p, (1, 0), samples=50, seed=1)
    assert exc.value.witness is not None


def test_top_derivative_is_constant_factorial():
    for fixture in (fx.orthant(4), fx.lorentz(3), fx.psd(3)):
        cone = fixture.cone
        top = cone.derivs[-1]
        assert top.degree == 0
        import math

        assert top.evaluate(cone.e) == math.factorial(cone.degree) * cone.p.evaluate(cone.e)


def test_eigenvalues_orthant_coordinates():
    rl = eigenvalues(orthant_cone(), (3, 1, 2))
    assert rl.roots == (1, 2, 3)
    assert rl.multiplicities == (1, 1, 1)


def test_eigenvalues_lorentz_formula():
    rl = eigenvalues(lorentz_cone(), (2, 3, 4))
    assert rl.roots == (-3, 7)


def test_eigenvalue_shift_derived(rng):
    """Shift identity against interpolation-free direct root computation."""
    cone = orthant_cone().as_float()
    for _ in range(50):
        x = rng.standard_normal(3)
        lam = eigenvalues(cone, x + 5.0 * np.ones(3)).as_float()
        # independent oracle: orthant eigenvalues are the sorted coordinates
        assert np.allclose(lam, np.sort(x) + 5.0, atol=1e-10)


def test_eigenvalue_shift_exact_rational():
    cone = orthant_cone()
    x = (Fraction(1, 3), Fraction(5, 7), Fraction(-2, 5))
    s = Fraction(5)
    lam = eigenvalues(cone, x).roots
    shifted = eigenvalues(cone, tuple(xi + s for xi in x)).roots
    assert shifted == tuple(l + s for l in lam)


def test_eigenvalue_positive_scaling(rng):
    cone = lorentz_cone().as_float()
    for _ in range(50):
        x = rng.standard_normal(3)
        s = float(abs(rng.standard_normal()) + 0.1)
        lam = eigenvalues(cone, x).as_float()
        scaled = eigenvalues(cone, s * x).as_float()
        assert np.all(np.abs(scaled - s * lam) <= 1e-8 * (1 + np.abs(s * lam)))


def test_member_examples():
    k = orthant_cone()
    assert member(k, (1, 2, 3)) and in_interior(k, (1, 2, 3))
    assert member(k, (1, 0, 3)) and not in_interior(k, (1, 0, 3))
    assert not member(lorentz_cone(), (1, 2, 0))


def test_member_eigen_cross_check(rng):
    for fixture in (fx.orthant(3), fx.lorentz(3)):
        cone = fixture.cone
        for _ in range(40):
            x = tuple(Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5))) for _ in range(3))
            assert member(cone, x) == member(cone, x, method="eigen")
            assert in_interior(cone, x) == in_interior(cone, x, method="eigen")


def test_membership_consistency_float(rng):
    cone = lorentz_cone()
    for _ in range(200):
        x = rng.standard_normal(3)
        margin = membership_margin(cone, x)
        if abs(margin) <= 1.0:
            continue  # tolerance band: verdicts may legitimately differ
        assert member(cone.as_float(), x) == member(cone.as_float(), x, method="eigen")


def test_multiplicity_orthant_axis():
    sig = multiplicity(orthant_cone(), (0, 0, 5))
    assert sig.m == 2
    assert sig.zero_block == (0, 0)
    assert all(v > 0 for v in sig.positive_block)


def test_multiplicity_lorentz_boundary():
    sig = multiplicity(lorentz_cone(), (1, 1, 0))
    assert sig.m == 1
    assert sig.zero_block == (0,)
    assert sig.positive_block == (2, 2)


def test_multiplicity_psd_rank_one():
    fixture = fx.psd(3)
    z = fixture.face("rank-1").z
    sig = multiplicity(fixture.cone, z)
    x = np.array([float(v) for v in z])
    assert sig.m == 3 - np.linalg.matrix_rank(fx.vec_to_sym(x, 3)) == 2
    assert fixture.mult_oracle(x) == sig.m


def test_multiplicity_invariance_under_direction(rng):
    """Multiplicity must not depend on which interior direction defines it."""
    fixture = fx.psd(3)
    cone = fixture.cone
    boundary_points = [fixture.face("rank-2").z, fixture.face("rank-1").z,
                       fixture.face("rank-1-rotated").z]
    directions = [cone.e, tuple(Fraction(v) for v in (2, 1, 0, 2, 0, 3))]
    for z in boundary_points:
        ms = []
        for d in directions:
            alt = new_cone(cone.p, d)
            ms.append(multiplicity(alt, z).m)
        assert len(set(ms)) == 1, (z, ms)


def test_derivative_cone_examples():
    k = orthant_cone()
    k1 = derivative_cone(k, 1)
    assert k1.p == Polynomial.from_terms(3, {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    kd = derivative_cone(k, 3)
    assert member(kd, (-9, -9, -9)) and in_interior(kd, (-9, -9, -9))
    assert derivative_cone(k, 0) is k
    with pytest.raises(ValueError):
        derivative_cone(k, 4)


def test_derivative_cone_shares_caches():
    k = orthant_cone()
    k1 = derivative_cone(k, 1)
    assert k1.derivs == k.derivs[1:]
    assert all(a is b for a, b in zip(k1.derivs, k.derivs[1:]))


def test_relaxation_chain_monotone(rng):
    k = orthant_cone()
    pts = rng.standard_normal((1000, 3))
    prev = None
    for m in range(k.degree + 1):
        got, _ = member_batch(derivative_cone(k, m), pts)
        if prev is not None:
            assert not np.any(prev & ~got)
        prev = got


def test_garding_invariance_orthant():
    rep = garding_invariance_check(orthant_cone(), (1, 2, 3), samples=100, seed=3)
    assert rep and rep.checked == 100


def test_garding_invariance_lorentz_derived():
    cone = lorentz_cone()
    rep = garding_invariance_check(cone, (2, 1, 0), samples=100, seed=3)
    assert rep
    # independent membership list: second-order cone inequality directly
    alt = new_cone(cone.p, (2, 1, 0))
    rng = np.random.default_rng(4)
    oracle = fx.lorentz(3).member_oracle
    for _ in range(100):
        x = rng.standard_normal(3)
        xr = tuple(Fraction(float(v)).limit_denominator(10**6) for v in x)
        assert member(cone, xr) == member(alt, xr) == oracle(x)


def test_garding_boundary_direction_rejected():
    with pytest.raises(ValueError):
        garding_invariance_check(lorentz_cone(), (1, 1, 0), samples=10, seed=0)


def test_multiplicity_member_pattern_enforced():
    # a member whose positive block came out nonpositive would be flagged;
    # construct the inconsistency artificially via a huge zero tolerance
    cone = new_cone(ORTHANT3.as_float(), (1.0, 1.0, 1.0), tol=Tolerances(zero_rel=1.0))
    with pytest.raises(NumericalInconsistencyError):
        multiplicity(cone, (1.0, -1e-12, 1.0))


def test_cone_json_round_trip():
    cone = new_cone(ORTHANT3, (1, 1, 1), samples=25, seed=9)
    doc = cone.to_json_dict()
    back = cone_from_json_dict(doc)
    assert back.p == cone.p and back.e == cone.e
    assert back.certification == cone.certification
