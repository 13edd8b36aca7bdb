import json
from fractions import Fraction

import numpy as np
import pytest

from hypcones import _linalg
from hypcones import fixtures as fx
from hypcones.cones import in_interior, member, new_cone
from hypcones.errors import ConvergenceError
from hypcones.faces import (
    discover_span,
    face_as_cone,
    face_from_json_dict,
    face_to_json_dict,
    intersect,
    make_face,
    mult_constancy_check,
    verify_face_representation,
)
from hypcones.polynomials import Polynomial, Subspace


def same_span(a: Subspace, b: Subspace) -> bool:
    if a.dim != b.dim:
        return False
    rows = [list(r) for r in a.basis] + [list(r) for r in b.basis]
    return _linalg.rank_exact(rows) == a.dim


def orthant_facet_face():
    fixture = fx.orthant(3)
    entry = fixture.face("support-01")
    return make_face(fixture.cone, entry.z, entry.span())


def test_make_face_orthant_facet():
    face = orthant_facet_face()
    assert face.m == 1
    # derived by hand: D_e(x0 x1 x2) = x0x1 + x0x2 + x1x2, restricted to x2 = 0
    assert face.q == Polynomial.from_terms(2, {(1, 1): 1})
    assert face.z_coords == (1, 1)


def test_make_face_lorentz_ray():
    fixture = fx.lorentz(3)
    face = make_face(fixture.cone, (1, 1, 0), Subspace.from_rows([[1, 1, 0]]))
    assert face.m == 1
    assert face.q == Polynomial.from_terms(1, {(1,): 2})


def test_make_face_whole_cone():
    fixture = fx.orthant(3)
    face = make_face(fixture.cone, (1, 1, 1), Subspace.whole_space(3))
    assert face.m == 0 and face.q == fixture.cone.p


def test_make_face_rejects_outside_witness():
    fixture = fx.orthant(3)
    with pytest.raises(ValueError):
        make_face(fixture.cone, (1, -1, 0), Subspace.whole_space(3))


def test_make_face_rejects_oversized_span():
    # the whole space is not the span of the face of (1,1,0): the first
    # derivative does not vanish identically on it
    fixture = fx.orthant(3)
    with pytest.raises(ValueError):
        make_face(fixture.cone, (1, 1, 0), Subspace.whole_space(3))


def test_verify_face_representation_clean():
    rep = verify_face_representation(orthant_facet_face(), samples=3000, seed=5)
    assert rep.ok and rep.violations == () and rep.z_interior_ok


def test_verify_face_negative_controls():
    face = orthant_facet_face()
    low = verify_face_representation(face, samples=3000, seed=5, m_override=0)
    assert not low.ok and not low.z_interior_ok
    high = verify_face_representation(face, samples=3000, seed=5, m_override=2)
    assert not high.ok and len(high.violations) > 0


def test_face_as_cone_examples():
    face = orthant_facet_face()
    cone = face_as_cone(face, samples=200, seed=0)
    assert cone.p == Polynomial.from_terms(2, {(1, 1): 1})
    assert member(cone, (2, 3)) and not member(cone, (-1, 2))

    fixture = fx.lorentz(3)
    ray = make_face(fixture.cone, (1, 1, 0), Subspace.from_rows([[1, 1, 0]]))
    ray_cone = face_as_cone(ray, samples=200, seed=0)
    assert member(ray_cone, (3,)) and not member(ray_cone, (-1,))

    full = make_face(fixture.cone, (1, 0, 0), Subspace.whole_space(3))
    full_cone = face_as_cone(full, samples=100, seed=0)
    assert full_cone.p == fixture.cone.p


def test_face_membership_pullback(rng):
    """Face-cone membership through the basis equals parent-and-in-span."""
    face = orthant_facet_face()
    cone = face_as_cone(face, samples=50, seed=0)
    for _ in range(300):
        u = tuple(Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4))) for _ in range(2))
        ambient = face.span.from_coords(u)
        assert member(cone, u) == member(face.parent, ambient)


def test_exact_vanishing_on_span_for_all_catalog_faces():
    for fixture in (fx.orthant(3), fx.lorentz(3), fx.psd(3)):
        for entry in fixture.faces:
            face = make_face(fixture.cone, entry.z, entry.span())
            for k in range(face.m):
                assert fixture.cone.derivs[k].subspace_restriction(face.span).is_zero


def test_discover_span_matches_catalog():
    for fixture in (fx.orthant(3), fx.lorentz(3), fx.psd(3)):
        for entry in fixture.faces:
            found = discover_span(fixture.cone, entry.z, seed=2)
            assert same_span(found.span, entry.span()), (fixture.name, entry.name)


def test_discover_span_interior_short_circuit():
    found = discover_span(fx.orthant(3).cone, (1, 2, 3))
    assert found.trivial_interior and found.span.dim == 3


def test_discover_span_psd_catalog_example():
    fixture = fx.psd(3)
    z = fixture.face("rank-2").z  # diag(1,1,0)
    found = discover_span(fixture.cone, z, seed=0)
    assert found.span.dim == 3
    assert same_span(found.span, fixture.face("rank-2").span())


def test_mult_constancy_on_catalog_faces():
    for fixture in (fx.orthant(3), fx.lorentz(3)):
        for entry in fixture.faces:
            face = make_face(fixture.cone, entry.z, entry.span())
            rep = mult_constancy_check(face, samples=60, seed=0)
            assert rep, (fixture.name, entry.name, rep.witness)


def test_mult_constancy_psd_rank2_derived():
    fixture = fx.psd(3)
    entry = fixture.face("rank-2")
    face = make_face(fixture.cone, entry.z, entry.span())
    rep = mult_constancy_check(face, samples=60, seed=1)
    assert rep and face.m == 1
    # independent oracle: rank via eigendecomposition on sampled points
    rng = np.random.default_rng(7)
    fc = face_as_cone(face, samples=0)
    accepted = 0
    while accepted < 30:
        coords = np.array([1.0, 0.0, 1.0]) + 0.2 * rng.standard_normal(3)
        if not in_interior(fc, tuple(Fraction(float(v)).limit_denominator(10**6) for v in coords)):
            continue
        accepted += 1
        ambient = entry.span().as_float().from_coords(coords)
        lam = np.linalg.eigvalsh(fx.vec_to_sym(ambient, 3))
        assert np.sum(np.abs(lam) > 1e-9) == 2


def test_intersect_worked_example_exact():
    p1 = Polynomial.from_terms(2, {(1, 1): 1})
    p2 = Polynomial.from_terms(2, {(1, 1): -1})
    k1 = new_cone(p1, (1, 1))
    k2 = new_cone(p2, (1, -1))
    res = intersect(k1, k2, (1, 0), samples=100, seed=0)
    assert res.face1.m == 1 and res.face2.m == 1
    # q1*q2 restricted to the first axis is exactly u^2
    assert res.cone.p == Polynomial.from_terms(1, {(2,): 1})
    assert res.member_ambient((3, 0))
    assert not res.member_ambient((-2, 0))
    assert not res.member_ambient((1, 1))


def test_intersect_identity_case():
    fixture = fx.orthant(3)
    res = intersect(fixture.cone, fixture.cone, (1, 1, 1), samples=50, seed=0)
    assert res.cone.p == fixture.cone.p * fixture.cone.p
    rng = np.random.default_rng(3)
    for _ in range(200):
        x = tuple(Fraction(float(v)).limit_denominator(10**6) for v in rng.standard_normal(3))
        assert res.member_ambient(x) == member(fixture.cone, x)


def test_intersect_orthant_lorentz_sampled(rng):
    ko = fx.orthant(3).cone
    kl = fx.lorentz(3).cone
    res = intersect(ko, kl, (2, 1, 1), samples=100, seed=0)
    assert res.span.dim == 3
    o_oracle = fx.orthant(3).member_oracle
    l_oracle = fx.lorentz(3).member_oracle
    for _ in range(500):
        x = rng.standard_normal(3) * 2
        xr = tuple(Fraction(float(v)).limit_denominator(10**6) for v in x)
        expected = o_oracle(x) and l_oracle(x)
        assert res.member_ambient(xr) == expected


def test_intersect_requires_membership():
    with pytest.raises(ValueError):
        intersect(fx.orthant(3).cone, fx.lorentz(3).cone, (1, -1, 0))


def test_face_json_round_trip(tmp_path):
    face = orthant_facet_face()
    doc = face_to_json_dict(face)
    path = tmp_path / "face.json"
    path.write_text(json.dumps(doc))
    back = face_from_json_dict(json.loads(path.read_text()))
    assert back.m == face.m and back.q == face.q and back.z == face.z
    doc_bad = dict(doc, m=2)
    with pytest.raises(ValueError):
        face_from_json_dict(doc_bad)
