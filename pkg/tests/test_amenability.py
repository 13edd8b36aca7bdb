import numpy as np
import pytest

from hypcones import fixtures as fx
from hypcones.amenability import (
    FaceDistance,
    amenability_estimate,
    amenability_proof_path_check,
    dist_to_subspace,
    linear_regularity_estimate,
    project_to_cone,
    projection_certificate,
    weighted_norm,
)
from hypcones.faces import make_face
from hypcones.polynomials import Subspace


def catalog_kwargs(fixture, entry):
    return dict(
        parent_projector=fixture.projector,
        face_projector=entry.face_projector,
        catalog_rows=entry.span_rows,
        span_weights=entry.span_weights,
        weights=fixture.weights,
    )


def catalog_face(fixture, name):
    entry = fixture.face(name)
    return make_face(fixture.cone, entry.z, entry.span()), entry


def test_dist_to_subspace_examples():
    r = dist_to_subspace((1, 2, 3), Subspace.from_rows([[1, 0, 0], [0, 1, 0]]))
    assert np.allclose(r.point, [1, 2, 0]) and r.distance == 3.0
    assert r.residual <= 1e-12
    r2 = dist_to_subspace((2, 2, 0), Subspace.from_rows([[1, 1, 0]]))
    assert r2.distance <= 1e-12
    r3 = dist_to_subspace((1, 1), Subspace.from_rows([[1, -1]]))
    assert abs(r3.distance - 2**0.5) < 1e-12


def test_project_to_cone_closed_forms():
    fo = fx.orthant(3)
    r = project_to_cone(fo.cone, (1, -2, 3), projector=fo.projector)
    assert np.allclose(r.point, [1, 0, 3]) and r.distance == 2.0
    fl = fx.lorentz(3)
    r2 = project_to_cone(fl.cone, (-5, 0, 0), projector=fl.projector)
    assert np.allclose(r2.point, 0) and r2.distance == 5.0
    fp = fx.psd(2)
    r3 = project_to_cone(fp.cone, (1, 0, -2), projector=fp.projector, weights=fp.weights)
    assert np.allclose(r3.point, [1, 0, 0]) and abs(r3.distance - 2.0) < 1e-12


def test_generic_projection_matches_clip(rng):
    fo = fx.orthant(3)
    for _ in range(25):
        x = rng.standard_normal(3) * 2
        closed = project_to_cone(fo.cone, x, projector=fo.projector)
        generic = project_to_cone(fo.cone, x)
        assert generic.method == "cutting_plane" and generic.converged
        assert np.linalg.norm(closed.point - generic.point) <= 1e-6


def test_generic_projection_matches_psd_weighted(rng):
    fp = fx.psd(3)
    for _ in range(15):
        x = rng.standard_normal(6) * 2
        closed = project_to_cone(fp.cone, x, projector=fp.projector, weights=fp.weights)
        generic = project_to_cone(fp.cone, x, weights=fp.weights)
        assert abs(closed.distance - generic.distance) <= 1e-6
        assert weighted_norm(closed.point - generic.point, fp.weights) <= 1e-6


def test_projection_optimality_certificates(rng):
    for fixture in (fx.orthant(3), fx.lorentz(3), fx.psd(2)):
        for i in range(10):
            x = rng.standard_normal(fixture.cone.num_vars) * 2
            for kwargs in ({"projector": fixture.projector}, {}):
                res = project_to_cone(fixture.cone, x, weights=fixture.weights, **kwargs)
                v = projection_certificate(
                    fixture.cone, x, res, samples=40, seed=i, weights=fixture.weights
                )
                assert v <= 1e-6 * max(res.distance, 1e-9), (fixture.name, kwargs, v)


def test_projection_inside_point_is_fixed():
    fo = fx.orthant(3)
    r = project_to_cone(fo.cone, (1.0, 2.0, 3.0))
    assert r.distance == 0.0 and np.allclose(r.point, [1, 2, 3])


def test_amenability_orthant_face_kappa_one():
    fixture = fx.orthant(3)
    face, entry = catalog_face(fixture, "support-01")
    est = amenability_estimate(
        face, samples=500, seed=0, radius_set=(0.1, 1.0, 10.0), **catalog_kwargs(fixture, entry)
    )
    assert est.kappa_hat is not None and abs(est.kappa_hat - 1.0) <= 1e-6
    assert est.discarded > 0  # span samples landing inside the face are dropped
    for kr in est.kappa_by_radius.values():
        assert abs(kr - 1.0) <= 1e-6


def test_amenability_ratio_scale_invariance():
    fixture = fx.psd(3)
    face, entry = catalog_face(fixture, "rank-2")
    est = amenability_estimate(
        face, samples=300, seed=1, radius_set=(0.1, 1.0, 10.0), **catalog_kwargs(fixture, entry)
    )
    values = list(est.kappa_by_radius.values())
    assert all(v is not None for v in values)
    base = values[0]
    for v in values[1:]:
        assert abs(v - base) <= 0.01 * base


def test_amenability_nested_sample_monotone():
    fixture = fx.lorentz(3)
    face, entry = catalog_face(fixture, "ray")
    kw = catalog_kwargs(fixture, entry)
    est_small = amenability_estimate(face, samples=100, seed=4, radius_set=(1.0,), **kw)
    est_big = amenability_estimate(face, samples=400, seed=4, radius_set=(1.0,), **kw)
    assert est_big.kappa_hat >= est_small.kappa_hat - 1e-12


def test_amenability_generic_path_matches_catalog():
    fixture = fx.orthant(3)
    face, entry = catalog_face(fixture, "support-01")
    est_generic = amenability_estimate(face, samples=150, seed=2, radius_set=(1.0,))
    assert abs(est_generic.kappa_hat - 1.0) <= 1e-5


def test_chain_report_sandwich_holds():
    fixture = fx.psd(3)
    face, entry = catalog_face(fixture, "rank-1")
    rep = amenability_proof_path_check(
        face, samples=150, seed=0, **catalog_kwargs(fixture, entry)
    )
    assert rep.ok and rep.z_interior_ok
    assert rep.sandwich_violations == ()
    assert rep.kappa_parent is not None and rep.kappa_parent >= 1.0 - 1e-9


def test_linear_regularity_whole_space():
    fixture = fx.orthant(3)
    est = linear_regularity_estimate(
        Subspace.whole_space(3), fixture.cone, witness=(1, 1, 1),
        samples=80, seed=0, projector=fixture.projector,
    )
    assert abs(est.kappa_hat - 1.0) <= 1e-9


def test_linear_regularity_commuting_projections():
    fixture = fx.orthant(3)
    sub = Subspace.from_rows([[1, 0, 0], [0, 1, 0]])
    est = linear_regularity_estimate(
        sub, fixture.cone, witness=(1, 1, 0), samples=80, seed=0,
        projector=fixture.projector, require_interior=False,
    )
    assert est.kappa_hat <= 1.0 + 1e-6


def test_linear_regularity_interior_qualification_enforced():
    fixture = fx.orthant(3)
    sub = Subspace.from_rows([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValueError):
        linear_regularity_estimate(sub, fixture.cone, witness=(1, 1, 0), samples=10, seed=0)


def test_linear_regularity_discards_feasible_samples():
    fixture = fx.orthant(2)
    est = linear_regularity_estimate(
        Subspace.whole_space(2), fixture.cone, witness=(1, 1),
        samples=60, seed=1, projector=fixture.projector,
    )
    assert est.discarded > 0  # Gaussians landing inside the orthant are 0/0


def test_face_distance_sphere_sampling_isometry(rng):
    fixture = fx.psd(3)
    face, entry = catalog_face(fixture, "rank-2")
    fd = FaceDistance(face, weights=fixture.weights)
    pts = fd.sphere_points(200, rng)
    norms = np.array([weighted_norm(p, fixture.weights) for p in pts])
    assert np.allclose(norms, 1.0, atol=1e-12)
