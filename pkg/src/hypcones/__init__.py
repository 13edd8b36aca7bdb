"""Exact and numerical computation with hyperbolic polynomials and their cones.

The package is organized the way the objects stack up:

* :mod:`hypcones.polynomials` -- sparse homogeneous polynomials (exact
  rational or float coefficients), directional derivatives, restrictions
  to lines and subspaces, and the JSON file format.
* :mod:`hypcones.realroots` -- real-rootedness certificates (Sturm
  sequences in exact mode, companion matrices in float mode), real root
  extraction with multiplicities, coefficient vanishing checks.
* :mod:`hypcones.cones` -- hyperbolicity validation, the eigenvalue map,
  membership and interiority oracles, multiplicity signatures, derivative
  relaxations, and direction invariance.
* :mod:`hypcones.faces` -- face descriptors anchored at (witness, span)
  pairs, representation verification, span discovery, and intersections.
* :mod:`hypcones.amenability` -- projections onto subspaces and cones
  (closed forms or cutting planes) and empirical facial error bounds.
* :mod:`hypcones.fixtures` -- orthant, second-order, symmetric-determinant
  and elementary-symmetric cones with independent oracles and face
  catalogs.
* :mod:`hypcones.cli` -- the ``hypcone`` command.
"""

from .amenability import (
    AmenabilityEstimate,
    ChainReport,
    FaceDistance,
    LinearRegularityEstimate,
    ProjectionResult,
    amenability_estimate,
    amenability_proof_path_check,
    dist_to_subspace,
    linear_regularity_estimate,
    project_to_cone,
    projection_certificate,
)
from .cones import (
    Certification,
    HyperbolicityCone,
    MultiplicitySignature,
    Tolerances,
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
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    HomogeneityError,
    ModeMismatchError,
    NotCertifiedError,
    NotHyperbolicError,
    NumericalInconsistencyError,
    ZeroPolynomialError,
)
from .faces import (
    ConeIntersection,
    FaceDescriptor,
    FaceVerificationReport,
    SpanDiscovery,
    discover_span,
    face_as_cone,
    face_from_json_dict,
    face_to_json_dict,
    intersect,
    make_face,
    mult_constancy_check,
    verify_face_representation,
)
from .polynomials import (
    MODE_FLOAT,
    MODE_RATIONAL,
    Polynomial,
    Subspace,
    load_polynomial,
    poly_from_json_dict,
    poly_to_json_dict,
    save_polynomial,
)
from .realroots import (
    RootList,
    UnivariatePoly,
    Verdict,
    all_roots_real,
    real_roots,
    trailing_vanishing_holds,
    zero_multiplicity,
)

__version__ = "0.1.0"
