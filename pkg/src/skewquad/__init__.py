"""Hyper-spheres, spheres and circles of the indefinite metric associated
with a skew-circulant structure S (S^4 = -id) on 4-space."""

from .core import (
    CausalCharacter,
    Metric,
    SBasis,
    SBasisError,
    angle,
    assoc,
    assoc_gram,
    causal_character,
    classify_by_phi,
    generator_for_phi,
    is_compatible,
    norm,
    random_compatible_metric,
    s_basis,
    skew_circulant,
    structure_s,
)
from .frames import (
    Frame,
    FrameError,
    Subspace,
    assoc_gram_on_frame,
    frame_alpha1,
    frame_alpha2,
    frame_beta1,
    frame_beta2,
    frame_beta3,
)
from .quadrics import (
    EmptyQuadricError,
    QuadraticForm,
    QuadricClass,
    circle_form_beta,
    classify,
    hyper_sphere_form,
    isotropic_heads_check,
    sample_points,
    section_by_coordinate_plane,
    sphere_form_alpha,
    table1,
    transform_3d,
    transform_4d,
)

__version__ = "0.1.0"
