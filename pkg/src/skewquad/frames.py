"""Orthonormal frames of the special subspaces spanned by S-basis vectors.

alpha1 = span{u, Su, S^2u}, alpha2 = span{u, Su, S^3u} (3-dimensional);
beta1 = span{u, S^2u}, beta2 = span{u, Su}, beta3 = span{u, S^3u} (planes).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import CAUSAL_TOL, Metric, SBasis, as_metric, assoc_gram, s_basis

FRAME_DEGENERACY_TOL = 1e-8


class Subspace(str, enum.Enum):
    ALPHA1 = "alpha1"
    ALPHA2 = "alpha2"
    BETA1 = "beta1"
    BETA2 = "beta2"
    BETA3 = "beta3"

    @property
    def dim(self) -> int:
        return 3 if self in (Subspace.ALPHA1, Subspace.ALPHA2) else 2

    @property
    def span_indices(self) -> tuple:
        """Powers k of S whose iterates S^k u span the subspace."""
        return {
            Subspace.ALPHA1: (0, 1, 2),
            Subspace.ALPHA2: (0, 1, 3),
            Subspace.BETA1: (0, 2),
            Subspace.BETA2: (0, 1),
            Subspace.BETA3: (0, 3),
        }[self]


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class Frame:
    vectors: np.ndarray  # shape (k, 4), one frame vector per row
    subspace: Subspace
    phi: float
    basis: SBasis = field(repr=False)

    @property
    def metric(self) -> Metric:
        return self.basis.metric

    def gram(self) -> np.ndarray:
        """Gram matrix of g on the frame vectors (identity for a valid frame)."""
        return self.vectors @ self.metric.gram @ self.vectors.T

    def span_residual(self) -> float:
        """How far the frame vectors stray from the intended span."""
        spanning = self.basis.vectors[list(self.subspace.span_indices)]
        return span_residual(self.vectors, spanning)


def span_residual(vectors, spanning) -> float:
    """Max least-squares residual of writing each row of vectors via rows of spanning."""
    vectors = np.atleast_2d(vectors)
    spanning = np.atleast_2d(spanning)
    coef, *_ = np.linalg.lstsq(spanning.T, vectors.T, rcond=None)
    return float(np.max(np.abs(spanning.T @ coef - vectors.T)))


def _basis(g, u) -> SBasis:
    if isinstance(u, SBasis):
        return u
    return s_basis(as_metric(g), u)


def _alpha_denominator(phi: float) -> float:
    d = 1.0 - 2.0 * math.cos(phi) ** 2
    if abs(d) <= FRAME_DEGENERACY_TOL:
        raise FrameError(
            f"phi={phi!r} too close to pi/4 or 3pi/4: 1 - 2cos^2(phi) = {d:.3g}"
        )
    return math.sqrt(d)


def frame_alpha1(g, u) -> Frame:
    b = _basis(g, u)
    c = math.cos(b.phi)
    u0, u1, u2, _ = b.vectors
    e2 = (-c * u0 + u1 - c * u2) / _alpha_denominator(b.phi)
    return Frame(np.array([u0, e2, u2]), Subspace.ALPHA1, b.phi, b)


def frame_alpha2(g, u) -> Frame:
    b = _basis(g, u)
    c = math.cos(b.phi)
    u0, u1, _, u3 = b.vectors
    e2 = (u0 - c * u1 + c * u3) / _alpha_denominator(b.phi)
    return Frame(np.array([u1, e2, u3]), Subspace.ALPHA2, b.phi, b)


def frame_beta1(g, u) -> Frame:
    b = _basis(g, u)
    return Frame(b.vectors[[0, 2]].copy(), Subspace.BETA1, b.phi, b)


def frame_beta2(g, u) -> Frame:
    b = _basis(g, u)
    c = math.cos(b.phi)
    u0, u1 = b.vectors[0], b.vectors[1]
    e1 = (u0 + u1) / math.sqrt(2.0 * (1.0 + c))
    e2 = (-u0 + u1) / math.sqrt(2.0 * (1.0 - c))
    return Frame(np.array([e1, e2]), Subspace.BETA2, b.phi, b)


def frame_beta3(g, u) -> Frame:
    b = _basis(g, u)
    c = math.cos(b.phi)
    u0, u3 = b.vectors[0], b.vectors[3]
    e1 = (u0 + u3) / math.sqrt(2.0 * (1.0 - c))
    e2 = (-u0 + u3) / math.sqrt(2.0 * (1.0 + c))
    return Frame(np.array([e1, e2]), Subspace.BETA3, b.phi, b)


_BUILDERS = {
    Subspace.ALPHA1: frame_alpha1,
    Subspace.ALPHA2: frame_alpha2,
    Subspace.BETA1: frame_beta1,
    Subspace.BETA2: frame_beta2,
    Subspace.BETA3: frame_beta3,
}


def build_frame(g, u, subspace) -> Frame:
    return _BUILDERS[Subspace(subspace)](g, u)


def assoc_gram_on_frame(g, frame: Frame) -> np.ndarray:
    """Matrix of assoc(g, f_i, f_j) over the frame vectors."""
    vs = frame.vectors
    out = vs @ assoc_gram(g) @ vs.T
    return 0.5 * (out + out.T)


def closed_form_gram(subspace, phi: float) -> np.ndarray:
    """Associated-metric Gram matrix on the named frame, as a function of phi."""
    subspace = Subspace(subspace)
    c = math.cos(phi)
    if abs(2 * c) <= CAUSAL_TOL:
        # isotropic generator: cos(pi/2) is 6e-17 in floating point
        c = 0.0
    if subspace is Subspace.BETA1:
        return np.diag([2 * c, 2 * c])
    k_plus = (2 * c + 1) / (1 + c)
    k_minus = (2 * c - 1) / (1 - c)
    if subspace is Subspace.BETA2:
        return np.diag([k_plus, k_minus])
    if subspace is Subspace.BETA3:
        return np.diag([k_minus, k_plus])
    s = _alpha_denominator(phi)
    s23 = s if subspace is Subspace.ALPHA1 else -s
    return np.array(
        [
            [2 * c, s, 0.0],
            [s, -2 * c, s23],
            [0.0, s23, 2 * c],
        ]
    )
