"""Tangent-space algebra of the skew-circulant structure S.

Vectors are plain length-4 float arrays; ``S`` acts on components by
matrix multiplication, so ``S @ u`` is ``Su``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

COMPAT_TOL = 1e-12
CAUSAL_TOL = 1e-9
DET_TOL = 1e-10
ANGLE_TOL = 1e-10


class SBasisError(ValueError):
    """Raised when a vector does not induce an S-basis."""


def skew_circulant(first_row) -> np.ndarray:
    """Skew-circulant matrix with the given first row.

    Each row is the previous one shifted right, with the entry that wraps
    around to the front negated.
    """
    row = np.asarray(first_row)
    if row.ndim != 1:
        raise ValueError("first_row must be one-dimensional")
    if np.issubdtype(row.dtype, np.floating) and not np.all(np.isfinite(row)):
        raise ValueError("first_row must be finite")
    n = row.size
    out = np.empty((n, n), dtype=row.dtype)
    out[0] = row
    for i in range(1, n):
        out[i, 1:] = out[i - 1, :-1]
        out[i, 0] = -out[i - 1, -1]
    return out


_S_INT = skew_circulant(np.array([0, 1, 0, 0], dtype=np.int64))


def structure_s(exact: bool = False) -> np.ndarray:
    """The structure S (first row (0, 1, 0, 0)).

    With ``exact=True`` an int64 copy is returned, so identities such as
    S^4 = -I can be checked without rounding.
    """
    if exact:
        return _S_INT.copy()
    return _S_INT.astype(float)


def s_power(k: int, exact: bool = False) -> np.ndarray:
    """S**k for any integer k (negative powers use S^-1 = S^T)."""
    base = _S_INT if k >= 0 else _S_INT.T
    out = np.linalg.matrix_power(base, abs(k))
    return out if exact else out.astype(float)


S = structure_s()
J = S @ S


def as_vec4(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (4,):
        raise ValueError(f"expected a 4-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite components")
    return arr


def _leading_minors(a: np.ndarray) -> np.ndarray:
    return np.array([np.linalg.det(a[:k, :k]) for k in range(1, a.shape[0] + 1)])


@dataclass(frozen=True)
class Metric:
    """Positive definite bilinear form g on 4-space, stored by its Gram matrix."""

    gram: np.ndarray = field(repr=False)

    def __post_init__(self):
        gram = np.array(self.gram, dtype=float)
        if gram.shape != (4, 4):
            raise ValueError(f"metric must be 4x4, got {gram.shape}")
        if not np.all(np.isfinite(gram)):
            raise ValueError("metric has non-finite entries")
        if not np.array_equal(gram, gram.T):
            raise ValueError("metric is not symmetric")
        if np.any(_leading_minors(gram) <= 0):
            raise ValueError("metric is not positive definite")
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)

    @classmethod
    def identity(cls) -> "Metric":
        return cls(np.eye(4))

    def __call__(self, u, v) -> float:
        return float(as_vec4(u) @ self.gram @ as_vec4(v))

    def __repr__(self):
        return f"Metric({self.gram.tolist()!r})"


def as_metric(g) -> Metric:
    if isinstance(g, Metric):
        return g
    return Metric(np.asarray(g, dtype=float))


def compatibility_residual(g) -> float:
    """max |S^T g S - g|; zero for a metric with g(Su, Sv) = g(u, v)."""
    gram = as_metric(g).gram
    return float(np.max(np.abs(S.T @ gram @ S - gram)))


def is_compatible(g, tol: float = COMPAT_TOL) -> bool:
    return compatibility_residual(g) <= tol


def random_compatible_metric(seed=None, base=None) -> Metric:
    """Random S-compatible metric built by averaging over the powers of S.

    ``base`` replaces the random positive definite seed matrix when given.
    Conjugation by S has period 4 on symmetric matrices (S^4 = -I), so the
    average over S^0..S^3 is fixed by it.
    """
    if base is None:
        rng = np.random.default_rng(seed)
        a = rng.uniform(-1.0, 1.0, size=(4, 4))
        base = a.T @ a + 4.0 * np.eye(4)
    base = np.asarray(base, dtype=float)
    total = np.zeros((4, 4))
    for k in range(4):
        sk = s_power(k)
        total += sk.T @ base @ sk
    avg = total / 4.0
    return Metric(0.5 * (avg + avg.T))


def inner(g, u, v) -> float:
    return as_metric(g)(u, v)


def assoc(g, u, v) -> float:
    """Associated indefinite metric g(u, Sv) + g(Su, v)."""
    g = as_metric(g)
    u, v = as_vec4(u), as_vec4(v)
    return g(u, S @ v) + g(S @ u, v)


def assoc_gram(g) -> np.ndarray:
    """Gram matrix of the associated metric: G S + S^T G."""
    gram = as_metric(g).gram
    return gram @ S + S.T @ gram


def norm(g, v) -> float:
    return math.sqrt(inner(g, v, v))


def angle(g, u, v) -> float:
    nu, nv = norm(g, u), norm(g, v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("angle undefined for a zero vector")
    c = inner(g, u, v) / (nu * nv)
    return math.acos(min(1.0, max(-1.0, c)))


class CausalCharacter(str, enum.Enum):
    SPACE_LIKE = "space-like"
    ISOTROPIC = "isotropic"
    TIME_LIKE = "time-like"


def causal_character(g, v, tol: float = CAUSAL_TOL) -> CausalCharacter:
    """Sign of the associated metric on v, with |value| <= tol*|v|^2 isotropic."""
    g = as_metric(g)
    v = as_vec4(v)
    n2 = g(v, v)
    if n2 == 0.0:
        raise ValueError("causal character undefined for the zero vector")
    val = assoc(g, v, v)
    if val > tol * n2:
        return CausalCharacter.SPACE_LIKE
    if val < -tol * n2:
        return CausalCharacter.TIME_LIKE
    return CausalCharacter.ISOTROPIC


def classify_by_phi(phi: float, tol: float = CAUSAL_TOL) -> CausalCharacter:
    """Causal character of an S-basis generator from its angle phi = angle(u, Su).

    A unit generator has assoc(u, u) = 2 cos(phi), so the isotropic band
    matches :func:`causal_character` on unit vectors.
    """
    if not (math.pi / 4 < phi < 3 * math.pi / 4):
        raise ValueError(f"phi={phi!r} outside (pi/4, 3pi/4)")
    val = 2.0 * math.cos(phi)
    if val > tol:
        return CausalCharacter.SPACE_LIKE
    if val < -tol:
        return CausalCharacter.TIME_LIKE
    return CausalCharacter.ISOTROPIC


@dataclass(frozen=True)
class SBasis:
    """The iterates u, Su, S^2u, S^3u of a unit generator u."""

    metric: Metric = field(repr=False)
    vectors: np.ndarray  # rows are u, Su, S^2u, S^3u
    phi: float

    @property
    def generator(self) -> np.ndarray:
        return self.vectors[0]

    @property
    def columns(self) -> np.ndarray:
        """Matrix whose columns are the basis vectors (coordinates -> ambient)."""
        return self.vectors.T

    def angle_relations(self) -> dict:
        """The pairwise angles between basis vectors, keyed by index pair."""
        vs = self.vectors
        return {
            (i, j): angle(self.metric, vs[i], vs[j])
            for i in range(4)
            for j in range(i + 1, 4)
        }

    def angle_law_residual(self) -> float:
        """Largest deviation from the angle law of an S-basis.

        angle(u,Su) = angle(Su,S^2u) = angle(S^2u,S^3u) = pi - angle(S^3u,u)
        and angle(u,S^2u) = angle(Su,S^3u) = pi/2.
        """
        a = self.angle_relations()
        phi = a[(0, 1)]
        devs = [
            a[(1, 2)] - phi,
            a[(2, 3)] - phi,
            (math.pi - a[(0, 3)]) - phi,
            a[(0, 2)] - math.pi / 2,
            a[(1, 3)] - math.pi / 2,
        ]
        return max(abs(d) for d in devs)


def s_basis(g, u) -> SBasis:
    """S-basis induced by u (normalized to g-unit length first)."""
    g = as_metric(g)
    u = as_vec4(u)
    n = norm(g, u)
    if n == 0.0:
        raise SBasisError("u does not induce an S-basis: zero vector")
    u = u / n
    rows = np.array([u, S @ u, J @ u, S @ (J @ u)])
    if abs(np.linalg.det(rows)) <= DET_TOL:
        raise SBasisError("u does not induce an S-basis")
    basis = SBasis(g, rows, angle(g, rows[0], rows[1]))
    if basis.angle_law_residual() > ANGLE_TOL:
        raise SBasisError(
            "S-basis angle law violated; is the metric S-compatible?"
        )
    if not (math.pi / 4 < basis.phi < 3 * math.pi / 4):
        raise SBasisError(f"phi={basis.phi!r} outside (pi/4, 3pi/4)")
    return basis


def generator_for_phi(g, phi: float, seed=None) -> np.ndarray:
    """A g-unit vector u with angle(u, Su) = phi that induces an S-basis.

    The symmetric part of g(., S.) has eigenvalues +-sqrt(2)/2 relative to g,
    each on an S-invariant plane.  Mixing unit vectors p, m from the two
    planes as cos(t) p + sin(t) m gives cos(phi) = sqrt(2)/2 * cos(2t).
    """
    import scipy.linalg

    if not (math.pi / 4 < phi < 3 * math.pi / 4):
        raise ValueError(f"phi={phi!r} outside (pi/4, 3pi/4)")
    g = as_metric(g)
    sym = 0.5 * assoc_gram(g)
    # generalized eigenvectors are g-orthonormal
    _, vecs = scipy.linalg.eigh(sym, g.gram)
    rng = np.random.default_rng(seed)
    if seed is None:
        cm, cp = np.array([1.0, 0.3]), np.array([0.7, -0.4])
    else:
        cm, cp = rng.normal(size=2), rng.normal(size=2)
    m = vecs[:, :2] @ (cm / np.linalg.norm(cm))
    p = vecs[:, 2:] @ (cp / np.linalg.norm(cp))
    t = 0.5 * math.acos(max(-1.0, min(1.0, math.sqrt(2.0) * math.cos(phi))))
    u = math.cos(t) * p + math.sin(t) * m
    return u / norm(g, u)


def orthonormal_s_basis(g, seed=None) -> SBasis:
    """An S-basis that is g-orthonormal (phi = pi/2)."""
    return s_basis(g, generator_for_phi(g, math.pi / 2, seed=seed))
