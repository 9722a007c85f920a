"""Central quadrics {x : x^T A x = a} arising as spheres of the associated metric.

Forms are always written in g-orthonormal coordinates of the subspace they
live in, so their Euclidean type is read off from eigenvalue signs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import frames as fr
from .core import CAUSAL_TOL, as_metric, generator_for_phi, s_basis
from .frames import Subspace

ZERO_TOL = 1e-9
BOUNDARY_TOL = 1e-9
ORTHO_TOL = 1e-12

SQRT2 = math.sqrt(2.0)


class EmptyQuadricError(ValueError):
    pass


class QuadricClass(str, enum.Enum):
    # 4-dimensional
    HYPERQUADRIC = "hyperquadric"
    HYPER_CONE = "hyper-cone"
    # 3-dimensional
    ELLIPSOID = "ellipsoid"
    HYPERBOLOID_ONE_SHEET = "hyperboloid-one-sheet"
    HYPERBOLOID_TWO_SHEETS = "hyperboloid-two-sheets"
    CONE = "cone"
    HYPERBOLIC_CYLINDER = "hyperbolic-cylinder"
    PAIR_OF_PLANES = "pair-of-planes"
    # 2-dimensional
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"
    TWO_INTERSECTING_LINES = "two-intersecting-lines"
    TWO_PARALLEL_LINES = "two-parallel-lines"
    SINGLE_LINE = "single-line"
    # any dimension
    POINT = "point"
    EMPTY = "empty"
    OTHER_DEGENERATE = "other-degenerate"


@dataclass(frozen=True)
class QuadraticForm:
    """The locus x^T matrix x = rhs."""

    matrix: np.ndarray
    rhs: float

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 3, 4):
            raise ValueError(f"form matrix must be square of size 2..4, got {m.shape}")
        if not np.all(np.isfinite(m)) or not math.isfinite(self.rhs):
            raise ValueError("form has non-finite entries")
        if not np.allclose(m, m.T, rtol=0, atol=1e-12 * max(1.0, np.abs(m).max())):
            raise ValueError("form matrix is not symmetric")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rhs", float(self.rhs))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x) -> np.ndarray:
        """Q(x) for one point or a stack of points (last axis = coordinates)."""
        x = np.asarray(x, dtype=float)
        return np.einsum("...i,ij,...j->...", x, self.matrix, x)

    def residual(self, x) -> np.ndarray:
        return np.abs(self(x) - self.rhs)

    def congruent(self, p) -> "QuadraticForm":
        """The same locus in coordinates x = P x'."""
        p = np.asarray(p, dtype=float)
        return QuadraticForm(p.T @ self.matrix @ p, self.rhs)

    def scaled(self, k: float) -> "QuadraticForm":
        return QuadraticForm(k * self.matrix, k * self.rhs)


# -- 4-dimensional hyper-sphere --------------------------------------------


def hyper_sphere_form(a: float) -> QuadraticForm:
    """2(xy - xt + yz + zt) = a in orthonormal S-basis coordinates (x, y, z, t)."""
    m = np.zeros((4, 4))
    m[0, 1] = m[1, 0] = 1.0
    m[0, 3] = m[3, 0] = -1.0
    m[1, 2] = m[2, 1] = 1.0
    m[2, 3] = m[3, 2] = 1.0
    return QuadraticForm(m, a)


def transform_4d() -> np.ndarray:
    """P with (x, y, z, t) = P (x', y', z', t'); diagonalizes the hyper-sphere."""
    h = 0.5
    r = SQRT2 / 2
    return np.array(
        [
            [h, -h, h, -h],
            [0.0, -r, 0.0, r],
            [-h, -h, -h, -h],
            [-r, 0.0, r, 0.0],
        ]
    )


def diagonal_hyper_sphere_form(a: float) -> QuadraticForm:
    """sqrt(2)(x'^2 + y'^2 - z'^2 - t'^2) = a."""
    return QuadraticForm(SQRT2 * np.diag([1.0, 1.0, -1.0, -1.0]), a)


def section_by_coordinate_plane(form4: QuadraticForm, axis: int) -> QuadraticForm:
    """Restrict a 4-dimensional form to the hyperplane where coordinate ``axis`` is 0."""
    if form4.dim != 4:
        raise ValueError("section_by_coordinate_plane expects a 4-dimensional form")
    if axis not in (0, 1, 2, 3):
        raise ValueError(f"axis must be 0..3, got {axis!r}")
    keep = [i for i in range(4) if i != axis]
    return QuadraticForm(form4.matrix[np.ix_(keep, keep)], form4.rhs)


# -- 3-dimensional spheres -------------------------------------------------


def _check_phi(phi: float):
    if not (math.pi / 4 < phi < 3 * math.pi / 4):
        raise ValueError(f"phi={phi!r} outside (pi/4, 3pi/4)")


def sphere_matrix(phi: float, variant=Subspace.ALPHA1) -> np.ndarray:
    """Coefficients of 2cos(phi)(x^2 - y^2 + z^2) + 2 sqrt(1 - 2cos^2 phi)(xy +- yz)."""
    variant = Subspace(variant)
    if variant.dim != 3:
        raise ValueError(f"{variant.value} is not a 3-dimensional subspace")
    _check_phi(phi)
    return fr.closed_form_gram(variant, phi)


def transform_3d(phi: float, variant=Subspace.ALPHA1) -> np.ndarray:
    """P with (x, y, z) = P (x', y', z') taking a sphere to diag(2cos phi, sqrt2, -sqrt2)."""
    variant = Subspace(variant)
    if variant.dim != 3:
        raise ValueError(f"{variant.value} is not a 3-dimensional subspace")
    _check_phi(phi)
    c = math.cos(phi)
    lam1 = 0.5 * math.sqrt(1 + SQRT2 * c)
    lam2 = (SQRT2 / 2) * math.sqrt(1 - SQRT2 * c)
    mu1 = 0.5 * math.sqrt(1 - SQRT2 * c)
    mu2 = -(SQRT2 / 2) * math.sqrt(1 + SQRT2 * c)
    r = 1 / SQRT2
    last = [-r, lam1, mu1] if variant is Subspace.ALPHA1 else [r, -lam1, -mu1]
    return np.array([[r, lam1, mu1], [0.0, lam2, mu2], last])


def sphere_form_alpha(g, u, variant=Subspace.ALPHA1, a: float = 1.0) -> QuadraticForm:
    """Sphere of radius constant a in alpha1/alpha2, in the frame's coordinates."""
    frame = fr.build_frame(g, u, variant)
    return QuadraticForm(sphere_matrix(frame.phi, variant), a)


# -- 2-dimensional circles -------------------------------------------------


def circle_matrix(phi: float, variant=Subspace.BETA2) -> np.ndarray:
    variant = Subspace(variant)
    if variant.dim != 2:
        raise ValueError(f"{variant.value} is not a 2-plane")
    _check_phi(phi)
    return fr.closed_form_gram(variant, phi)


def circle_form_beta(g, u, variant=Subspace.BETA2, a: float = 1.0) -> QuadraticForm:
    frame = fr.build_frame(g, u, variant)
    return QuadraticForm(circle_matrix(frame.phi, variant), a)


def subspace_form(subspace, phi: float, a: float) -> QuadraticForm:
    """Sphere/circle form of a named subspace from phi alone."""
    subspace = Subspace(subspace)
    if subspace.dim == 3:
        return QuadraticForm(sphere_matrix(phi, subspace), a)
    return QuadraticForm(circle_matrix(phi, subspace), a)


# -- classification --------------------------------------------------------


def inertia(matrix, tol: float = ZERO_TOL) -> tuple:
    """(positive, negative, zero) eigenvalue counts; zero means |l| <= tol * max|l|."""
    ev = np.linalg.eigvalsh(np.asarray(matrix, dtype=float))
    scale = np.max(np.abs(ev)) if ev.size else 0.0
    zero = np.abs(ev) <= tol * scale
    return int(np.sum((ev > 0) & ~zero)), int(np.sum((ev < 0) & ~zero)), int(np.sum(zero))


def _rhs_sign(form: QuadraticForm) -> int:
    return (form.rhs > 0) - (form.rhs < 0)


def classify(form: QuadraticForm, tol: float = ZERO_TOL) -> QuadricClass:
    """Euclidean type of a central quadric from eigenvalue signs and sign(rhs)."""
    pos, neg, zero = inertia(form.matrix, tol)
    sgn = _rhs_sign(form)
    dim = form.dim
    if zero == dim:
        return QuadricClass.EMPTY if sgn != 0 else QuadricClass.OTHER_DEGENERATE
    if sgn == 0:
        if pos == 0 or neg == 0:
            if zero == 0:
                return QuadricClass.POINT
            if dim == 2:
                return QuadricClass.SINGLE_LINE
            return QuadricClass.OTHER_DEGENERATE
        if zero == 0:
            return {
                2: QuadricClass.TWO_INTERSECTING_LINES,
                3: QuadricClass.CONE,
                4: QuadricClass.HYPER_CONE,
            }[dim]
        if dim == 3 and zero == 1:
            return QuadricClass.PAIR_OF_PLANES
        return QuadricClass.OTHER_DEGENERATE
    # Normalize to rhs > 0: count directions along which the form agrees with rhs.
    same, opposite = (pos, neg) if sgn > 0 else (neg, pos)
    if same == 0:
        return QuadricClass.EMPTY
    if dim == 4:
        return QuadricClass.HYPERQUADRIC
    if dim == 2:
        if zero == 1:
            return QuadricClass.TWO_PARALLEL_LINES
        if opposite == 1:
            return QuadricClass.HYPERBOLA
        ev = np.abs(np.linalg.eigvalsh(form.matrix))
        if ev.max() - ev.min() <= tol * ev.max():
            return QuadricClass.CIRCLE
        return QuadricClass.ELLIPSE
    # dim 3
    if zero == 0:
        return {
            3: QuadricClass.ELLIPSOID,
            2: QuadricClass.HYPERBOLOID_ONE_SHEET,
            1: QuadricClass.HYPERBOLOID_TWO_SHEETS,
        }[same]
    if zero == 1 and same == 1 and opposite == 1:
        return QuadricClass.HYPERBOLIC_CYLINDER
    return QuadricClass.OTHER_DEGENERATE


def describe(form: QuadraticForm, tol: float = ZERO_TOL) -> dict:
    """Class plus the signature data it was derived from."""
    pos, neg, zero = inertia(form.matrix, tol)
    out = {
        "class": classify(form, tol).value,
        "signature": [pos, neg, zero],
        "rhs_sign": _rhs_sign(form),
    }
    geometry = degenerate_geometry(form, tol)
    if geometry is not None:
        out["degenerate_geometry"] = geometry
    return out


_AXES = "xyzt"


def degenerate_geometry(form: QuadraticForm, tol: float = ZERO_TOL):
    """Line equations for line-pair classes of a diagonal 2-dimensional form.

    Returns None for other classes or non-diagonal forms.
    """
    if form.dim != 2 or abs(form.matrix[0, 1]) > tol * max(1.0, np.abs(form.matrix).max()):
        return None
    kind = classify(form, tol)
    c = np.diag(form.matrix)
    scale = np.abs(c).max()
    nonzero = [i for i in range(2) if abs(c[i]) > tol * scale]
    if kind is QuadricClass.TWO_PARALLEL_LINES:
        i = nonzero[0]
        offset = math.sqrt(form.rhs / c[i])
        return {
            "kind": "parallel",
            "axis": _AXES[i],
            "offset": offset,
            "lines": [f"{_AXES[i]} = {offset!r}", f"{_AXES[i]} = {-offset!r}"],
        }
    if kind is QuadricClass.SINGLE_LINE:
        i = nonzero[0]
        return {"kind": "single", "axis": _AXES[i], "offset": 0.0, "lines": [f"{_AXES[i]} = 0"]}
    if kind is QuadricClass.TWO_INTERSECTING_LINES:
        # c0 x^2 + c1 y^2 = 0  ->  y = +-slope x
        slope = math.sqrt(c[0] / -c[1])
        return {
            "kind": "intersecting",
            "slope": slope,
            "lines": [f"y = {slope!r} * x", f"y = {-slope!r} * x"],
        }
    return None


# -- regime table for the beta2 / beta3 circles ---------------------------


class PhiRegime(str, enum.Enum):
    BELOW_PI_3 = "(pi/4, pi/3)"
    PI_3 = "pi/3"
    MIDDLE = "(pi/3, 2pi/3)"
    TWO_PI_3 = "2pi/3"
    ABOVE_2PI_3 = "(2pi/3, 3pi/4)"


def phi_regime(phi: float, tol: float = BOUNDARY_TOL) -> PhiRegime:
    _check_phi(phi)
    if abs(phi - math.pi / 3) <= tol:
        return PhiRegime.PI_3
    if abs(phi - 2 * math.pi / 3) <= tol:
        return PhiRegime.TWO_PI_3
    if phi < math.pi / 3:
        return PhiRegime.BELOW_PI_3
    if phi < 2 * math.pi / 3:
        return PhiRegime.MIDDLE
    return PhiRegime.ABOVE_2PI_3


_TABLE1 = {
    PhiRegime.BELOW_PI_3: (QuadricClass.ELLIPSE, QuadricClass.POINT, QuadricClass.EMPTY),
    PhiRegime.PI_3: (
        QuadricClass.TWO_PARALLEL_LINES,
        QuadricClass.SINGLE_LINE,
        QuadricClass.EMPTY,
    ),
    PhiRegime.MIDDLE: (
        QuadricClass.HYPERBOLA,
        QuadricClass.TWO_INTERSECTING_LINES,
        QuadricClass.HYPERBOLA,
    ),
    PhiRegime.TWO_PI_3: (
        QuadricClass.EMPTY,
        QuadricClass.SINGLE_LINE,
        QuadricClass.TWO_PARALLEL_LINES,
    ),
    PhiRegime.ABOVE_2PI_3: (QuadricClass.EMPTY, QuadricClass.POINT, QuadricClass.ELLIPSE),
}


def table1(phi: float, a: float) -> QuadricClass:
    """Curve type of the beta2/beta3 circles by the closed-form (phi, sign a) rules."""
    row = _TABLE1[phi_regime(phi)]
    if a > 0:
        return row[0]
    if a == 0:
        return row[1]
    return row[2]


def table1_line_offset(phi: float, a: float):
    """|offset| of the parallel line pair at phi = pi/3 (a > 0) or 2pi/3 (a < 0)."""
    regime = phi_regime(phi)
    if (regime is PhiRegime.PI_3 and a > 0) or (regime is PhiRegime.TWO_PI_3 and a < 0):
        return math.sqrt(3 * abs(a)) / 2
    return None


def beta1_class(phi: float, a: float) -> QuadricClass:
    """Type of the beta1 circle: a circle, the point p, or empty."""
    c = math.cos(phi)
    if abs(2 * c) <= CAUSAL_TOL:
        raise ValueError("phi != pi/2 required: the beta1 form vanishes identically")
    if a == 0:
        return QuadricClass.POINT
    return QuadricClass.CIRCLE if (a > 0) == (c > 0) else QuadricClass.EMPTY


# -- hyper-cone / unit sphere intersection ---------------------------------


@dataclass(frozen=True)
class TorusReport:
    n_samples: int
    max_cone_residual: float
    max_sphere_residual: float
    max_torus_residual: float
    head_residual: float
    passed: bool


def torus_points(n: int, seed=None) -> np.ndarray:
    """n points (rows, S-basis coordinates) on {Q = 0} intersected with the unit sphere.

    Points are built from eigenvectors of the hyper-sphere matrix, not from
    the explicit transform, so they can be used to check it.
    """
    rng = np.random.default_rng(seed)
    ev, vecs = np.linalg.eigh(hyper_sphere_form(0.0).matrix)
    neg, pos = vecs[:, ev < 0], vecs[:, ev > 0]
    w_pos = rng.normal(size=(n, pos.shape[1]))
    w_neg = rng.normal(size=(n, neg.shape[1]))
    w_pos /= np.linalg.norm(w_pos, axis=1, keepdims=True)
    w_neg /= np.linalg.norm(w_neg, axis=1, keepdims=True)
    return (w_pos @ pos.T + w_neg @ neg.T) / SQRT2


def isotropic_heads_check(n: int = 1000, seed=0, g=None, tol: float = 1e-10) -> TorusReport:
    """Check x'^2 + y'^2 = z'^2 + t'^2 = 1/2 on cone-sphere points and the S-basis heads."""
    form = hyper_sphere_form(0.0)
    p = transform_4d()
    pts = torus_points(n, seed)
    primed = pts @ p  # rows of P^T x
    cone = float(np.max(form.residual(pts))) if n else 0.0
    sphere = float(np.max(np.abs(np.sum(pts**2, axis=1) - 1.0))) if n else 0.0

    def torus_residual(rows):
        a = np.abs(rows[:, 0] ** 2 + rows[:, 1] ** 2 - 0.5)
        b = np.abs(rows[:, 2] ** 2 + rows[:, 3] ** 2 - 0.5)
        return float(np.max(np.maximum(a, b))) if len(rows) else 0.0

    # the heads u, Su, S^2u, S^3u: unit coordinate vectors of an orthonormal S-basis
    g = as_metric(np.eye(4) if g is None else g)
    basis = s_basis(g, generator_for_phi(g, math.pi / 2))
    coords = np.linalg.solve(basis.columns, basis.vectors.T).T
    heads = torus_residual(coords @ p)
    torus = torus_residual(primed)
    passed = max(cone, sphere, torus, heads) <= tol
    return TorusReport(n, cone, sphere, torus, heads, passed)


# -- sampling --------------------------------------------------------------


def _unit_rows(rng, n, k):
    w = rng.normal(size=(n, k))
    return w / np.linalg.norm(w, axis=1, keepdims=True)


def sample_points(form: QuadraticForm, n: int, seed=None, spread: float = 2.0) -> np.ndarray:
    """n points on the quadric, as rows.

    Works in the eigenbasis: the positive and negative parts are
    parametrized by cosh/sinh (or equal radii for cones), zero-eigenvalue
    directions are free.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    kind = classify(form)
    if kind is QuadricClass.EMPTY:
        raise EmptyQuadricError("empty quadric")
    rng = np.random.default_rng(seed)
    ev, vecs = np.linalg.eigh(form.matrix)
    scale = np.max(np.abs(ev))
    zero = np.abs(ev) <= ZERO_TOL * scale if scale > 0 else np.ones(ev.shape, bool)
    dim = form.dim
    y = np.zeros((n, dim))
    free = np.flatnonzero(zero)
    y[:, free] = rng.uniform(-spread, spread, size=(n, free.size))
    if _rhs_sign(form) != 0:
        lam = ev / form.rhs
        same = np.flatnonzero(~zero & (lam > 0))
        opp = np.flatnonzero(~zero & (lam < 0))
        t = rng.uniform(-spread, spread, size=n) if opp.size else np.zeros(n)
        r_same, r_opp = np.cosh(t), np.abs(np.sinh(t))
        y[:, same] = _unit_rows(rng, n, same.size) * r_same[:, None] / np.sqrt(lam[same])
        if opp.size:
            y[:, opp] = _unit_rows(rng, n, opp.size) * r_opp[:, None] / np.sqrt(-lam[opp])
    else:
        pos = np.flatnonzero(~zero & (ev > 0))
        neg = np.flatnonzero(~zero & (ev < 0))
        if pos.size and neg.size:
            r = rng.uniform(-spread, spread, size=n)
            y[:, pos] = _unit_rows(rng, n, pos.size) * r[:, None] / np.sqrt(ev[pos])
            y[:, neg] = _unit_rows(rng, n, neg.size) * r[:, None] / np.sqrt(-ev[neg])
    return y @ vecs.T
