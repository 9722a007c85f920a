"""Invariant suites run by ``skewquad verify``.

Each suite returns a :class:`SuiteResult`; exceptions inside a suite count
as failures so a broken metric cannot crash the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import core
from . import frames as fr
from . import quadrics as q
from .frames import Subspace
from .quadrics import QuadricClass as QC

MetricFactory = Callable[[int], core.Metric]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status}" + (f" ({self.detail})" if self.detail else "")


def random_generator(rng) -> np.ndarray:
    return rng.normal(size=4)


def table_phis(grid: int, exclude: float = 1e-4) -> list:
    """Interior grid over (pi/4, 3pi/4) plus the exact rows pi/3 and 2pi/3.

    Grid points within ``exclude`` of pi/3, pi/2 or 2pi/3 are dropped.
    """
    if grid < 2:
        raise ValueError("grid size must be at least 2")
    lo, hi = math.pi / 4, 3 * math.pi / 4
    step = (hi - lo) / (grid + 1)
    marks = (math.pi / 3, math.pi / 2, 2 * math.pi / 3)
    pts = [lo + (i + 1) * step for i in range(grid)]
    pts = [p for p in pts if all(abs(p - m) > exclude for m in marks)]
    return sorted(pts + [math.pi / 3, 2 * math.pi / 3])


def _suite(name):
    def wrap(fn):
        def run(*args, **kwargs) -> SuiteResult:
            try:
                ok, detail = fn(*args, **kwargs)
            except Exception as exc:  # noqa: BLE001 - reported as a failure
                return SuiteResult(name, False, f"{type(exc).__name__}: {exc}")
            return SuiteResult(name, bool(ok), detail)

        run.suite_name = name
        return run

    return wrap


@_suite("S^4 = -I")
def structure_identities(**_):
    s = core.structure_s(exact=True)
    eye = np.eye(4, dtype=np.int64)
    ok = (
        np.array_equal(np.linalg.matrix_power(s, 4), -eye)
        and np.array_equal(s.T @ s, eye)
        and np.array_equal(np.linalg.matrix_power(s @ s, 2), -eye)
    )
    return ok, "S^T S = I, J^2 = -I"


@_suite("compatible metrics")
def compatible_metrics(metric_factory: MetricFactory, n: int = 1000, **_):
    worst, min_eig = 0.0, math.inf
    for seed in range(n):
        g = metric_factory(seed)
        worst = max(worst, core.compatibility_residual(g))
        min_eig = min(min_eig, np.linalg.eigvalsh(g.gram).min())
    return worst <= core.COMPAT_TOL and min_eig > 0, f"max residual {worst:.2e}"


@_suite("S-basis angle law")
def s_basis_angles(metric_factory: MetricFactory, n: int = 1000, seed: int = 0, **_):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n):
        b = core.s_basis(metric_factory(i), random_generator(rng))
        worst = max(worst, b.angle_law_residual())
        if not (math.pi / 4 < b.phi < 3 * math.pi / 4):
            return False, f"phi={b.phi} out of range"
    return worst <= core.ANGLE_TOL, f"max deviation {worst:.2e}"


@_suite("causal trichotomy")
def causal_trichotomy(metric_factory: MetricFactory, n: int = 1000, seed: int = 1, **_):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n):
        g = metric_factory(i)
        u = random_generator(rng)
        b = core.s_basis(g, u)
        if core.classify_by_phi(b.phi) != core.causal_character(g, u):
            return False, f"disagreement at sample {i}"
        chars = {core.causal_character(g, v) for v in b.vectors}
        if len(chars) != 1:
            return False, f"iterates differ in causal character at sample {i}"
        expected = 2 * core.norm(g, u) ** 2 * math.cos(b.phi)
        worst = max(worst, abs(core.assoc(g, u, u) - expected))
    return worst <= 1e-10, f"max |assoc(u,u) - 2|u|^2 cos phi| {worst:.2e}"


@_suite("associated metric")
def associated_metric(metric_factory: MetricFactory, n: int = 200, seed: int = 2, **_):
    rng = np.random.default_rng(seed)
    s = core.S
    for i in range(n):
        g = metric_factory(i)
        u, v = rng.normal(size=4), rng.normal(size=4)
        scale = 1 + core.norm(g, u) * core.norm(g, v)
        if abs(core.assoc(g, s @ u, s @ v) - core.assoc(g, u, v)) > 1e-12 * scale:
            return False, f"not S-invariant at sample {i}"
        if q.inertia(core.assoc_gram(g))[:2] != (2, 2):
            return False, f"signature not (2,2) at sample {i}"
    return True, "S-invariant, signature (2,2)"


@_suite("frames")
def frame_suite(metric_factory: MetricFactory, n: int = 1000, seed: int = 3, **_):
    rng = np.random.default_rng(seed)
    ortho = closed = span = 0.0
    for i in range(n):
        g = metric_factory(i)
        b = core.s_basis(g, random_generator(rng))
        for sub in Subspace:
            f = fr.build_frame(g, b, sub)
            ortho = max(ortho, np.abs(f.gram() - np.eye(sub.dim)).max())
            closed = max(
                closed,
                np.abs(fr.assoc_gram_on_frame(g, f) - fr.closed_form_gram(sub, f.phi)).max(),
            )
            span = max(span, f.span_residual())
        beta1 = fr.frame_beta1(g, b).vectors
        span = max(span, fr.span_residual(beta1 @ core.J.T, beta1))
    ok = max(ortho, closed, span) <= 1e-10
    return ok, f"orthonormality {ortho:.1e}, closed forms {closed:.1e}, span {span:.1e}"


@_suite("4D diagonalization")
def hyper_diagonalization(**_):
    p = q.transform_4d()
    d = q.hyper_sphere_form(1.0).congruent(p).matrix
    target = math.sqrt(2) * np.diag([1.0, 1.0, -1.0, -1.0])
    err = np.abs(d - target).max()
    orth = np.abs(p.T @ p - np.eye(4)).max()
    return max(err, orth) <= 1e-12, f"congruence {err:.1e}, orthogonality {orth:.1e}"


@_suite("isotropic torus")
def torus(n: int = 1000, seed: int = 4, **_):
    report = q.isotropic_heads_check(n, seed)
    return report.passed, f"max torus residual {report.max_torus_residual:.1e}"


# Expected section classes; axis order x', y', z', t'.
SECTION_EXPECTED = {
    1: (QC.HYPERBOLOID_TWO_SHEETS,) * 2 + (QC.HYPERBOLOID_ONE_SHEET,) * 2,
    -1: (QC.HYPERBOLOID_ONE_SHEET,) * 2 + (QC.HYPERBOLOID_TWO_SHEETS,) * 2,
    0: (QC.CONE,) * 4,
}


@_suite("coordinate sections")
def sections(**_):
    for a, expected in SECTION_EXPECTED.items():
        form = q.diagonal_hyper_sphere_form(a)
        got = tuple(q.classify(q.section_by_coordinate_plane(form, k)) for k in range(4))
        if got != expected:
            return False, f"a={a}: {[c.value for c in got]}"
    return True, ""


def alpha_expected(phi: float, a: float) -> QC:
    """Sphere types in alpha1/alpha2 by regime of phi and sign of a."""
    c = math.cos(phi)
    isotropic = abs(2 * c) <= core.CAUSAL_TOL
    if a == 0:
        return QC.PAIR_OF_PLANES if isotropic else QC.CONE
    if isotropic:
        return QC.HYPERBOLIC_CYLINDER
    return QC.HYPERBOLOID_ONE_SHEET if (a > 0) == (c > 0) else QC.HYPERBOLOID_TWO_SHEETS


@_suite("3D spheres")
def spheres(n_phi: int = 50, **_):
    phis = list(np.linspace(math.pi / 4, 3 * math.pi / 4, n_phi + 2)[1:-1]) + [math.pi / 2]
    worst = 0.0
    for phi in phis:
        for variant in (Subspace.ALPHA1, Subspace.ALPHA2):
            u = core.generator_for_phi(np.eye(4), phi)
            f = fr.build_frame(np.eye(4), u, variant)
            worst = max(worst, np.abs(fr.assoc_gram_on_frame(np.eye(4), f)
                                      - q.sphere_matrix(phi, variant)).max())
            p = q.transform_3d(phi, variant)
            diag = np.diag([2 * math.cos(phi), math.sqrt(2), -math.sqrt(2)])
            worst = max(worst, np.abs(p.T @ q.sphere_matrix(phi, variant) @ p - diag).max())
            for a in (-1.0, 0.0, 1.0):
                got = q.classify(q.QuadraticForm(q.sphere_matrix(phi, variant), a))
                if got != alpha_expected(phi, a):
                    return False, f"{variant.value} phi={phi} a={a}: {got.value}"
    return worst <= 1e-10, f"max deviation {worst:.1e}"


@_suite("regime table equivalence")
def table_equivalence(grid: int = 200, **_):
    for phi in table_phis(grid):
        for a in (-1.0, 0.0, 1.0):
            expected = q.table1(phi, a)
            k2 = q.classify(q.subspace_form(Subspace.BETA2, phi, a))
            k3 = q.classify(q.subspace_form(Subspace.BETA3, phi, a))
            if not (expected == k2 == k3):
                return False, f"phi={phi} a={a}: {expected.value} {k2.value} {k3.value}"
            offset = q.table1_line_offset(phi, a)
            if offset is not None:
                geo = q.degenerate_geometry(q.subspace_form(Subspace.BETA2, phi, a))
                if abs(geo["offset"] - offset) > 1e-12:
                    return False, f"line offset at phi={phi} a={a}"
    return True, f"{grid}-point grid"


@_suite("beta1 circles")
def beta1_circles(n_phi: int = 50, **_):
    for phi in np.linspace(math.pi / 4, 3 * math.pi / 4, n_phi + 2)[1:-1]:
        if abs(math.cos(phi)) < 1e-6:
            continue
        for a in (-1.0, 0.0, 1.0):
            if q.classify(q.subspace_form(Subspace.BETA1, phi, a)) != q.beta1_class(phi, a):
                return False, f"phi={phi} a={a}"
    return True, ""


ALL_SUITES = (
    structure_identities,
    compatible_metrics,
    s_basis_angles,
    causal_trichotomy,
    associated_metric,
    frame_suite,
    hyper_diagonalization,
    torus,
    sections,
    spheres,
    table_equivalence,
    beta1_circles,
)


def run_all(metric_factory: MetricFactory | None = None) -> list:
    if metric_factory is None:
        metric_factory = core.random_compatible_metric
    return [suite(metric_factory=metric_factory) for suite in ALL_SUITES]
