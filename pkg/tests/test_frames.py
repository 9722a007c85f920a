import math

import numpy as np
import pytest

from conftest import PHI_GRID
from skewquad import core
from skewquad import frames as fr
from skewquad.frames import Subspace

R2 = math.sqrt(2) / 2

ALPHA1_PI_3 = np.array([[1.0, R2, 0.0], [R2, -1.0, R2], [0.0, R2, 1.0]])


def u_for(g, phi, seed=1):
    return core.generator_for_phi(g, phi, seed=seed)


def test_alpha1_isotropic_generator(eye):
    f = fr.frame_alpha1(eye, [1.0, 0, 0, 0])
    b = f.basis
    assert f.phi == pytest.approx(math.pi / 2)
    assert f.vectors[1] == pytest.approx(b.vectors[1], abs=1e-15)
    assert f.gram() == pytest.approx(np.eye(3), abs=1e-15)


def test_alpha1_orthonormal_at_pi_3(eye):
    f = fr.frame_alpha1(eye, np.array([1.0, 1, 0, 0]) / math.sqrt(2))
    assert f.phi == pytest.approx(math.pi / 3, abs=1e-12)
    assert f.gram() == pytest.approx(np.eye(3), abs=1e-12)
    assert fr.assoc_gram_on_frame(eye, f) == pytest.approx(ALPHA1_PI_3, abs=1e-12)


def test_alpha2_examples(eye):
    f = fr.frame_alpha2(eye, [1.0, 0, 0, 0])
    assert f.gram() == pytest.approx(np.eye(3), abs=1e-12)
    f = fr.frame_alpha2(eye, u_for(eye, math.pi / 3))
    gt = fr.assoc_gram_on_frame(eye, f)
    assert gt[0, 0] == pytest.approx(1.0, abs=1e-12)
    assert gt[0, 1] == pytest.approx(R2, abs=1e-12)
    assert gt[1, 2] == pytest.approx(-R2, abs=1e-12)


@pytest.mark.parametrize("phi", PHI_GRID)
def test_alpha_grams_match_closed_form(metric, phi):
    u = u_for(metric, phi)
    c = math.cos(phi)
    s = math.sqrt(1 - 2 * c * c)
    for sub, s23 in ((Subspace.ALPHA1, s), (Subspace.ALPHA2, -s)):
        gt = fr.assoc_gram_on_frame(metric, fr.build_frame(metric, u, sub))
        assert gt[0, 0] == pytest.approx(2 * c, abs=1e-10)
        assert gt[1, 1] == pytest.approx(-2 * c, abs=1e-10)
        assert gt[2, 2] == pytest.approx(2 * c, abs=1e-10)
        assert gt[0, 1] == pytest.approx(s, abs=1e-10)
        assert gt[1, 2] == pytest.approx(s23, abs=1e-10)
        assert gt[0, 2] == pytest.approx(0.0, abs=1e-10)


def test_beta1_examples(eye):
    for phi in PHI_GRID:
        f = fr.frame_beta1(eye, u_for(eye, phi))
        gt = fr.assoc_gram_on_frame(eye, f)
        assert gt[0, 1] == pytest.approx(0.0, abs=1e-12)
        assert gt == pytest.approx(np.diag([2 * math.cos(phi)] * 2), abs=1e-12)
    f = fr.frame_beta1(eye, u_for(eye, math.pi / 2))
    assert fr.assoc_gram_on_frame(eye, f) == pytest.approx(np.zeros((2, 2)), abs=1e-12)
    f = fr.frame_beta1(eye, u_for(eye, math.pi / 3))
    assert fr.assoc_gram_on_frame(eye, f) == pytest.approx(np.eye(2), abs=1e-12)


def test_beta1_is_j_invariant(metric):
    f = fr.frame_beta1(metric, u_for(metric, 1.1))
    images = f.vectors @ core.J.T
    assert fr.span_residual(images, f.vectors) <= 1e-10


def test_beta2_examples(eye):
    rng = np.random.default_rng(0)
    for _ in range(50):
        f = fr.frame_beta2(eye, rng.normal(size=4))
        assert fr.assoc_gram_on_frame(eye, f)[0, 1] == pytest.approx(0.0, abs=1e-12)
    f = fr.frame_beta2(eye, u_for(eye, math.pi / 3))
    assert fr.assoc_gram_on_frame(eye, f) == pytest.approx(np.diag([4 / 3, 0.0]), abs=1e-12)
    f = fr.frame_beta2(eye, u_for(eye, math.pi / 2))
    assert fr.assoc_gram_on_frame(eye, f) == pytest.approx(np.diag([1.0, -1.0]), abs=1e-12)


def test_beta3_examples(eye):
    rng = np.random.default_rng(1)
    for _ in range(50):
        f = fr.frame_beta3(eye, rng.normal(size=4))
        assert fr.assoc_gram_on_frame(eye, f)[0, 1] == pytest.approx(0.0, abs=1e-12)
    f = fr.frame_beta3(eye, u_for(eye, math.pi / 3))
    assert fr.assoc_gram_on_frame(eye, f) == pytest.approx(np.diag([0.0, 4 / 3]), abs=1e-12)


@pytest.mark.parametrize("phi", PHI_GRID)
def test_beta3_is_beta2_swapped(phi):
    b2 = fr.closed_form_gram(Subspace.BETA2, phi)
    b3 = fr.closed_form_gram(Subspace.BETA3, phi)
    assert np.array_equal(np.diag(b3), np.diag(b2)[::-1])


@pytest.mark.parametrize("sub", list(Subspace))
def test_frames_orthonormal_and_in_span(metric, sub):
    rng = np.random.default_rng(list(Subspace).index(sub))
    for _ in range(40):
        f = fr.build_frame(metric, rng.normal(size=4), sub)
        assert f.subspace is sub
        assert f.vectors.shape == (sub.dim, 4)
        assert f.gram() == pytest.approx(np.eye(sub.dim), abs=1e-10)
        assert f.span_residual() <= 1e-10
        closed = fr.closed_form_gram(sub, f.phi)
        assert fr.assoc_gram_on_frame(metric, f) == pytest.approx(closed, abs=1e-10)


def test_alpha_frames_outside_other_span(eye):
    # alpha1 is not inside span{u, Su, S^3u}: the residual check has teeth
    f = fr.frame_alpha1(eye, u_for(eye, 1.2))
    other = f.basis.vectors[[0, 1, 3]]
    assert fr.span_residual(f.vectors, other) > 1e-3


def test_frame_accepts_basis(eye):
    b = core.s_basis(eye, [1.0, 0.2, 0.3, -0.4])
    assert np.array_equal(fr.frame_beta2(eye, b).vectors, fr.frame_beta2(eye, b.generator).vectors)


def test_alpha_degeneracy_guard(eye):
    # 1 - 2cos^2(phi) = 5e-9, inside the guard band
    phi = math.acos(math.sqrt((1 - 5e-9) / 2))
    u = u_for(eye, phi)
    b = core.s_basis(eye, u)
    with pytest.raises(fr.FrameError):
        fr.frame_alpha1(eye, b)
    with pytest.raises(fr.FrameError):
        fr.frame_alpha2(eye, b)
    # beta frames have no such singularity
    assert fr.frame_beta2(eye, b).gram() == pytest.approx(np.eye(2), abs=1e-10)
