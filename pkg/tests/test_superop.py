"""Tests for Gaussian-to-Gaussian map classification."""

import numpy as np
import pytest

from bosonic import superop as so
from bosonic import symplectic as sp
from bosonic.gaussian import (
    GaussianChannel,
    GaussianState,
    amplifier,
    apply_channel,
    attenuator,
    is_completely_positive,
)

SEED = 130729


def one_mode(k, alpha):
    return GaussianChannel(np.asarray(k, dtype=float), np.asarray(alpha, dtype=float))


def random_valid_spec(rng):
    # inflate the noise until the determinant inequality holds with room
    k = rng.normal(scale=1.2, size=(2, 2))
    base = rng.normal(size=(2, 2))
    alpha = base @ base.T
    shift = max(0.0, 1.0 - abs(np.linalg.det(k))) + rng.uniform(0.0, 0.5)
    return one_mode(k, alpha + shift * np.eye(2))


def test_one_mode_valid_examples():
    assert so.one_mode_valid(one_mode(np.eye(2), np.zeros((2, 2))))
    assert not so.one_mode_valid(one_mode(0.5 * np.eye(2), np.zeros((2, 2))))
    assert so.one_mode_valid(one_mode(np.zeros((2, 2)), np.eye(2)))
    assert not so.one_mode_valid(one_mode(np.eye(2), np.diag([0.1, -0.1])))
    tiny = np.diag([1e-7, -1e-30])
    assert so.one_mode_valid(one_mode(np.eye(2), tiny))
    with pytest.raises(ValueError):
        so.one_mode_valid(GaussianChannel(np.eye(4), np.zeros((4, 4))))


def test_one_mode_cp_examples():
    assert so.one_mode_cp(one_mode(np.eye(2), np.zeros((2, 2))))
    assert not so.one_mode_cp(one_mode(2 * np.eye(2), np.zeros((2, 2))))
    assert not so.one_mode_cp(one_mode(np.diag([1.0, -1.0]), np.zeros((2, 2))))


def test_one_mode_cp_agrees_with_matrix_test():
    rng = np.random.default_rng(SEED)
    checked = 0
    for _ in range(300):
        spec = random_valid_spec(rng)
        det_test = so.one_mode_cp(spec)
        matrix_test = is_completely_positive(spec)
        # skip draws sitting on the tolerance boundary of either test
        gap = np.sqrt(max(np.linalg.det(spec.alpha), 0.0)) - abs(
            1 - np.linalg.det(spec.k)
        )
        if abs(gap) < 1e-7:
            continue
        assert det_test == matrix_test
        checked += 1
    assert checked > 250


def test_cp_implies_valid():
    rng = np.random.default_rng(SEED)
    for _ in range(300):
        k = rng.normal(scale=1.2, size=(2, 2))
        base = rng.normal(size=(2, 2))
        spec = one_mode(k, base @ base.T)
        if so.one_mode_cp(spec):
            assert so.one_mode_valid(spec)


def test_classify_frozen_examples():
    form = so.classify_one_mode(one_mode(np.eye(2), np.zeros((2, 2))))
    assert form.case == so.CASE_CP and form.dilation == 1.0

    form = so.classify_one_mode(one_mode(2 * np.eye(2), np.zeros((2, 2))))
    assert form.case == so.CASE_DILATATION
    assert abs(form.dilation - 2.0) < 1e-12
    assert np.abs(form.symplectic_part - np.eye(2)).max() < 1e-12
    assert np.abs(form.residual_noise).max() == 0

    form = so.classify_one_mode(one_mode(3 * np.diag([1.0, -1.0]), np.zeros((2, 2))))
    assert form.case == so.CASE_DILATATION_TRANSPOSE
    assert abs(form.dilation - 3.0) < 1e-12
    assert np.abs(form.symplectic_part - np.eye(2)).max() < 1e-12

    with pytest.raises(ValueError):
        so.classify_one_mode(one_mode(0.5 * np.eye(2), np.zeros((2, 2))))


def test_classify_known_channels():
    att = attenuator(1, 0.36)
    form = so.classify_one_mode(att)
    assert form.case == so.CASE_CP
    amp = amplifier(1, 2.0)
    form = so.classify_one_mode(amp)
    assert form.case == so.CASE_DILATATION
    assert abs(form.dilation - np.sqrt(2.0)) < 1e-12
    assert so.one_mode_cp(GaussianChannel(form.symplectic_part, form.residual_noise))


def test_classify_residue_cp_and_recomposition():
    rng = np.random.default_rng(SEED)
    for _ in range(200):
        spec = random_valid_spec(rng)
        form = so.classify_one_mode(spec)
        residue = GaussianChannel(form.symplectic_part, form.residual_noise)
        assert so.one_mode_cp(residue, tol=1e-7)
        redone = form.recompose()
        assert np.abs(redone.k - spec.k).max() < 1e-9
        assert np.abs(redone.alpha - spec.alpha).max() < 1e-9
        state = GaussianState(rng.normal(size=2), sp.random_covariance(1, rng))
        got = apply_channel(redone, state)
        want = apply_channel(spec, state)
        assert np.abs(got.sigma - want.sigma).max() < 1e-9
        assert np.abs(got.r - want.r).max() < 1e-9


def test_classify_case_matches_determinant():
    rng = np.random.default_rng(SEED)
    cases = set()
    for _ in range(400):
        spec = random_valid_spec(rng)
        det_k = np.linalg.det(spec.k)
        form = so.classify_one_mode(spec)
        cases.add(form.case)
        if 0 <= det_k <= 1:
            assert form.case == so.CASE_CP
        elif det_k > 1:
            assert form.case == so.CASE_DILATATION
        elif det_k >= -1:
            assert form.case == so.CASE_TRANSPOSE
        else:
            assert form.case == so.CASE_DILATATION_TRANSPOSE
    assert len(cases) == 4


def test_multimode_examples():
    form = so.classify_multimode_nonoise(np.eye(4))
    assert form.case == so.CASE_CP and form.dilation == 1.0
    assert sp.is_symplectic(form.symplectic_part)

    form = so.classify_multimode_nonoise(2 * np.eye(4))
    assert form.case == so.CASE_DILATATION
    assert abs(form.dilation - 2.0) < 1e-12
    assert np.abs(form.symplectic_part - np.eye(4)).max() < 1e-12

    partial = np.diag([1.0, 1.0, 1.0, -1.0])
    form = so.classify_multimode_nonoise(partial)
    assert form.case == so.CASE_NOT_GAUSSIAN

    form = so.classify_multimode_nonoise(1.5 * so.transposition(2))
    assert form.case == so.CASE_DILATATION_TRANSPOSE
    assert abs(form.dilation - 1.5) < 1e-12
    assert sp.is_symplectic(form.symplectic_part)

    form = so.classify_multimode_nonoise(0.5 * np.eye(2))
    assert form.case == so.CASE_NOT_GAUSSIAN

    with pytest.raises(ValueError):
        so.classify_multimode_nonoise(np.eye(3))


def test_multimode_symplectic_input():
    rng = np.random.default_rng(SEED)
    for n in (1, 2, 3):
        s = sp.random_symplectic(n, rng)
        form = so.classify_multimode_nonoise(s)
        assert form.case == so.CASE_CP
        assert form.dilation == 1.0
        assert sp.is_symplectic(form.symplectic_part, tol=1e-8)
        redone = form.recompose()
        assert np.abs(redone.k - s).max() < 1e-12


def test_shift_threshold():
    spec = one_mode(0.5 * np.eye(2), np.zeros((2, 2)))
    assert not so.one_mode_valid(spec)
    rescaled = so.shift_threshold(spec, 2.0)
    assert np.abs(rescaled.k - np.eye(2)).max() < 1e-12
    assert so.one_mode_valid(rescaled)
    with pytest.raises(ValueError):
        so.shift_threshold(spec, 1.0)


def test_falsifier_finds_contraction_witness():
    witness = so.sampled_positivity_falsifier(
        one_mode(0.5 * np.eye(2), np.zeros((2, 2))), trials=50, seed=3
    )
    assert witness is not None
    assert witness.margin < 0
    again = so.sampled_positivity_falsifier(
        one_mode(0.5 * np.eye(2), np.zeros((2, 2))), trials=50, seed=3
    )
    assert again.trial == witness.trial
    assert again.margin == witness.margin


def test_falsifier_silent_on_valid_maps():
    assert so.sampled_positivity_falsifier(attenuator(1, 0.5), trials=300, seed=1) is None
    transpose = one_mode(np.diag([1.0, -1.0]), np.zeros((2, 2)))
    assert so.sampled_positivity_falsifier(transpose, trials=300, seed=1) is None
    # swapping quadratures between modes is not a dilatation, yet adding a
    # full unit of vacuum noise keeps every output state valid
    exchange = np.eye(4)[[2, 1, 0, 3]]
    spec = GaussianChannel(exchange, np.eye(4))
    assert so.sampled_positivity_falsifier(spec, trials=300, seed=1) is None
