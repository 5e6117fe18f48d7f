"""Tests for the memory channel capacity module."""

import numpy as np
import pytest
from scipy.integrate import quad

from bosonic import memcap as mc
from bosonic.gaussian import g

TWO_PI = 2 * np.pi


def profile_from_multiplier(z, lam, params):
    # reconstruct the allocation from public pieces, independent of simpson
    trans = mc.eta(z, params)
    if trans <= 0:
        return 0.0
    if params.kappa <= 1:
        noise = (1 - trans) * params.nbar
    else:
        noise = (trans - 1) * (params.nbar + 1)
    return max(0.0, (1.0 / np.expm1(min(lam / trans, 700.0)) - noise) / trans)


def test_params_validation():
    with pytest.raises(ValueError):
        mc.MemoryChannelParams(-0.1, 0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        mc.MemoryChannelParams(0.5, 1.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        mc.MemoryChannelParams(0.5, 0.5, -1.0, 1.0)
    with pytest.raises(ValueError):
        mc.MemoryChannelParams(0.5, 0.5, 0.0, -1.0)


def test_eta_special_cases():
    z = np.linspace(0, TWO_PI, 64)
    p = mc.MemoryChannelParams(0.0, 0.37, 0.0, 1.0)
    assert np.abs(mc.eta(z, p) - 0.37).max() < 1e-15
    p = mc.MemoryChannelParams(1.0, 0.9, 0.0, 1.0)
    assert np.abs(mc.eta(z, p) - 1.0).max() < 1e-12
    p = mc.MemoryChannelParams(0.62, 0.0, 0.0, 1.0)
    assert np.abs(mc.eta(z, p) - 0.62).max() < 1e-15
    assert isinstance(mc.eta(1.0, p), float)


def test_eta_monotone_by_regime():
    z = np.linspace(0, TWO_PI, 400)
    att = mc.eta(z, mc.MemoryChannelParams(0.7, 0.6, 0.0, 1.0))
    assert att.min() >= 0 and att.max() <= 1
    assert np.all(np.diff(att) >= 0)
    amp = mc.eta(z, mc.MemoryChannelParams(1.9, 0.4, 0.0, 1.0))
    assert amp.min() >= 1
    assert np.all(np.diff(amp) <= 0)


def test_eta_amplifier_duality():
    z = np.linspace(0, TWO_PI, 101)
    p = mc.MemoryChannelParams(2.0, 0.4, 0.0, 1.0)
    q = mc.MemoryChannelParams(1 / 0.4, 1 / 2.0, 0.0, 1.0)
    assert np.abs(mc.eta(z, p) - mc.eta(z, q)).max() < 1e-12


def test_spectrum_memoryless_and_validation():
    p = mc.MemoryChannelParams(0.83, 0.0, 0.0, 1.0)
    assert np.abs(mc.finite_toeplitz_spectrum(12, p) - 0.83).max() < 1e-12
    with pytest.raises(ValueError):
        mc.finite_toeplitz_spectrum(0, p)


def test_spectrum_within_symbol_range():
    p = mc.MemoryChannelParams(0.9, 0.8, 0.0, 1.0)
    ev = mc.finite_toeplitz_spectrum(96, p)
    lo, hi = mc.eta(0.0, p), mc.eta(TWO_PI, p)
    assert ev.min() >= lo - 1e-9
    assert ev.max() <= hi + 1e-9


def test_szego_log_average():
    # the log average is exact at every block length for kappa >= mu;
    # genuine convergence is exercised by the quadratic functional below
    p = mc.MemoryChannelParams(0.9, 0.8, 0.0, 1.0)
    ref, _ = quad(lambda z: np.log(mc.eta(z, p)), 0, TWO_PI, limit=200)
    ref /= TWO_PI
    for n in (64, 128, 256):
        ev = mc.finite_toeplitz_spectrum(n, p)
        assert abs(np.mean(np.log(ev)) - ref) < 1e-12


def test_szego_quadratic_functional_converges():
    p = mc.MemoryChannelParams(0.9, 0.8, 0.0, 1.0)
    ref, _ = quad(lambda z: mc.eta(z, p) ** 2, 0, TWO_PI, limit=200)
    ref /= TWO_PI
    errs = [
        abs(np.mean(mc.finite_toeplitz_spectrum(n, p) ** 2) - ref)
        for n in (64, 128, 256)
    ]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-3


def test_spectrum_above_threshold():
    p = mc.MemoryChannelParams(1.6, 0.8, 0.0, 1.0)
    tops, seconds = [], []
    for n in (16, 32, 64):
        ev = mc.finite_toeplitz_spectrum(n, p)
        tops.append(ev[-1])
        seconds.append(ev[-2])
    assert tops[0] < tops[1] < tops[2]
    assert tops[2] > 100 * tops[0]
    edge = mc.eta(0.0, p)
    assert seconds[0] < seconds[1] < seconds[2] < edge


def test_waterfill_memoryless_is_flat():
    p = mc.MemoryChannelParams(0.6, 0.0, 0.8, 3.0)
    sol = mc.waterfill(p)
    assert sol.z0 == 0.0
    assert np.abs(sol.samples[:, 1] - 3.0).max() < 1e-7
    expect = g(0.6 * 3 + 0.4 * 0.8) - g(0.4 * 0.8)
    assert abs(sol.capacity - expect) < 1e-7


def test_waterfill_profile_and_energy_residual():
    for kappa, mu, nbar, energy in [(0.7, 0.5, 1.0, 2.0), (1.8, 0.4, 0.5, 3.0)]:
        p = mc.MemoryChannelParams(kappa, mu, nbar, energy)
        sol = mc.waterfill(p)
        assert sol.samples.shape == (129, 2)
        assert sol.samples[:, 1].min() >= 0
        assert np.all(np.diff(sol.samples[:, 1]) >= -1e-12)
        mean, _ = quad(
            lambda z: profile_from_multiplier(z, sol.lambda_mult, p),
            0,
            TWO_PI,
            points=[sol.z0],
            limit=200,
        )
        assert abs(mean / TWO_PI - energy) < 1e-6


def test_waterfill_rejections():
    with pytest.raises(ValueError):
        mc.waterfill(mc.MemoryChannelParams(2.0, 0.5, 0.0, 1.0))
    with pytest.raises(ValueError):
        mc.waterfill(mc.MemoryChannelParams(0.5, 0.5, 0.0, 0.0))


def test_capacity_special_cases():
    assert abs(mc.memory_capacity(mc.MemoryChannelParams(1.0, 0.5, 0.9, 2.0)) - g(2.0)) < 1e-7
    assert abs(mc.memory_capacity(mc.MemoryChannelParams(0.7, 1.0, 0.9, 2.0)) - g(2.0)) < 1e-7
    got = mc.memory_capacity(mc.MemoryChannelParams(0.0, 0.55, 0.8, 3.0))
    assert abs(got - (g(0.55 * 3 + 0.45 * 0.8) - g(0.45 * 0.8))) < 1e-7
    got = mc.memory_capacity(mc.MemoryChannelParams(1.7, 0.0, 0.4, 3.0))
    assert abs(got - (g(1.7 * 3 + 0.7 * 1.4) - g(0.7 * 1.4))) < 1e-7


def test_capacity_symmetric_in_couplings():
    a = mc.memory_capacity(mc.MemoryChannelParams(0.8, 0.35, 0.6, 2.0))
    b = mc.memory_capacity(mc.MemoryChannelParams(0.35, 0.8, 0.6, 2.0))
    assert abs(a - b) < 1e-6


def test_capacity_beats_flat_allocation():
    for kappa, mu, nbar, energy in [(0.7, 0.5, 1.0, 2.0), (1.8, 0.4, 0.5, 3.0)]:
        p = mc.MemoryChannelParams(kappa, mu, nbar, energy)

        def gain(z):
            trans = mc.eta(z, p)
            if p.kappa <= 1:
                noise = (1 - trans) * p.nbar
            else:
                noise = (trans - 1) * (p.nbar + 1)
            return g(trans * energy + noise) - g(noise)

        flat, _ = quad(gain, 0, TWO_PI, limit=200)
        assert mc.memory_capacity(p) >= flat / TWO_PI - 1e-9


def test_additive_noise_capacity():
    assert abs(mc.additive_noise_capacity(0.0, 0.7, 4.0) - (g(4.7) - g(0.7))) < 1e-12
    assert abs(mc.additive_noise_capacity(0.4, 0.0, 4.0) - g(4.0)) < 1e-12
    got = mc.additive_noise_capacity(0.4, 0.7, 4.0)
    assert got >= g(4.7) - g(0.7) - 1e-12
    with pytest.raises(ValueError):
        mc.additive_noise_capacity(0.9, 2.0, 1.0)
    with pytest.raises(ValueError):
        mc.additive_noise_capacity(1.0, 0.5, 4.0)


def test_additive_noise_profile_mean():
    # the mode-dependent noise averages back to the per-use figure
    mu, noise_nc = 0.55, 0.8
    mean, _ = quad(
        lambda z: noise_nc * (1 - mu) / (1 + mu - 2 * np.sqrt(mu) * np.cos(z / 2)),
        0,
        TWO_PI,
        limit=200,
    )
    assert abs(mean / TWO_PI - noise_nc) < 1e-10


def test_critical_energy():
    assert mc.critical_energy(1.0, 0.5, 0.9) == 0.0
    assert mc.critical_energy(0.7, 0.5, 0.0) == 0.0
    assert mc.critical_energy(0.6, 0.6, 0.8) == np.inf
    e_crit = mc.critical_energy(0.7, 0.5, 1.0)
    assert 0 < e_crit < np.inf
    above = mc.waterfill(mc.MemoryChannelParams(0.7, 0.5, 1.0, 1.05 * e_crit))
    assert above.z0 == 0.0
    below = mc.waterfill(mc.MemoryChannelParams(0.7, 0.5, 1.0, 0.9 * e_crit))
    assert below.z0 > 0.01


def test_fully_correlated_band_stays_clipped():
    sol = mc.waterfill(mc.MemoryChannelParams(0.6, 0.6, 0.8, 2.0))
    assert sol.z0 > 0
    assert sol.samples[0, 1] == 0.0
