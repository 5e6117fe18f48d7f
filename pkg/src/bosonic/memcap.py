r"""Holevo capacity of lossy channels whose environment carries memory.

A chain of beam splitters couples successive signal modes to one shared
environment, so the noise affecting a given use depends on how much
signal earlier uses have already dumped into it.  In a decoupled
frequency picture the channel acts independently at every frequency
``z`` in ``[0, 2*pi]`` as an attenuator (coupling below one) or an
amplifier (coupling above one) with transmissivity :func:`eta`.  The
constrained capacity is then a water-filling problem over the frequency
band, solved by :func:`waterfill`.  Blocks of ``n`` uses correspond to a
banded correlation matrix whose spectrum approaches the range of
:func:`eta`; see :func:`finite_toeplitz_spectrum`.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, simpson

from .gaussian import g

_PANELS = 2048
_EXP_CLIP = 700.0


@dataclass(frozen=True)
class MemoryChannelParams:
    r"""Parameters of the memory attenuation channel.

    Args:
        kappa (float): beam-splitter coupling per use, nonnegative; values
            above one describe amplification
        mu (float): memory parameter in ``[0, 1]``; zero gives independent
            uses and one a perfectly persistent environment
        nbar (float): thermal occupation of the environment, nonnegative
        energy (float): mean photon number available per use, nonnegative
    """

    kappa: float
    mu: float
    nbar: float
    energy: float

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("The coupling kappa must be nonnegative")
        if not 0 <= self.mu <= 1:
            raise ValueError("The memory parameter mu must lie in [0, 1]")
        if self.nbar < 0:
            raise ValueError("The occupation nbar must be nonnegative")
        if self.energy < 0:
            raise ValueError("The energy must be nonnegative")


@dataclass(frozen=True)
class WaterfillSolution:
    r"""Result of the constrained capacity optimization.

    Args:
        lambda_mult (float): Lagrange multiplier of the energy constraint
        z0 (float): left edge of the populated frequency band
        capacity (float): capacity in nats per use
        samples (ndarray): rows ``(z, N(z))`` of the optimal photon-number
            profile on a uniform frequency grid
    """

    lambda_mult: float
    z0: float
    capacity: float
    samples: np.ndarray


def eta(z, params):
    r"""Transmissivity of the decoupled channel at frequency ``z``.

    Monotone on ``[0, 2*pi]``: increasing for couplings below one and
    decreasing above.  Diverges at ``z = 0`` when ``mu * kappa == 1``.

    Args:
        z (float or array): frequency in ``[0, 2*pi]``
        params (MemoryChannelParams): channel parameters

    Returns:
        float or array: transmissivity, above one in the amplifier regime
    """
    k, m = params.kappa, params.mu
    root = 2.0 * np.sqrt(k * m) * np.cos(np.asarray(z, dtype=float) / 2.0)
    out = np.asarray((k + m - root) / (1.0 + k * m - root))
    return float(out) if out.ndim == 0 else out


def _added_noise(trans, params):
    # thermal photons added at transmissivity trans, by regime
    if params.kappa <= 1:
        return (1.0 - trans) * params.nbar
    return (trans - 1.0) * (params.nbar + 1.0)


def _profile(z, lam_mult, params):
    # optimal photon-number allocation at multiplier lam_mult, clipped at 0
    trans = np.asarray(eta(z, params), dtype=float)
    safe = np.where(trans > 0, trans, 1.0)
    planck = 1.0 / np.expm1(np.minimum(lam_mult / safe, _EXP_CLIP))
    alloc = (planck - _added_noise(trans, params)) / safe
    return np.where(trans > 0, np.maximum(alloc, 0.0), 0.0)


def _band_edge(lam_mult, params):
    # smallest frequency with positive allocation, by bisection
    if _profile(0.0, lam_mult, params) > 0:
        return 0.0
    if _profile(2.0 * np.pi, lam_mult, params) <= 0:
        return 2.0 * np.pi
    lo, hi = 0.0, 2.0 * np.pi
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _profile(mid, lam_mult, params) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def _mean_energy(lam_mult, params):
    z0 = _band_edge(lam_mult, params)
    if z0 >= 2.0 * np.pi:
        return 0.0, z0
    grid = np.linspace(z0, 2.0 * np.pi, _PANELS + 1)
    value = simpson(_profile(grid, lam_mult, params), x=grid) / (2.0 * np.pi)
    return value, z0


def waterfill(params, tol=1e-8, num_samples=129):
    r"""Solve the energy-constrained capacity problem by water-filling.

    Bisects on the Lagrange multiplier until the mean photon number of
    the optimal profile matches ``params.energy``, then integrates the
    entropy gain over the populated band.

    Args:
        params (MemoryChannelParams): channel parameters with positive
            energy and ``mu * kappa != 1``
        tol (float): relative tolerance on the energy constraint
        num_samples (int): rows of the returned profile table

    Returns:
        WaterfillSolution: multiplier, band edge, capacity and profile
    """
    if params.energy <= 0:
        raise ValueError("The energy constraint must be positive")
    if abs(params.mu * params.kappa - 1.0) < 1e-12:
        raise ValueError("The loop transmissivity mu*kappa must differ from one")
    target = params.energy
    lo = 1e-12
    while _mean_energy(lo, params)[0] < target and lo > 1e-250:
        lo /= 16.0
    hi = 1.0
    while _mean_energy(hi, params)[0] > target:
        hi *= 2.0
    mid = hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        value, _ = _mean_energy(mid, params)
        if abs(value - target) <= tol * max(1.0, target):
            break
        if value > target:
            lo = mid
        else:
            hi = mid
    z0 = _band_edge(mid, params)
    capacity = 0.0
    if z0 < 2.0 * np.pi:
        grid = np.linspace(z0, 2.0 * np.pi, _PANELS + 1)
        trans = eta(grid, params)
        noise = _added_noise(trans, params)
        gain = g(trans * _profile(grid, mid, params) + noise) - g(noise)
        capacity = simpson(gain, x=grid) / (2.0 * np.pi)
    zs = np.linspace(0.0, 2.0 * np.pi, num_samples)
    samples = np.column_stack([zs, _profile(zs, mid, params)])
    return WaterfillSolution(float(mid), float(z0), float(capacity), samples)


def memory_capacity(params, tol=1e-8):
    r"""Capacity of the memory channel in nats per use.

    Args:
        params (MemoryChannelParams): channel parameters
        tol (float): relative tolerance on the energy constraint

    Returns:
        float: the constrained capacity
    """
    return waterfill(params, tol).capacity


def finite_toeplitz_spectrum(n, params):
    r"""Transmissivity spectrum of a finite block of channel uses.

    Builds the ``n`` by ``n`` correlation matrix of the beam-splitter
    chain and returns its eigenvalues in increasing order.  As ``n``
    grows their distribution approaches the values of :func:`eta`; above
    the amplification threshold ``mu * kappa > 1`` a single eigenvalue
    escapes the limiting range.

    Args:
        n (int): block length, positive
        params (MemoryChannelParams): channel parameters

    Returns:
        ndarray: eigenvalues sorted in increasing order
    """
    if n < 1:
        raise ValueError("The block length must be positive")
    k, m = params.kappa, params.mu
    x = m * k
    j = np.arange(n)
    if abs(x - 1.0) < 1e-12:
        geo = j.astype(float)
    else:
        geo = (1.0 - x**j) / (1.0 - x)
    coupling = k + m * (k - 1.0) ** 2 * geo[np.minimum(j[:, None], j[None, :])]
    mat = (coupling - 1.0) * np.sqrt(x) ** np.abs(j[:, None] - j[None, :])
    mat[j, j] += 1.0
    return np.sort(np.linalg.eigvalsh(mat))


def additive_noise_capacity(mu, noise_nc, energy, tol=1e-10):
    r"""Capacity of the classical additive-noise channel with memory.

    Valid once the energy is large enough that the water level covers
    the whole noise spectrum, namely ``energy >= 2 * noise_nc * sqrt(mu)
    / (1 - sqrt(mu))``.

    Args:
        mu (float): memory parameter in ``[0, 1)``
        noise_nc (float): mean added noise per use, nonnegative
        energy (float): mean photon number per use
        tol (float): absolute tolerance of the quadrature

    Returns:
        float: the constrained capacity in nats per use
    """
    if not 0 <= mu < 1:
        raise ValueError("The memory parameter mu must lie in [0, 1)")
    if noise_nc < 0:
        raise ValueError("The noise must be nonnegative")
    if energy < 0:
        raise ValueError("The energy must be nonnegative")
    root = np.sqrt(mu)
    if energy < 2.0 * noise_nc * root / (1.0 - root) - 1e-12:
        raise ValueError("The energy is below the water-filling threshold")
    if noise_nc == 0:
        return float(g(energy))

    def kernel(z):
        den = 1.0 + mu - 2.0 * root * np.cos(z / 2.0)
        return g(noise_nc * (1.0 - mu) / den)

    integral, _ = quad(kernel, 0.0, 2.0 * np.pi, epsabs=tol, epsrel=tol, limit=200)
    return float(g(energy + noise_nc) - integral / (2.0 * np.pi))


def critical_energy(kappa, mu, nbar):
    r"""Energy above which the optimal profile populates every frequency.

    Evaluates the multiplier that makes the allocation vanish exactly at
    the band edge ``z = 0`` and returns the corresponding mean energy.
    Zero when the edge noise vanishes, infinite when the edge
    transmissivity does.

    Args:
        kappa (float): beam-splitter coupling, nonnegative
        mu (float): memory parameter in ``[0, 1]``
        nbar (float): thermal occupation, nonnegative

    Returns:
        float: the threshold energy
    """
    params = MemoryChannelParams(kappa, mu, nbar, 0.0)
    if abs(mu * kappa - 1.0) < 1e-12:
        raise ValueError("The loop transmissivity mu*kappa must differ from one")
    edge = eta(0.0, params)
    if edge < 1e-12:
        return np.inf
    noise0 = _added_noise(edge, params)
    if noise0 <= 0:
        return 0.0
    lam_star = edge * np.log1p(1.0 / noise0)
    return _mean_energy(lam_star, params)[0]
