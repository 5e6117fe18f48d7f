r"""Gaussian states, Gaussian channels, and bosonic entropy scalars.

A Gaussian state is carried by its mean quadrature vector and covariance
matrix. A Gaussian channel acts on the moments as
:math:`\sigma \mapsto K \sigma K^T + \alpha` and
:math:`r \mapsto K r + y`. Entropies are in nats.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import xlogy

from .symplectic import (
    _as_covariance,
    is_valid_covariance,
    symplectic_eigenvalues,
    symplectic_form,
)

__all__ = [
    "g",
    "g_inv",
    "h",
    "f",
    "GaussianState",
    "GaussianChannel",
    "thermal_state",
    "gaussian_entropy",
    "attenuator",
    "amplifier",
    "additive_noise",
    "apply_channel",
    "is_completely_positive",
    "compose",
]


def g(nbar):
    r"""Entropy of a thermal state with mean occupation ``nbar``.

    Computes :math:`(\bar n + 1)\ln(\bar n + 1) - \bar n \ln \bar n`,
    which is 0 at 0, strictly increasing, and concave.

    Args:
        nbar (float or array): mean photon number, nonnegative

    Returns:
        float or array: the thermal entropy in nats
    """
    n = np.asarray(nbar, dtype=float)
    if np.any(n < 0):
        raise ValueError("The mean photon number must be nonnegative")
    # above 1 the log1p form avoids the cancellation of
    # (n+1)ln(n+1) - n ln n between two large terms
    big = np.maximum(n, 1.0)
    out = np.where(
        n < 1,
        xlogy(n + 1.0, n + 1.0) - xlogy(n, n),
        np.log1p(big) + big * np.log1p(1.0 / big),
    )
    return out.item() if np.ndim(nbar) == 0 else out


def _g_inv_scalar(s):
    if s < 0:
        raise ValueError("The entropy must be nonnegative")
    if s == 0:
        return 0.0
    hi = 1.0
    while g(hi) < s:
        hi *= 2.0
    return brentq(lambda n: g(n) - s, 0.0, hi, xtol=1e-15, rtol=8.9e-16)


def g_inv(s):
    """Mean occupation of the thermal state with entropy ``s``.

    Inverse of :func:`g` on the nonnegative axis, accurate to close to
    machine precision in the occupation.

    Args:
        s (float or array): entropy in nats, nonnegative

    Returns:
        float or array: mean photon number with ``g(g_inv(s)) == s``
    """
    if np.ndim(s) == 0:
        return _g_inv_scalar(float(s))
    flat = [_g_inv_scalar(float(x)) for x in np.ravel(s)]
    return np.array(flat).reshape(np.shape(s))


def h(nu):
    """Entropy contribution of one symplectic eigenvalue ``nu >= 1``."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 1):
        raise ValueError("Symplectic eigenvalues must be at least 1")
    out = g((nu - 1) / 2)
    return float(out) if nu.ndim == 0 else out


def f(s):
    r"""Thermal entropy flux scalar.

    Evaluates :math:`-\bar n \ln(1 + 1/\bar n)` at
    :math:`\bar n = g^{-1}(s)`; it is 0 at 0 with slope -1 and decreases
    towards -1 as ``s`` grows.

    Args:
        s (float or array): entropy in nats, nonnegative

    Returns:
        float or array: the flux value, in ``(-1, 0]``
    """
    nbar = np.asarray(g_inv(s), dtype=float)
    out = np.where(nbar > 0, -nbar * np.log1p(1.0 / np.where(nbar > 0, nbar, 1.0)), 0.0)
    return float(out) if out.ndim == 0 else out


@dataclass
class GaussianState:
    """First and second moments of a Gaussian state.

    Attributes:
        r (array): mean quadrature vector of length ``2n``
        sigma (array): covariance matrix of size ``2n x 2n``, required to
            satisfy the uncertainty bound
    """

    r: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        self.r = np.asarray(self.r, dtype=float)
        self.sigma = _as_covariance(self.sigma)
        if self.r.ndim != 1 or self.r.size != self.sigma.shape[0]:
            raise ValueError("The mean vector length must match the covariance size")
        if not is_valid_covariance(self.sigma):
            raise ValueError("The covariance matrix violates the uncertainty bound")

    @property
    def n_modes(self):
        return self.r.size // 2


@dataclass
class GaussianChannel:
    """Moment action ``(k, alpha, y)`` of a Gaussian channel.

    The matrix ``k`` may be rectangular (``2m x 2n`` for ``n`` input and
    ``m`` output modes); ``alpha`` is the symmetric added-noise matrix and
    ``y`` the displacement of the output means.
    """

    k: np.ndarray
    alpha: np.ndarray
    y: np.ndarray = None

    def __post_init__(self):
        self.k = np.asarray(self.k, dtype=float)
        if self.k.ndim != 2 or self.k.shape[0] % 2 or self.k.shape[1] % 2:
            raise ValueError("The matrix k must have even numbers of rows and columns")
        self.alpha = _as_covariance(self.alpha)
        if self.alpha.shape[0] != self.k.shape[0]:
            raise ValueError("The noise matrix size must match the output of k")
        if self.y is None:
            self.y = np.zeros(self.k.shape[0])
        self.y = np.asarray(self.y, dtype=float)
        if self.y.shape != (self.k.shape[0],):
            raise ValueError("The displacement length must match the output of k")

    @property
    def n_in(self):
        return self.k.shape[1] // 2

    @property
    def n_out(self):
        return self.k.shape[0] // 2


def thermal_state(n, nbar):
    """Thermal state on ``n`` modes with mean occupation ``nbar`` per mode."""
    if nbar < 0:
        raise ValueError("The mean photon number must be nonnegative")
    return GaussianState(np.zeros(2 * n), (2 * nbar + 1) * np.eye(2 * n))


def gaussian_entropy(state):
    """Von Neumann entropy of a Gaussian state, in nats."""
    nu = symplectic_eigenvalues(state.sigma)
    return float(np.sum(h(np.maximum(nu, 1.0))))


def attenuator(n, lam):
    """Beamsplitter channel of transmissivity ``lam`` mixing in vacuum."""
    if not 0 <= lam <= 1:
        raise ValueError("The transmissivity must lie in [0, 1]")
    eye = np.eye(2 * n)
    return GaussianChannel(np.sqrt(lam) * eye, (1 - lam) * eye)


def amplifier(n, kappa):
    """Phase insensitive amplifier of gain ``kappa >= 1``."""
    if kappa < 1:
        raise ValueError("The gain must be at least 1")
    eye = np.eye(2 * n)
    return GaussianChannel(np.sqrt(kappa) * eye, (kappa - 1) * eye)


def additive_noise(n, gamma):
    """Classical additive noise channel with covariance ``gamma``."""
    gamma = _as_covariance(gamma)
    if gamma.shape[0] != 2 * n:
        raise ValueError("The noise matrix size must match the number of modes")
    if np.linalg.eigvalsh(gamma)[0] < -1e-12:
        raise ValueError("The noise matrix must be positive semidefinite")
    return GaussianChannel(np.eye(2 * n), gamma)


def apply_channel(channel, state):
    """Push a Gaussian state through a Gaussian channel."""
    if channel.n_in != state.n_modes:
        raise ValueError("The channel input size must match the state")
    sigma = channel.k @ state.sigma @ channel.k.T + channel.alpha
    return GaussianState(channel.k @ state.r + channel.y, (sigma + sigma.T) / 2)


def is_completely_positive(channel, tol=1e-9):
    r"""Complete positivity test for the moment action ``(k, alpha)``.

    Checks that both Hermitian matrices
    :math:`\alpha \mp i(\Delta_{\mathrm{out}} - K \Delta_{\mathrm{in}} K^T)`
    are positive semidefinite.

    Args:
        channel (GaussianChannel): map to test
        tol (float): slack on the smallest eigenvalue

    Returns:
        bool: whether the map is a quantum channel
    """
    b = symplectic_form(channel.n_out) - channel.k @ symplectic_form(channel.n_in) @ channel.k.T
    for sign in (1.0, -1.0):
        m = channel.alpha + sign * 1j * b
        if np.linalg.eigvalsh((m + m.conj().T) / 2)[0] < -tol:
            return False
    return True


def compose(second, first):
    """Concatenate two channels, applying ``first`` then ``second``."""
    if second.n_in != first.n_out:
        raise ValueError("The inner channel sizes must match")
    k = second.k @ first.k
    alpha = second.k @ first.alpha @ second.k.T + second.alpha
    y = second.k @ first.y + second.y
    return GaussianChannel(k, (alpha + alpha.T) / 2, y)
