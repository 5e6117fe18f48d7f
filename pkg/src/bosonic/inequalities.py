r"""Entropy-power style inequalities for linear mixing of bosonic modes.

The entropy power bound states that mixing ``n``-mode inputs through
block matrices :math:`M_\alpha` yields output entropy
:math:`S_Y \ge n \ln \sum_\alpha \lambda_\alpha e^{S_\alpha / n}` with
:math:`\lambda_\alpha = |\det M_\alpha|^{1/n}`. The photon-number variant
replaces exponentials by :math:`g^{-1}`; its Gaussian case is checked
exactly here, and two gap functions quantify how far the exponential
bound can fall short of the photon-number one.
"""

from dataclasses import dataclass

import numpy as np

from .gaussian import g, g_inv, h
from .symplectic import is_valid_covariance, symplectic_eigenvalues

__all__ = [
    "EpiInstance",
    "epi_lower_bound",
    "epni_gaussian_check",
    "delta_gap",
    "cmoe_gap",
    "broadcast_region",
]


@dataclass
class EpiInstance:
    """Coefficients and input entropies of one entropy power instance.

    Attributes:
        n (int): modes per input
        coefficients (array): nonnegative weights, usually
            ``|det M|^(1/n)`` of the mixing blocks
        entropies (array): nonnegative input entropies in nats
    """

    n: int
    coefficients: np.ndarray
    entropies: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("The number of modes must be at least 1")
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        self.entropies = np.asarray(self.entropies, dtype=float)
        if self.coefficients.shape != self.entropies.shape or self.coefficients.ndim != 1:
            raise ValueError("Coefficients and entropies must be vectors of equal length")
        if np.any(self.coefficients < 0) or np.any(self.entropies < 0):
            raise ValueError("Coefficients and entropies must be nonnegative")

    @classmethod
    def from_blocks(cls, n, blocks, entropies):
        """Build an instance from the mixing block matrices."""
        lam = [abs(np.linalg.det(np.asarray(m, dtype=float))) ** (1.0 / n) for m in blocks]
        return cls(n, lam, entropies)


def epi_lower_bound(inst):
    r"""Entropy power lower bound :math:`n \ln \sum \lambda e^{S/n}`."""
    if np.all(inst.coefficients == 0):
        raise ValueError("At least one coefficient must be positive")
    return float(inst.n * np.log(np.sum(inst.coefficients * np.exp(inst.entropies / inst.n))))


def epni_gaussian_check(sigma_a, sigma_b, lam):
    """Both sides of the photon-number inequality for Gaussian inputs.

    The inputs are mixed on a beamsplitter of transmissivity ``lam``, so
    the output covariance is the convex combination of the inputs.
    Returns ``(lhs, rhs)`` with ``lhs`` the output photon number
    ``g_inv(S/n)`` and ``rhs`` the convex combination of the input photon
    numbers; ``lhs >= rhs`` always, with equality for proportional
    covariance pairs.

    Args:
        sigma_a (array): valid covariance matrix of the first input
        sigma_b (array): valid covariance matrix of the second input
        lam (float): beamsplitter transmissivity in ``[0, 1]``

    Returns:
        tuple[float, float]: output photon number and the convex bound
    """
    sigma_a = np.asarray(sigma_a, dtype=float)
    sigma_b = np.asarray(sigma_b, dtype=float)
    if sigma_a.shape != sigma_b.shape:
        raise ValueError("The covariance matrices must have equal shape")
    if not 0 <= lam <= 1:
        raise ValueError("The transmissivity must lie in [0, 1]")
    if not (is_valid_covariance(sigma_a) and is_valid_covariance(sigma_b)):
        raise ValueError("Both covariance matrices must satisfy the uncertainty bound")
    n = sigma_a.shape[0] // 2
    sigma_c = lam * sigma_a + (1 - lam) * sigma_b

    def photon_number(sigma):
        entropy = np.sum(h(np.maximum(symplectic_eigenvalues(sigma), 1.0)))
        return g_inv(entropy / n)

    lhs = photon_number(sigma_c)
    rhs = lam * photon_number(sigma_a) + (1 - lam) * photon_number(sigma_b)
    return float(lhs), float(rhs)


def delta_gap(x):
    r"""Worst-case photon-number shortfall of the exponential bound.

    Evaluates :math:`\delta(x) = g^{-1}(\ln x) - x/e + 1/2` for
    ``x >= 1``; it decreases from ``1/2 - 1/e`` at 1 towards 0.

    Args:
        x (float or array): argument, at least 1

    Returns:
        float or array: the gap value
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 1):
        raise ValueError("The argument must be at least 1")
    out = g_inv(np.log(x)) - x / np.e + 0.5
    return float(out) if out.ndim == 0 else out


def cmoe_gap(sbar, lam):
    r"""Gap between the thermal output entropy and its exponential bound.

    Evaluates :math:`\Delta(\bar S, \lambda) = g(\lambda g^{-1}(\bar S)) -
    \ln(\lambda e^{\bar S} + 1 - \lambda)`, which is nonnegative and stays
    below 0.11. Scalar and array arguments broadcast.

    Args:
        sbar (float or array): input entropy, nonnegative
        lam (float or array): transmissivity in ``[0, 1]``

    Returns:
        float or array: the gap value
    """
    sbar = np.asarray(sbar, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if np.any(sbar < 0):
        raise ValueError("The entropy must be nonnegative")
    if np.any(lam < 0) or np.any(lam > 1):
        raise ValueError("The transmissivity must lie in [0, 1]")
    out = g(lam * g_inv(sbar)) - np.log1p(lam * np.expm1(sbar))
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def broadcast_region(eta, energy, grid=200):
    """Rate-region boundary curves for broadcasting through a beamsplitter.

    Returns ``(r_b, r_c_conjectured, r_c_epi)`` where ``r_b`` is the rate
    grid of the transmitted receiver and the two curves bound the rate of
    the reflected receiver: the photon-number form and the weaker
    exponential form. Both are clipped at zero, and the exponential curve
    dominates the photon-number curve pointwise.

    Args:
        eta (float): beamsplitter transmissivity in ``[0.5, 1]``
        energy (float): mean input photon number, nonnegative
        grid (int or array): number of grid points, or explicit rates

    Returns:
        tuple[array, array, array]: rates and the two clipped curves
    """
    if not 0.5 <= eta <= 1:
        raise ValueError("The transmissivity must lie in [0.5, 1]")
    if energy < 0:
        raise ValueError("The energy must be nonnegative")
    cap = g((1 - eta) * energy)
    if np.ndim(grid) == 0:
        if int(grid) < 2:
            raise ValueError("The grid needs at least two points")
        if eta == 1:
            end = g(energy)
        else:
            end = np.log1p(eta / (1 - eta) * np.expm1(cap))
        r_b = np.linspace(0.0, end, int(grid))
    else:
        r_b = np.asarray(grid, dtype=float)
        if np.any(r_b < 0):
            raise ValueError("Rates must be nonnegative")
    ratio = (1 - eta) / eta
    conjectured = np.maximum(0.0, cap - g(ratio * np.asarray(g_inv(r_b))))
    epi = np.maximum(0.0, cap - np.log1p(ratio * np.expm1(r_b)))
    return r_b, conjectured, epi
