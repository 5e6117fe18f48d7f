r"""Truncated Fock-space numerics for the quantum-limited attenuator.

Density matrices are kept on the first ``dim`` number states. The
attenuator acts by an exact finite Kraus sum: the operator removing ``l``
photons annihilates everything above the truncation, so no tail is lost
as long as the input is supported on the truncation. All entropies are
in nats.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import entr

from .gaussian import g, g_inv

__all__ = [
    "FockDensity",
    "ladder",
    "attenuator_fock",
    "attenuator_lindbladian",
    "passive_rearrangement",
    "spectrum",
    "majorization_margin",
    "majorizes",
    "vn_entropy",
    "entropy_flux",
    "cmoe_check",
    "random_density",
]


@dataclass
class FockDensity:
    """Density matrix on a truncated Fock space.

    Attributes:
        rho (array): complex Hermitian positive semidefinite matrix with
            unit trace, indexed by photon number starting at 0
    """

    rho: np.ndarray
    tol: float = 1e-9

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=complex)
        if self.rho.ndim != 2 or self.rho.shape[0] != self.rho.shape[1]:
            raise ValueError("The density matrix must be square")
        if np.abs(self.rho - self.rho.conj().T).max() > self.tol:
            raise ValueError("The density matrix must be Hermitian")
        if abs(np.trace(self.rho).real - 1.0) > self.tol:
            raise ValueError("The density matrix must have unit trace")
        if np.linalg.eigvalsh(self.rho)[0] < -self.tol:
            raise ValueError("The density matrix must be positive semidefinite")

    @property
    def dim(self):
        return self.rho.shape[0]


def ladder(dim):
    """Lowering operator truncated to the first ``dim`` number states."""
    if dim < 1:
        raise ValueError("The dimension must be a positive integer")
    return np.diag(np.sqrt(np.arange(1.0, dim)), k=1)


@lru_cache(maxsize=16)
def _kraus_set(dim, lam):
    ops = []
    for l in range(dim):
        m = np.arange(dim - l)
        amp = np.sqrt(
            np.array([math.comb(k + l, l) for k in m], dtype=float)
            * (1.0 - lam) ** l
            * lam**m
        )
        ops.append(np.diag(amp, k=l))
    return tuple(ops)


def attenuator_fock(rho, lam):
    r"""Quantum-limited attenuator of transmissivity ``lam`` on a truncation.

    Applies the Kraus sum :math:`\sum_l B_l \rho B_l^\dagger` where
    :math:`B_l` removes ``l`` photons with binomial amplitudes. The sum is
    finite and exact on the truncated space.

    Args:
        rho (FockDensity): input state
        lam (float): transmissivity in ``[0, 1]``

    Returns:
        FockDensity: output state on the same truncation
    """
    if not 0 <= lam <= 1:
        raise ValueError("The transmissivity must lie in [0, 1]")
    out = np.zeros_like(rho.rho)
    for b in _kraus_set(rho.dim, float(lam)):
        out += b @ rho.rho @ b.conj().T
    return FockDensity((out + out.conj().T) / 2)


def attenuator_lindbladian(rho):
    r"""Generator of the attenuator semigroup applied to a state.

    Returns :math:`\hat a \rho \hat a^\dagger - \frac12\{\hat a^\dagger
    \hat a, \rho\}` with the truncated ladder operator; the output is
    traceless because the truncated number operator is exactly
    :math:`\hat a^\dagger \hat a`.
    """
    a = ladder(rho.dim)
    n_op = np.diag(np.arange(rho.dim, dtype=float))
    return a @ rho.rho @ a.conj().T - (n_op @ rho.rho + rho.rho @ n_op) / 2


def passive_rearrangement(rho):
    """Sort the spectrum of ``rho`` decreasingly along the Fock ladder."""
    vals = np.sort(np.linalg.eigvalsh(rho.rho))[::-1]
    return FockDensity(np.diag(vals.astype(complex)))


def spectrum(rho):
    """Eigenvalues of a state, sorted descending."""
    return np.sort(np.linalg.eigvalsh(rho.rho))[::-1]


def majorization_margin(x, y):
    """Smallest partial-sum advantage of ``x`` over ``y``.

    Both sequences are sorted descending and padded with zeros to a common
    length; the margin is ``min_k (sum of k largest of x) - (sum of k
    largest of y)``. Nonnegative margin means ``x`` weakly sub-majorizes
    ``y``.
    """
    x = np.sort(np.asarray(x, dtype=float))[::-1]
    y = np.sort(np.asarray(y, dtype=float))[::-1]
    size = max(x.size, y.size)
    x = np.pad(x, (0, size - x.size))
    y = np.pad(y, (0, size - y.size))
    return float(np.min(np.cumsum(x) - np.cumsum(y)))


def majorizes(x, y, tol=1e-9):
    """Weak sub-majorization of ``y`` by ``x``.

    True iff every partial sum of the decreasingly sorted ``x`` dominates
    the corresponding partial sum of ``y`` within ``tol``; when the totals
    agree this is majorization proper.
    """
    return majorization_margin(x, y) >= -tol


def vn_entropy(rho):
    """Von Neumann entropy in nats, with the 0 log 0 = 0 convention."""
    vals = np.clip(np.linalg.eigvalsh(rho.rho), 0.0, None)
    return float(entr(vals).sum())


def entropy_flux(p):
    r"""Entropy production rate of the attenuator at a diagonal state.

    For a strictly positive, nonincreasing probability vector ``p`` this
    is :math:`-F = -\sum_{n \ge 1} n p_n \ln(p_{n-1}/p_n)`, the derivative
    of the entropy along the attenuator semigroup at time zero. It always
    dominates ``f`` of the entropy, with equality for geometric ``p``.

    Args:
        p (array): strictly positive nonincreasing probabilities

    Returns:
        float: the flux value ``-F``

    Raises:
        ValueError: if ``p`` has nonpositive entries (disconnected
            support) or increases somewhere
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("The input must be a nonempty probability vector")
    if np.any(p <= 0):
        raise ValueError("All entries must be strictly positive (connected support)")
    if np.any(np.diff(p) > 1e-12 * p[0]):
        raise ValueError("The entries must be nonincreasing")
    if p.size == 1:
        return 0.0
    n = np.arange(1, p.size)
    flux = np.sum(n * p[1:] * (np.log(p[:-1]) - np.log(p[1:])))
    return float(-flux)


def cmoe_check(rho, lam):
    """Both sides of the constrained minimum output entropy bound.

    Returns ``(lhs, rhs)`` with ``lhs`` the output entropy of the
    attenuator and ``rhs = g(lam * g_inv(S(rho)))``; ``lhs >= rhs`` up to
    numerical slack, with equality on truncated thermal states.
    """
    lhs = vn_entropy(attenuator_fock(rho, lam))
    rhs = g(lam * g_inv(vn_entropy(rho)))
    return lhs, rhs


def random_density(dim, rng=None, rank=None):
    """Draw a random density matrix from the Ginibre ensemble.

    Args:
        dim (int): truncation size
        rng (numpy.random.Generator): source of randomness
        rank (int): number of Ginibre columns (defaults to ``dim``)

    Returns:
        FockDensity: a full-rank (for default ``rank``) random state
    """
    if rng is None:
        rng = np.random.default_rng()
    if rank is None:
        rank = dim
    gmat = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = gmat @ gmat.conj().T
    return FockDensity(rho / np.trace(rho).real)
