r"""Binomial thinning of photon-number distributions.

Thinning keeps each quantum independently with probability ``lam``; it is
the restriction of the quantum-limited attenuator to states diagonal in
the number basis. Entropies are in nats.
"""

import math

import numpy as np
from scipy.special import entr, gammaln

from .gaussian import g, g_inv

__all__ = [
    "transition_matrix",
    "thin",
    "shannon_entropy",
    "thinning_bound_gap",
    "geometric",
]

# exact integer binomials below this row size, log-space above
_EXACT_LIMIT = 60


def transition_matrix(dim, lam):
    """Column-stochastic matrix of binomial survival probabilities.

    Entry ``(n, k)`` is the probability that ``k`` quanta thin down to
    ``n``, i.e. ``C(k, n) lam^n (1-lam)^(k-n)``.
    """
    if not 0 <= lam <= 1:
        raise ValueError("The thinning parameter must lie in [0, 1]")
    t = np.zeros((dim, dim))
    if lam == 1:
        return np.eye(dim)
    if lam == 0:
        t[0, :] = 1.0
        return t
    log_lam = math.log(lam)
    log_1m = math.log1p(-lam)
    for k in range(dim):
        n = np.arange(k + 1)
        if k <= _EXACT_LIMIT:
            coeff = np.array([math.comb(k, int(i)) for i in n], dtype=float)
            t[: k + 1, k] = coeff * lam**n * (1 - lam) ** (k - n)
        else:
            log_coeff = gammaln(k + 1) - gammaln(n + 1) - gammaln(k - n + 1)
            t[: k + 1, k] = np.exp(log_coeff + n * log_lam + (k - n) * log_1m)
    return t


def thin(p, lam):
    """Thin a distribution on the nonnegative integers.

    Args:
        p (array): nonnegative weights indexed from 0
        lam (float): survival probability in ``[0, 1]``

    Returns:
        array[float]: the thinned distribution, same length as ``p``
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("The input must be a nonempty vector")
    if np.any(p < -1e-12):
        raise ValueError("The input must be nonnegative")
    return transition_matrix(p.size, lam) @ np.clip(p, 0.0, None)


def shannon_entropy(p):
    """Shannon entropy of a distribution, in nats."""
    p = np.asarray(p, dtype=float)
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-8:
        raise ValueError("The input must be a probability distribution")
    return float(entr(np.clip(p, 0.0, None)).sum())


def thinning_bound_gap(p, lam):
    """Slack in the thinning entropy bound.

    Returns ``H(thin(p, lam)) - g(lam * g_inv(H(p)))``, which is
    nonnegative and vanishes on geometric distributions.
    """
    return shannon_entropy(thin(p, lam)) - g(lam * g_inv(shannon_entropy(p)))


def geometric(dim, mean):
    """Truncated geometric distribution with the given untruncated mean.

    The weights are proportional to ``(mean / (mean + 1))**n`` and are
    renormalized on the truncation, so the realized mean is slightly
    below ``mean`` unless the tail is negligible.
    """
    if dim < 1:
        raise ValueError("The dimension must be a positive integer")
    if mean < 0:
        raise ValueError("The mean must be nonnegative")
    if mean == 0:
        p = np.zeros(dim)
        p[0] = 1.0
        return p
    q = mean / (mean + 1.0)
    p = q ** np.arange(dim)
    return p / p.sum()
