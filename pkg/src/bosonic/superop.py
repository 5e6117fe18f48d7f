r"""Normal forms of linear maps that send Gaussian states to Gaussian states.

Any such map acts on the first and second moments as ``r -> K r + y`` and
``sigma -> K sigma K^T + alpha``, the same data that describe a Gaussian
channel, so :class:`~bosonic.gaussian.GaussianChannel` doubles as the map
carrier here.  Maps of this form need not be channels: completely
positive ones are a strict subset, characterized on one mode by a
determinant inequality.  The classifiers below factor a map into a
phase-space dilatation, possibly a transposition, and a completely
positive residue, mirroring the structure available in closed form for
one mode and for noiseless multimode maps.
"""

from dataclasses import dataclass, field

import numpy as np

from .gaussian import GaussianChannel
from .symplectic import random_covariance, symplectic_form

CASE_CP = "CP"
CASE_DILATATION = "DilatationThenCP"
CASE_TRANSPOSE = "TransposeThenCP"
CASE_DILATATION_TRANSPOSE = "DilatationTransposeThenCP"
CASE_NOT_GAUSSIAN = "NotGaussianToGaussian"

_DET_CLAMP = 1e-12


def transposition(n):
    """Phase-space transposition, flipping every momentum quadrature."""
    return np.diag([1.0, -1.0] * n)


@dataclass(frozen=True)
class NormalForm:
    r"""Factorization of a Gaussian-to-Gaussian map into canonical stages.

    The stages act in order: the dilatation scales phase space by
    ``dilation``, the transposition is applied when the case name carries
    it, and the completely positive residue ``(symplectic_part,
    residual_noise, y)`` acts last.

    Args:
        case (str): one of ``CP``, ``DilatationThenCP``,
            ``TransposeThenCP``, ``DilatationTransposeThenCP`` or
            ``NotGaussianToGaussian``
        dilation (float): phase-space scaling factor, at least one
        symplectic_part (ndarray): matrix of the residue map
        residual_noise (ndarray): noise block of the residue map
        y (ndarray): displacement of the residue map
    """

    case: str
    dilation: float
    symplectic_part: np.ndarray
    residual_noise: np.ndarray
    y: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.y is None:
            object.__setattr__(
                self, "y", np.zeros(self.symplectic_part.shape[0])
            )

    def recompose(self):
        """Multiply the stages back into a single map."""
        k = self.dilation * self.symplectic_part
        if "Transpose" in self.case:
            k = k @ transposition(k.shape[0] // 2)
        return GaussianChannel(k, self.residual_noise, self.y)


def _one_mode_dets(spec):
    if spec.n_in != 1 or spec.n_out != 1:
        raise ValueError("The map must act on a single mode")
    det_alpha = float(np.linalg.det(spec.alpha))
    if -_DET_CLAMP < det_alpha < 0:
        det_alpha = 0.0
    return float(np.linalg.det(spec.k)), det_alpha


def one_mode_valid(spec, tol=1e-9):
    r"""Whether a one-mode map sends every valid state to a valid state.

    Checks ``sqrt(det alpha) >= 1 - |det K| - tol``; the noise block is
    expected positive semidefinite, only its determinant enters.

    Args:
        spec (GaussianChannel): one-mode map data
        tol (float): slack on the determinant inequality

    Returns:
        bool: whether the map preserves state validity
    """
    det_k, det_alpha = _one_mode_dets(spec)
    if det_alpha < 0:
        return False
    return np.sqrt(det_alpha) >= 1.0 - abs(det_k) - tol


def one_mode_cp(spec, tol=1e-9):
    r"""Whether a one-mode map is a completely positive channel.

    Checks ``sqrt(det alpha) >= |1 - det K| - tol``, which agrees with
    the matrix test :func:`bosonic.gaussian.is_completely_positive`.

    Args:
        spec (GaussianChannel): one-mode map data
        tol (float): slack on the determinant inequality

    Returns:
        bool: whether the map is a channel
    """
    det_k, det_alpha = _one_mode_dets(spec)
    if det_alpha < 0:
        return False
    return np.sqrt(det_alpha) >= abs(1.0 - det_k) - tol


def classify_one_mode(spec, tol=1e-9):
    r"""Normal form of a valid one-mode Gaussian-to-Gaussian map.

    Splits on ``det K``: within ``[0, 1]`` the map is already a channel,
    above one it is a dilatation followed by a channel, and negative
    determinants pick up a transposition, with a dilatation once they
    pass minus one.  The residue is completely positive in every case.

    Args:
        spec (GaussianChannel): one-mode map data satisfying
            :func:`one_mode_valid`
        tol (float): slack forwarded to the validity test

    Returns:
        NormalForm: the factorization
    """
    if not one_mode_valid(spec, tol):
        raise ValueError("The map does not preserve state validity")
    det_k = float(np.linalg.det(spec.k))
    alpha = spec.alpha.copy()
    y = spec.y.copy()
    if 0 <= det_k <= 1:
        return NormalForm(CASE_CP, 1.0, spec.k.copy(), alpha, y)
    if det_k > 1:
        scale = np.sqrt(det_k)
        return NormalForm(CASE_DILATATION, scale, spec.k / scale, alpha, y)
    flipped = spec.k @ transposition(1)
    if det_k >= -1:
        return NormalForm(CASE_TRANSPOSE, 1.0, flipped, alpha, y)
    scale = np.sqrt(-det_k)
    return NormalForm(CASE_DILATATION_TRANSPOSE, scale, flipped / scale, alpha, y)


def classify_multimode_nonoise(k, tol=1e-9):
    r"""Normal form of a noiseless multimode Gaussian-to-Gaussian map.

    A matrix ``K`` with no added noise sends Gaussian states to Gaussian
    states exactly when ``K Delta K^T`` is proportional to ``Delta`` with
    factor of modulus at least one, a dilatation of a symplectic or
    antisymplectic matrix.  Anything else is reported as
    ``NotGaussianToGaussian``.

    Args:
        k (ndarray): square matrix of even dimension
        tol (float): tolerance on the proportionality residual

    Returns:
        NormalForm: the factorization, with zero residual noise
    """
    k = np.asarray(k, dtype=float)
    if k.ndim != 2 or k.shape[0] != k.shape[1] or k.shape[0] % 2:
        raise ValueError("The matrix must be square with even dimension")
    n = k.shape[0] // 2
    form = symplectic_form(n)
    image = k @ form @ k.T
    factor = float(np.sum(image * form) / (2 * n))
    noise = np.zeros_like(k)
    scaled = max(1.0, abs(image).max())
    if abs(image - factor * form).max() > tol * scaled:
        return NormalForm(CASE_NOT_GAUSSIAN, 1.0, k.copy(), noise)
    if factor >= 1.0 - tol:
        scale = np.sqrt(max(factor, 1.0))
        case = CASE_CP if scale <= 1.0 + tol else CASE_DILATATION
        return NormalForm(case, float(scale), k / scale, noise)
    if factor <= -1.0 + tol:
        scale = np.sqrt(max(-factor, 1.0))
        case = CASE_TRANSPOSE if scale <= 1.0 + tol else CASE_DILATATION_TRANSPOSE
        return NormalForm(case, float(scale), (k @ transposition(n)) / scale, noise)
    return NormalForm(CASE_NOT_GAUSSIAN, 1.0, k.copy(), noise)


def shift_threshold(spec, mu):
    r"""Rescale a map so validity on contracted states becomes testable.

    The original map preserves validity on all states whose covariance
    dominates ``mu^2`` times the vacuum exactly when the rescaled map
    ``(mu K, alpha)`` preserves validity on all states.

    Args:
        spec (GaussianChannel): map data
        mu (float): contraction parameter, strictly above one

    Returns:
        GaussianChannel: the rescaled map
    """
    if mu <= 1:
        raise ValueError("The rescaling parameter must exceed one")
    return GaussianChannel(mu * spec.k, spec.alpha.copy(), spec.y.copy())


@dataclass(frozen=True)
class PositivityWitness:
    """A sampled input showing that a map breaks state validity.

    Args:
        kind (str): ``state`` for a covariance input, ``vector`` for a
            complex phase-space vector
        data (ndarray): the offending input
        margin (float): negative amount by which the constraint fails
        trial (int): index of the sampling round that found it
    """

    kind: str
    data: np.ndarray
    margin: float
    trial: int


def sampled_positivity_falsifier(spec, trials=1000, seed=0):
    r"""Search for an input certifying that a map is not positivity preserving.

    Each round draws a random valid covariance and checks the output
    against the uncertainty bound, then draws a random complex vector and
    checks the quadratic-form version of the same constraint.  Finding a
    witness disproves positivity; finding none proves nothing beyond one
    mode, where :func:`one_mode_valid` decides the question exactly.

    Args:
        spec (GaussianChannel): map data
        trials (int): number of sampling rounds
        seed (int): base seed; each round uses an independent substream

    Returns:
        PositivityWitness or None: the first witness found, if any
    """
    form_in = symplectic_form(spec.n_in)
    form_out = symplectic_form(spec.n_out)
    image_form = spec.k @ form_in @ spec.k.T
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        sigma = random_covariance(spec.n_in, rng)
        out = spec.k @ sigma @ spec.k.T + spec.alpha
        out = (out + out.T) / 2
        margin = float(
            np.linalg.eigvalsh(out + 1j * form_out).min().real
        )
        if margin < -1e-10:
            return PositivityWitness("state", sigma, margin, trial)
        w = rng.normal(size=2 * spec.n_out) + 1j * rng.normal(size=2 * spec.n_out)
        margin = float(
            abs(w.conj() @ image_form @ w)
            + (w.conj() @ spec.alpha @ w).real
            - abs(w.conj() @ form_out @ w)
        )
        if margin < -1e-10:
            return PositivityWitness("vector", w, margin, trial)
    return None
