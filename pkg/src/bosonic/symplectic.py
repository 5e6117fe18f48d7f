r"""Symplectic linear algebra for collections of bosonic modes.

Conventions used throughout the toolkit: quadratures are ordered mode by
mode as :math:`(x_1, p_1, \ldots, x_n, p_n)`, the commutation form is the
block diagonal matrix with :math:`2 \times 2` blocks ``[[0, 1], [-1, 0]]``,
and vacuum noise is normalized so that the vacuum covariance matrix is the
identity (a thermal state with mean occupation ``nbar`` has covariance
``(2 * nbar + 1) * I``).
"""

import numpy as np
from scipy.linalg import expm, schur

__all__ = [
    "symplectic_form",
    "symplectic_eigenvalues",
    "williamson",
    "is_valid_covariance",
    "is_symplectic",
    "random_symplectic",
    "random_covariance",
]


def symplectic_form(n):
    r"""Commutation form of ``n`` modes.

    Args:
        n (int): number of modes

    Returns:
        array[float]: the :math:`2n \times 2n` block diagonal matrix with
        ``[[0, 1], [-1, 0]]`` repeated along the diagonal
    """
    if n < 1:
        raise ValueError("The number of modes must be a positive integer")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n), block)


def _as_even_square(mat, name):
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("The input matrix must be square")
    if mat.shape[0] % 2 != 0:
        raise ValueError(f"The {name} must act on an even number of quadratures")
    return mat


def _as_covariance(sigma):
    sigma = _as_even_square(sigma, "covariance matrix")
    scale = max(1.0, np.abs(sigma).max())
    if np.abs(sigma - sigma.T).max() > 1e-10 * scale:
        raise ValueError("The covariance matrix must be symmetric")
    return (sigma + sigma.T) / 2


def symplectic_eigenvalues(sigma):
    r"""Symplectic spectrum of a positive definite covariance matrix.

    The symplectic eigenvalues are the moduli of the (purely imaginary)
    eigenvalues of :math:`\Delta \sigma`, with each doubly counted modulus
    reported once.

    Args:
        sigma (array): real symmetric positive definite matrix of size
            :math:`2n \times 2n`

    Returns:
        array[float]: the ``n`` symplectic eigenvalues in ascending order

    Raises:
        ValueError: if the matrix is not symmetric or not positive definite
    """
    sigma = _as_covariance(sigma)
    if np.linalg.eigvalsh(sigma)[0] <= 0:
        raise ValueError("The covariance matrix must be positive definite")
    n = sigma.shape[0] // 2
    ev = np.linalg.eigvals(symplectic_form(n) @ sigma)
    return np.sort(np.abs(ev))[::2]


def williamson(sigma):
    r"""Williamson normal form of a positive definite covariance matrix.

    Finds a symplectic matrix ``s`` bringing ``sigma`` to its diagonal
    normal form, ``s @ sigma @ s.T == diag(nu_1, nu_1, ..., nu_n, nu_n)``.
    The construction diagonalizes the antisymmetric matrix
    :math:`\sigma^{1/2} \Delta \sigma^{1/2}` with a real Schur
    decomposition and rescales the orthogonal factor.

    Args:
        sigma (array): real symmetric positive definite matrix of size
            :math:`2n \times 2n`

    Returns:
        tuple[array, array]: the symplectic matrix ``s`` and the symplectic
        eigenvalues ``nu`` in ascending order

    Raises:
        ValueError: if the matrix is not symmetric or not positive definite
    """
    sigma = _as_covariance(sigma)
    w, v = np.linalg.eigh(sigma)
    if w[0] <= 0:
        raise ValueError("The covariance matrix must be positive definite")
    n = sigma.shape[0] // 2
    root = (v * np.sqrt(w)) @ v.T
    inv_root = (v / np.sqrt(w)) @ v.T
    a = root @ symplectic_form(n) @ root
    a = (a - a.T) / 2

    t, o = schur(a)
    # Real Schur form of a nonsingular antisymmetric matrix is block
    # diagonal with 2x2 blocks [[0, b], [-b, 0]]; flip pairs with b < 0 and
    # sort the blocks so the moduli come out ascending.
    nu = np.empty(n)
    for k in range(n):
        b = t[2 * k, 2 * k + 1]
        if b < 0:
            o[:, [2 * k, 2 * k + 1]] = o[:, [2 * k + 1, 2 * k]]
            b = -b
        nu[k] = b
    order = np.argsort(nu)
    nu = nu[order]
    cols = np.empty(2 * n, dtype=int)
    cols[0::2] = 2 * order
    cols[1::2] = 2 * order + 1
    o = o[:, cols]

    half = np.repeat(np.sqrt(nu), 2)
    s = (half[:, None] * o.T) @ inv_root
    return s, nu


def is_valid_covariance(sigma, tol=1e-9):
    """Check the uncertainty bound: all symplectic eigenvalues >= 1 - tol.

    Args:
        sigma (array): real symmetric matrix of size :math:`2n \\times 2n`
        tol (float): slack on the unit lower bound

    Returns:
        bool: whether ``sigma`` is the covariance matrix of a quantum state
    """
    sigma = _as_covariance(sigma)
    if np.linalg.eigvalsh(sigma)[0] <= 0:
        return False
    return symplectic_eigenvalues(sigma)[0] >= 1 - tol


def is_symplectic(s, tol=1e-9):
    """Check whether ``s`` preserves the commutation form.

    For a single mode this is equivalent to ``det(s) == 1`` up to ``tol``.

    Args:
        s (array): real square matrix of even size
        tol (float): entrywise tolerance on ``s @ Delta @ s.T - Delta``

    Returns:
        bool: whether ``s`` is symplectic
    """
    s = _as_even_square(s, "matrix")
    delta = symplectic_form(s.shape[0] // 2)
    return np.abs(s @ delta @ s.T - delta).max() <= tol


def random_symplectic(n, rng=None, scale=0.4):
    """Draw a random symplectic matrix on ``n`` modes.

    Exponentiates ``Delta @ a`` for a random symmetric ``a`` with entries
    of standard deviation ``scale``; small scales keep the squeezing mild.

    Args:
        n (int): number of modes
        rng (numpy.random.Generator): source of randomness
        scale (float): entry scale of the symmetric generator

    Returns:
        array[float]: a :math:`2n \\times 2n` symplectic matrix
    """
    if rng is None:
        rng = np.random.default_rng()
    a = rng.standard_normal((2 * n, 2 * n)) * scale
    a = (a + a.T) / 2
    return expm(symplectic_form(n) @ a)


def random_covariance(n, rng=None, nu_max=3.0, scale=0.4):
    """Draw a random valid covariance matrix on ``n`` modes.

    Symplectic eigenvalues are sampled uniformly from ``[1, nu_max]`` and
    conjugated by a random symplectic matrix, so the output satisfies the
    uncertainty bound by construction.

    Args:
        n (int): number of modes
        rng (numpy.random.Generator): source of randomness
        nu_max (float): upper end of the symplectic eigenvalue range
        scale (float): squeezing scale passed to :func:`random_symplectic`

    Returns:
        array[float]: a :math:`2n \\times 2n` valid covariance matrix
    """
    if rng is None:
        rng = np.random.default_rng()
    if nu_max < 1:
        raise ValueError("nu_max must be at least 1")
    nu = rng.uniform(1.0, nu_max, n)
    s = random_symplectic(n, rng, scale)
    sigma = (s * np.repeat(nu, 2)) @ s.T
    return (sigma + sigma.T) / 2
