r"""Finite-dimensional lossy Lindblad generators with single-step jumps.

A generator in this family is built from dephasing operators diagonal in
the energy basis, jump operators lowering the ladder by exactly one step,
and an optional diagonal Lamb-shift Hamiltonian:

.. math::

    \mathcal L(\rho) = -i[H, \rho] + \sum_\alpha \Big( L_\alpha \rho
    L_\alpha^\dagger - \tfrac12 \{L_\alpha^\dagger L_\alpha, \rho\}
    \Big).

Whether the evolution sends passive states to outputs majorizing every
other output of the same spectrum is governed by the concavity of the
decay-rate profile; the module also carries two explicit generators
(built from raw operator lists) for which the majorization order breaks.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .fock import ladder

__all__ = [
    "LindbladSpec",
    "build_superoperator",
    "superoperator_from_ops",
    "rate_profile",
    "passivity_condition",
    "evolve",
    "two_mode_loss_example",
    "two_mode_top_sums_exact",
    "two_mode_top_one_exact",
    "TWO_MODE_CROSSING_TIME",
    "two_qubit_loss_example",
    "two_qubit_populations_exact",
    "qubit_optical_bloch",
]

# where the computed two-mode top-three sums cross
TWO_MODE_CROSSING_TIME = float(np.log(2 + np.sqrt(2)))


@dataclass
class LindbladSpec:
    """Coefficient description of a single-step lossy generator.

    Attributes:
        dim (int): number of levels
        dephasing (list[array]): one length ``dim`` complex row per
            dephasing operator ``sum_i a_i |i><i|``
        jumps (list[array]): one length ``dim - 1`` complex row per jump
            operator ``sum_i b_i |i><i+1|``
        lamb_shift (array): optional real diagonal of the Hamiltonian
    """

    dim: int
    dephasing: list = field(default_factory=list)
    jumps: list = field(default_factory=list)
    lamb_shift: np.ndarray = None

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("The dimension must be at least 2")
        self.dephasing = [np.asarray(a, dtype=complex) for a in self.dephasing]
        self.jumps = [np.asarray(b, dtype=complex) for b in self.jumps]
        for a in self.dephasing:
            if a.shape != (self.dim,):
                raise ValueError("Each dephasing row must have length dim")
        for b in self.jumps:
            if b.shape != (self.dim - 1,):
                raise ValueError("Each jump row must have length dim - 1")
        if self.lamb_shift is not None:
            self.lamb_shift = np.asarray(self.lamb_shift, dtype=float)
            if self.lamb_shift.shape != (self.dim,):
                raise ValueError("The Lamb shift diagonal must have length dim")

    def lindblad_operators(self):
        ops = [np.diag(a) for a in self.dephasing]
        ops += [np.diag(b, k=1) for b in self.jumps]
        return ops

    def hamiltonian(self):
        if self.lamb_shift is None:
            return None
        return np.diag(self.lamb_shift.astype(complex))

    def to_dict(self):
        return {
            "dim": self.dim,
            "dephasing": [[[z.real, z.imag] for z in a] for a in self.dephasing],
            "jumps": [[[z.real, z.imag] for z in b] for b in self.jumps],
            "lamb_shift": None if self.lamb_shift is None else list(self.lamb_shift),
        }

    @classmethod
    def from_dict(cls, data):
        dephasing = [[complex(re, im) for re, im in a] for a in data.get("dephasing", [])]
        jumps = [[complex(re, im) for re, im in b] for b in data.get("jumps", [])]
        return cls(data["dim"], dephasing, jumps, data.get("lamb_shift"))


def rate_profile(spec):
    """Decay-rate profile ``r_0 .. r_dim`` of a spec, zero at both ends.

    Interior entry ``r_i`` sums ``|b|^2`` over all jump rows at the step
    from level ``i`` down to ``i - 1``.
    """
    r = np.zeros(spec.dim + 1)
    for b in spec.jumps:
        r[1 : spec.dim] += np.abs(b) ** 2
    return r


def passivity_condition(profile, tol=1e-12):
    """Concavity test of a rate profile.

    True iff ``2 r_i >= r_(i-1) + r_(i+1)`` for every interior index; the
    profile must vanish at both ends.
    """
    r = np.asarray(profile, dtype=float)
    if r.ndim != 1 or r.size < 2:
        raise ValueError("The profile must be a vector with at least two entries")
    if abs(r[0]) > tol or abs(r[-1]) > tol:
        raise ValueError("The profile must vanish at both ends")
    if np.any(r < -tol):
        raise ValueError("The profile entries must be nonnegative")
    return bool(np.all(2 * r[1:-1] >= r[:-2] + r[2:] - tol))


def _operator_list(spec):
    if isinstance(spec, LindbladSpec):
        return spec.lindblad_operators(), spec.hamiltonian()
    ops = [np.asarray(l, dtype=complex) for l in spec]
    if not ops:
        raise ValueError("At least one Lindblad operator is required")
    dim = ops[0].shape[0]
    for l in ops:
        if l.shape != (dim, dim):
            raise ValueError("All Lindblad operators must be square of equal size")
    return ops, None


def superoperator_from_ops(ops, hamiltonian=None):
    """Matrix of the generator on row-major vectorized densities."""
    ops, _ = _operator_list(list(ops))
    dim = ops[0].shape[0]
    eye = np.eye(dim)
    sup = np.zeros((dim * dim, dim * dim), dtype=complex)
    for l in ops:
        ll = l.conj().T @ l
        sup += np.kron(l, l.conj())
        sup -= 0.5 * (np.kron(ll, eye) + np.kron(eye, ll.T))
    if hamiltonian is not None:
        ham = np.asarray(hamiltonian, dtype=complex)
        sup += -1j * (np.kron(ham, eye) - np.kron(eye, ham.T))
    return sup


def build_superoperator(spec):
    """Superoperator matrix of a :class:`LindbladSpec`."""
    ops, ham = _operator_list(spec)
    return superoperator_from_ops(ops, ham)


def _monomial(op):
    nonzero = np.abs(op) > 0
    return nonzero.sum(axis=0).max() <= 1 and nonzero.sum(axis=1).max() <= 1


def _population_rates(ops):
    dim = ops[0].shape[0]
    q = np.zeros((dim, dim))
    for l in ops:
        w = np.abs(l) ** 2
        q += w
        q -= np.diag(w.sum(axis=0))
    return q


def evolve(spec, rho, t):
    """Propagate a density matrix for time ``t`` under the generator.

    ``spec`` may be a :class:`LindbladSpec` or a plain list of Lindblad
    operator matrices. Diagonal inputs under operators that map basis
    states to basis states evolve through the ``dim x dim`` population
    rate matrix; everything else goes through the dense matrix
    exponential of the superoperator.

    Args:
        spec: generator description
        rho (array): density matrix
        t (float): nonnegative time

    Returns:
        array[complex]: the evolved density matrix
    """
    if t < 0:
        raise ValueError("The evolution time must be nonnegative")
    ops, ham = _operator_list(spec)
    rho = np.asarray(rho, dtype=complex)
    dim = ops[0].shape[0]
    if rho.shape != (dim, dim):
        raise ValueError("The density matrix size must match the generator")

    scale = max(1.0, np.abs(np.diag(rho)).max())
    diagonal_input = np.abs(rho - np.diag(np.diag(rho))).max() <= 1e-14 * scale
    diagonal_ham = ham is None or np.abs(ham - np.diag(np.diag(ham))).max() == 0
    if diagonal_input and diagonal_ham and all(_monomial(l) for l in ops):
        p = np.real(np.diag(rho))
        return np.diag(expm(t * _population_rates(ops)) @ p).astype(complex)

    sup = superoperator_from_ops(ops, ham)
    out = (expm(t * sup) @ rho.reshape(-1)).reshape(dim, dim)
    return (out + out.conj().T) / 2


def two_mode_loss_example(cutoff=6):
    """Independent pure loss on two modes with incomparable outputs.

    Returns ``(ops, rho_passive, rho_column)``: the two local lowering
    operators on the product space, the uniform state on the six lowest
    total-energy levels (a passive state), and the uniform state on the
    six-level column spanned by the second mode alone. The outputs of the
    two states leave the majorization order at late times even though the
    inputs share their spectrum.
    """
    if cutoff < 6:
        raise ValueError("The per-mode cutoff must be at least 6")
    a = ladder(cutoff)
    eye = np.eye(cutoff)
    ops = [np.kron(a, eye), np.kron(eye, a)]

    passive = np.zeros((cutoff * cutoff, cutoff * cutoff), dtype=complex)
    for i in range(3):
        for j in range(3 - i):
            passive[i * cutoff + j, i * cutoff + j] = 1.0 / 6.0
    column = np.zeros_like(passive)
    for j in range(6):
        column[j, j] = 1.0 / 6.0
    return ops, passive, column


def two_mode_top_sums_exact(t):
    """Closed-form sums of the three largest output eigenvalues.

    Returns ``(s3_passive, s3_column)`` for the two states of
    :func:`two_mode_loss_example`; the curves cross at
    :data:`TWO_MODE_CROSSING_TIME`.
    """
    x = np.exp(-np.asarray(t, dtype=float))
    s3 = 1.0 - x**2 / 2.0
    s3_col = 1.0 - x**3 * (5.0 - 6.0 * x + 2.0 * x**2) / 2.0
    return s3, s3_col


def two_mode_top_one_exact(t):
    """Closed-form largest output eigenvalues, ``(p1_passive, p1_column)``."""
    x = np.exp(-np.asarray(t, dtype=float))
    p1 = (6.0 - 8.0 * x + 3.0 * x**2) / 6.0
    p1_col = (2.0 - x) * (3.0 - 3.0 * x + x**2) * (1.0 - x + x**2) / 6.0
    return p1, p1_col


def two_qubit_loss_example():
    """Two-qubit generator whose passive input loses optimality.

    Basis ordering by energy: ``|00>, |01>, |10>, |11>``. Returns
    ``(ops, rho_mixed, rho_a, rho_b)`` with the maximally mixed state and
    two rank-3 uniform states whose output top-1 and top-2 partial sums
    order oppositely for every positive time.
    """
    l1 = np.zeros((4, 4), dtype=complex)
    l1[0, 2] = 1.0
    l2 = np.zeros((4, 4), dtype=complex)
    l2[0, 1] = 1.0
    l2[1, 3] = np.sqrt(2.0)
    mixed = np.eye(4, dtype=complex) / 4.0
    rho_a = np.diag([1 / 3, 1 / 3, 1 / 3, 0]).astype(complex)
    rho_b = np.diag([1 / 3, 1 / 3, 0, 1 / 3]).astype(complex)
    return [l1, l2], mixed, rho_a, rho_b


def two_qubit_populations_exact(t):
    """Closed-form populations for :func:`two_qubit_loss_example`.

    Returns ``(p_mixed, p_a, p_b)``, each an array over the basis
    ``|00>, |01>, |10>, |11>`` (in the last axis for vector ``t``).
    """
    x = np.exp(-np.asarray(t, dtype=float))
    p_mixed = np.stack(
        [1 - x + x**2 / 4, x * (3 - 2 * x) / 4, x / 4, x**2 / 4], axis=-1
    )
    p_a = np.stack([1 - 2 * x / 3, x / 3, x / 3, np.zeros_like(x)], axis=-1)
    p_b = np.stack(
        [1 - x + x**2 / 3, x * (1 - 2 * x / 3), np.zeros_like(x), x**2 / 3], axis=-1
    )
    return p_mixed, p_a, p_b


def qubit_optical_bloch(x0, y0, z0, gamma0, nbar, t):
    """Bloch-vector solution of the qubit optical master equation.

    The transverse components decay at half the population rate
    ``gamma = gamma0 * (2 nbar + 1)`` and the inversion relaxes to
    ``z_inf = -1 / (2 nbar + 1)``.

    Args:
        x0, y0, z0 (float): initial Bloch vector, inside the unit ball
        gamma0 (float): spontaneous decay rate, positive
        nbar (float): thermal occupation of the bath, nonnegative
        t (float): nonnegative time

    Returns:
        tuple[array, float]: the Bloch vector at time ``t`` and the purity
        ``(1 + |v|^2) / 2``
    """
    if x0 * x0 + y0 * y0 + z0 * z0 > 1 + 1e-12:
        raise ValueError("The Bloch vector must lie in the unit ball")
    if gamma0 <= 0:
        raise ValueError("The decay rate must be positive")
    if nbar < 0:
        raise ValueError("The thermal occupation must be nonnegative")
    if t < 0:
        raise ValueError("The evolution time must be nonnegative")
    gamma = gamma0 * (2 * nbar + 1)
    z_inf = -1.0 / (2 * nbar + 1)
    decay = np.exp(-gamma * t)
    x = np.sqrt(decay) * x0
    y = np.sqrt(decay) * y0
    z = z_inf + decay * (z0 - z_inf)
    return np.array([x, y, z]), float((1 + x * x + y * y + z * z) / 2)
