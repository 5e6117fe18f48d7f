"""Numerical toolkit for continuous-variable bosonic channels.

Covers symplectic linear algebra on mode covariance matrices, Gaussian
channel actions and complete positivity tests, exact attenuator dynamics
on truncated Fock spaces, binomial thinning of photon-number
distributions, structured Lindblad generators, entropy-power style
inequalities, capacities of lossy channels with correlated memory, and
normal forms of Gaussian-to-Gaussian maps.
"""

__version__ = "0.1.0"
