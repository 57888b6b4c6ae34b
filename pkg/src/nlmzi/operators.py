"""Block operators for two-mode nonlinear interferometry.

All operators act on the total-photon-number block N with basis
|n_a = N - j, n_b = j>, j = 0..N (see fock.py), and are returned as dense
(N+1) x (N+1) complex arrays. Stokes operators

    J_x = (a+ b + a b+)/2,  J_y = -i (a+ b - a b+)/2,  J_z = (n_a - n_b)/2

generate the linear optics; the nonlinear arm is either a cross-phase
coupling (n_a n_b)^s or a k-photon exchange a+^k b^k + a^k b+^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .errors import ConfigurationError, DomainError

# the exchange hierarchy converges fast; orders beyond 4 are physically
# negligible and need an explicit opt-in
EXCHANGE_ORDER_GUARD = 4


# ---------------------------------------------------------------------------
# process taxonomy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossPhase:
    """Cross-phase process exp(-i chi t (n_a n_b)^s) in one arm."""
    s: int = 1
    chi: float = 1.0

    def __post_init__(self):
        if self.s < 1 or int(self.s) != self.s:
            raise DomainError("cross-phase order s must be a positive integer")

    @property
    def strength(self) -> float:
        return self.chi


@dataclass(frozen=True)
class Exchange:
    """k-photon exchange exp(-i g t (a+^k b^k + a^k b+^k))."""
    k: int = 2
    g: float = 1.0
    allow_high_order: bool = False

    def __post_init__(self):
        if self.k < 1 or int(self.k) != self.k:
            raise DomainError("exchange order k must be a positive integer")
        if self.k > EXCHANGE_ORDER_GUARD and not self.allow_high_order:
            raise ConfigurationError(
                "exchange order k=%d exceeds the default guard k<=%d; "
                "pass allow_high_order=True to override" % (self.k, EXCHANGE_ORDER_GUARD))

    @property
    def strength(self) -> float:
        return self.g


@dataclass(frozen=True)
class Hybrid:
    """Weighted sum of cross-phase and exchange generators in one arm."""
    terms: Tuple[Tuple[float, Union[CrossPhase, Exchange]], ...]
    strength: float = 1.0

    def __post_init__(self):
        if len(self.terms) == 0:
            raise DomainError("hybrid process needs at least one term")


@dataclass(frozen=True)
class DegeneratePDC:
    """Pump photon -> signal photon pair: g (a_p a_s+^2 + a_p+ a_s^2)."""
    g: float = 1.0


@dataclass(frozen=True)
class NonDegeneratePDC:
    """Pump photon -> signal + idler: g (a_p a_s+ a_i+ + a_p+ a_s a_i)."""
    g: float = 1.0


ProcessSpec = Union[CrossPhase, Exchange, Hybrid, DegeneratePDC, NonDegeneratePDC]


# ---------------------------------------------------------------------------
# block matrices
# ---------------------------------------------------------------------------

def stokes(N: int, axis: str) -> np.ndarray:
    """Stokes (pseudospin) operator J_axis on block N.

    J_z is diagonal with entries (N - 2j)/2; J_x and J_y couple j <-> j+1
    with the usual spin-(N/2) ladder elements.
    """
    if N < 0:
        raise DomainError("block label N must be >= 0")
    j = np.arange(N, dtype=float)
    # <j+1| a b+ |j> = sqrt((N - j)(j + 1))
    e = 0.5 * np.sqrt((N - j) * (j + 1))
    M = np.zeros((N + 1, N + 1), dtype=complex)
    if axis == "x":
        M[np.arange(N), np.arange(1, N + 1)] = e
        M[np.arange(1, N + 1), np.arange(N)] = e
    elif axis == "y":
        M[np.arange(N), np.arange(1, N + 1)] = -1j * e
        M[np.arange(1, N + 1), np.arange(N)] = 1j * e
    elif axis == "z":
        M[np.diag_indices(N + 1)] = (N - 2 * np.arange(N + 1)) / 2.0
    else:
        raise DomainError("axis must be one of 'x', 'y', 'z'")
    return M


def two_mode_monomial(N: int, ap: int, am: int, bp: int, bm: int) -> np.ndarray:
    """Matrix of a+^ap a^am b+^bp b^bm on block N.

    Only number-conserving monomials (ap - am + bp - bm = 0) stay on the
    block; anything else is the zero matrix here. Handy for operator
    identity checks.
    """
    M = np.zeros((N + 1, N + 1), dtype=complex)
    if ap - am + bp - bm != 0:
        return M
    for j in range(N + 1):
        na, nb = N - j, j
        if nb < bm or na < am:
            continue
        amp = 1.0
        for i in range(bm):
            amp *= np.sqrt(nb - i)
        nb2 = nb - bm + bp
        for i in range(bp):
            amp *= np.sqrt(nb - bm + 1 + i)
        for i in range(am):
            amp *= np.sqrt(na - i)
        na2 = na - am + ap
        for i in range(ap):
            amp *= np.sqrt(na - am + 1 + i)
        if na2 < 0 or nb2 < 0 or na2 + nb2 != N:
            continue
        M[nb2, j] = amp
    return M


def cross_phase_generator(N: int, s: int = 1) -> np.ndarray:
    """Diagonal generator (n_a n_b)^s on block N: entries ((N - j) j)^s."""
    if N < 0 or s < 1:
        raise DomainError("need N >= 0 and s >= 1")
    j = np.arange(N + 1, dtype=float)
    return np.diag(((N - j) * j) ** s).astype(complex)


def exchange_generator(N: int, k: int, allow_high_order: bool = False) -> np.ndarray:
    """Generator a+^k b^k + a^k b+^k on block N.

    Couples j <-> j - k with element sqrt((N-j+k)!/(N-j)! * j!/(j-k)!);
    blocks with N < k cannot exchange and give the zero matrix.
    """
    if N < 0 or k < 1:
        raise DomainError("need N >= 0 and k >= 1")
    if k > EXCHANGE_ORDER_GUARD and not allow_high_order:
        raise ConfigurationError(
            "exchange order k=%d exceeds the default guard k<=%d; "
            "pass allow_high_order=True to override" % (k, EXCHANGE_ORDER_GUARD))
    M = np.zeros((N + 1, N + 1), dtype=complex)
    if N < k:
        return M
    j = np.arange(k, N + 1, dtype=float)
    val = np.exp(0.5 * (gammaln(N - j + k + 1) - gammaln(N - j + 1))
                 + 0.5 * (gammaln(j + 1) - gammaln(j - k + 1)))
    M[(np.arange(k, N + 1) - k), np.arange(k, N + 1)] = val
    M[np.arange(k, N + 1), (np.arange(k, N + 1) - k)] = val
    return M


def hybrid_generator(N: int, terms) -> np.ndarray:
    """Weighted sum of cross-phase / exchange generators; Hermitian by
    construction."""
    terms = list(terms)
    if not terms:
        raise DomainError("hybrid generator needs at least one term")
    M = np.zeros((N + 1, N + 1), dtype=complex)
    for coeff, spec in terms:
        if isinstance(spec, CrossPhase):
            M += coeff * cross_phase_generator(N, spec.s)
        elif isinstance(spec, Exchange):
            M += coeff * exchange_generator(N, spec.k, spec.allow_high_order)
        else:
            raise DomainError("hybrid terms must be CrossPhase or Exchange specs")
    return M


def process_generator(process: ProcessSpec, N: int) -> np.ndarray:
    """Dense nonlinear-arm generator for a process on block N."""
    if isinstance(process, CrossPhase):
        return cross_phase_generator(N, process.s)
    if isinstance(process, Exchange):
        return exchange_generator(N, process.k, process.allow_high_order)
    if isinstance(process, Hybrid):
        return hybrid_generator(N, process.terms)
    raise ConfigurationError(
        "%s has no block generator; use evolution.generic_evolve"
        % type(process).__name__)


# ---------------------------------------------------------------------------
# beam splitter
# ---------------------------------------------------------------------------

def _jx_factorization(N: int):
    """Eigendecomposition J_x = V diag(mu) V^T on block N.

    J_x is a real symmetric tridiagonal matrix with exactly half-integer
    spectrum mu = -N/2 .. N/2; the computed eigenvalues are snapped onto
    that grid so repeated propagator applications stay exactly unitary.
    """
    if N == 0:
        return np.ones(1), np.ones((1, 1))
    j = np.arange(N, dtype=float)
    e = 0.5 * np.sqrt((N - j) * (j + 1))
    mu, V = eigh_tridiagonal(np.zeros(N + 1), e)
    mu = np.round(2.0 * mu) / 2.0
    return mu, V


def beam_splitter_unitary(N: int) -> np.ndarray:
    """50:50 beam splitter U_BS = exp(-i (pi/2) J_x) on block N.

    Convention a -> (a - i b)/sqrt(2); on N = 1 this is
    [[1, -i], [-i, 1]]/sqrt(2). This sign choice is what makes the
    nonlinear-arm conjugation identities (tested in the suite) come out
    with the signs used throughout.
    """
    if N < 0:
        raise DomainError("block label N must be >= 0")
    mu, V = _jx_factorization(N)
    if N == 0:
        return np.ones((1, 1), dtype=complex)
    ph = np.exp(-0.5j * np.pi * mu)
    return (V * ph) @ V.T


def splitter_input_column(N: int) -> np.ndarray:
    """First column of U_BS on block N, i.e. U_BS |N, 0>.

    Closed form (-i)^j sqrt(C(N, j) / 2^N); evaluated through gammaln so
    large blocks neither overflow nor lose the binomial envelope.
    """
    m = np.arange(N + 1)
    mag = np.exp(0.5 * (gammaln(N + 1) - gammaln(m + 1) - gammaln(N - m + 1))
                 - 0.5 * N * np.log(2.0))
    return (-1j) ** (m % 4) * mag
