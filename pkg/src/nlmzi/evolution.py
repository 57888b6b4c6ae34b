"""Exact unitary evolution of the nonlinear two-mode interferometer.

Everything here is block-diagonal in the conserved total photon number N.
The interferometer unitary on block N is

    U(N, theta) = U_BS  exp(-i theta  g_N)  U_BS,

with g_N the nonlinear-arm generator on the block and theta = chi t (cross
phase) or g t (exchange) the single dimensionless knob swept everywhere.
The input |N, 0> enters as the closed-form first splitter column, the
nonlinear phase is applied in the generator eigenbasis, and the second
splitter is applied through the factorized J_x eigendecomposition, so one
spectral factorization per block serves every theta in a sweep.

A small generic engine (connected-component enumeration plus dense
eigendecomposition) covers non-block Hamiltonians such as parametric
down-conversion, where photons change modes in unequal numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.linalg import eig_banded, eigh

from . import fock
from .errors import ConfigurationError, DomainError
from .operators import (CrossPhase, DegeneratePDC, Exchange, Hybrid,
                        NonDegeneratePDC, ProcessSpec, _jx_factorization,
                        beam_splitter_unitary, process_generator,
                        splitter_input_column)

HERMITICITY_TOL = 1e-12
REDUCED_OFFDIAG_TOL = 1e-10
DEFAULT_DIM_GUARD = 4096


# ---------------------------------------------------------------------------
# dense helpers
# ---------------------------------------------------------------------------

def hermitian_eig(op: np.ndarray):
    """Eigendecomposition of a Hermitian block operator.

    Returns (eigenvalues ascending, unitary eigenvector matrix); delegates
    to LAPACK's Householder tridiagonalization + implicit QL solver, which
    is the right tool at these block sizes.
    """
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise DomainError("operator must be a square matrix")
    if np.abs(op - op.conj().T).max() > HERMITICITY_TOL:
        raise DomainError("operator is not Hermitian within %g" % HERMITICITY_TOL)
    w, V = eigh(op)
    return w, V


def unitary_of(op: np.ndarray, theta: float) -> np.ndarray:
    """exp(-i theta op) for Hermitian op, via the eigendecomposition."""
    if not np.isfinite(theta):
        raise DomainError("theta must be finite")
    w, V = hermitian_eig(op)
    return (V * np.exp(-1j * theta * w)) @ V.conj().T


def mzi_unitary(process: ProcessSpec, t: float, N: int) -> np.ndarray:
    """Full interferometer unitary U_BS exp(-i t strength g_N) U_BS on block N."""
    if isinstance(process, (DegeneratePDC, NonDegeneratePDC)):
        raise ConfigurationError(
            "%s is not a block-diagonal interferometer arm; "
            "use generic_evolve" % type(process).__name__)
    B = beam_splitter_unitary(N)
    gen = process_generator(process, N)
    theta = t * process.strength
    if isinstance(process, CrossPhase):
        U_nl = np.diag(np.exp(-1j * theta * np.real(np.diag(gen))))
    else:
        U_nl = unitary_of(gen, theta)
    return B @ U_nl @ B


# ---------------------------------------------------------------------------
# block engine: one spectral factorization per block, any number of thetas
# ---------------------------------------------------------------------------

class BlockEngine:
    """Caches per-block factorizations of one process family.

    probs(N, thetas) returns the (N+1, T) matrix of occupation
    probabilities |<N-j, j| U(theta) |N, 0>|^2; output_state(N, theta)
    returns the amplitude vector itself.
    """

    def __init__(self, process: ProcessSpec):
        if isinstance(process, (DegeneratePDC, NonDegeneratePDC)):
            raise ConfigurationError(
                "%s needs the generic engine" % type(process).__name__)
        self.process = process
        self._blocks: Dict[int, tuple] = {}

    def _build(self, N: int):
        mu, Vx = _jx_factorization(N)
        ph = np.exp(-0.5j * np.pi * mu)
        c0 = splitter_input_column(N)
        if isinstance(self.process, CrossPhase):
            j = np.arange(N + 1, dtype=float)
            lam = ((N - j) * j) ** self.process.s
            self._blocks[N] = (Vx, ph, lam, c0, None)
            return
        gen = process_generator(self.process, N)
        if isinstance(self.process, Exchange) and N >= 1:
            k = self.process.k
            if N < k:
                self._blocks[N] = (Vx, ph, np.zeros(N + 1), c0, None)
                return
            # symmetric banded form: only the j <-> j-k couplings exist
            bands = np.zeros((k + 1, N + 1))
            bands[k, : N + 1 - k] = np.real(gen[np.arange(k, N + 1) - k,
                                                np.arange(k, N + 1)])
            lam, V = eig_banded(bands, lower=True)
        else:
            lam, V = np.linalg.eigh(np.real(gen))
        # fold the second splitter's rotation into the generator eigenbasis
        # once, so each sweep is two multiplications instead of three
        M = np.ascontiguousarray(Vx.T @ V)
        self._blocks[N] = (Vx, ph, lam, V.T @ c0, M)

    def _factor(self, N: int):
        if N not in self._blocks:
            self._build(N)
        return self._blocks[N]

    def amplitudes(self, N: int, thetas) -> np.ndarray:
        """Output amplitudes, shape (N+1, len(thetas))."""
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        if N == 0:
            return np.ones((1, thetas.size), dtype=complex)
        Vx, ph, lam, y, M = self._factor(N)
        Z = np.exp(-1j * np.outer(lam, thetas)) * y[:, None]
        Z = (Vx.T if M is None else M) @ Z
        Z *= ph[:, None]
        return Vx @ Z

    def probs(self, N: int, thetas) -> np.ndarray:
        return np.abs(self.amplitudes(N, thetas)) ** 2

    def output_state(self, N: int, theta: float) -> np.ndarray:
        return self.amplitudes(N, [theta])[:, 0]


def mzi_output(process: ProcessSpec, t: float, nbar: float,
               tail_tol: float = 1e-12, engine: BlockEngine | None = None):
    """Thermal-input interferometer output marginals (dist_a, dist_b).

    Evolves |N, 0> on every retained block, weights by the thermal P_N and
    reduces to the two single-mode distributions. Evolution is exact per
    block; the only approximation is the input tail cut.
    """
    if not np.isfinite(t):
        raise DomainError("t must be finite")
    P = fock.thermal_distribution(nbar, tail_tol)
    eng = engine if engine is not None else BlockEngine(process)
    theta = t * process.strength
    weighted = [(P[N], eng.output_state(N, theta)) for N in range(P.size)]
    return fock.reduce_mode_a(weighted), fock.reduce_mode_b(weighted)


def sweep_distributions(process: ProcessSpec, nbar: float, thetas,
                        tail_tol: float = 1e-12,
                        engine: BlockEngine | None = None):
    """Output distributions across a theta grid in one pass.

    Returns (dist_a, dist_b, input_probs): dist_a[n, i] is the mode-a
    probability of n photons at thetas[i] (dist_b likewise); thetas are the
    dimensionless angles chi t or g t.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    P = fock.thermal_distribution(nbar, tail_tol)
    M = P.size
    eng = engine if engine is not None else BlockEngine(process)
    da = np.zeros((M, thetas.size))
    db = np.zeros((M, thetas.size))
    for N in range(M):
        pb = eng.probs(N, thetas)
        np.add.at(da, N - np.arange(N + 1), P[N] * pb)
        db[: N + 1] += P[N] * pb
    return da, db, P


# ---------------------------------------------------------------------------
# generic ladder-monomial engine (parametric processes)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenericSystem:
    """Truncated multi-mode system with a ladder-monomial Hamiltonian.

    cutoffs[m] is the highest retained occupation of mode m. Each term is
    (coefficient, powers) with powers[m] = (creation, annihilation)
    exponents on mode m; the term list must be closed under Hermitian
    conjugation.
    """
    cutoffs: Tuple[int, ...]
    terms: Tuple[Tuple[complex, Tuple[Tuple[int, int], ...]], ...]
    dim_guard: int = DEFAULT_DIM_GUARD

    def __post_init__(self):
        for c in self.cutoffs:
            if c < 0:
                raise DomainError("cutoffs must be >= 0")
        for coeff, powers in self.terms:
            if len(powers) != len(self.cutoffs):
                raise DomainError("term arity does not match mode count")
            conj = (np.conj(coeff), tuple((a, c) for c, a in powers))
            ok = any(abs(conj[0] - c2) < 1e-15 and conj[1] == p2
                     for c2, p2 in self.terms)
            if not ok:
                raise DomainError(
                    "Hamiltonian not Hermitian: missing conjugate of %r" % (powers,))


def _apply_term(state, coeff, powers, cutoffs):
    """coeff * prod_m a_m+^cre a_m^ann applied to a Fock product state.

    Returns (amplitude, new state) or None when annihilation underflows or
    creation leaves the truncation window.
    """
    amp = coeff
    out = list(state)
    for m, (cre, ann) in enumerate(powers):
        n = out[m]
        if ann:
            if n < ann:
                return None
            for i in range(ann):
                amp *= np.sqrt(n - i)
            n -= ann
        if cre:
            if n + cre > cutoffs[m]:
                return None
            for i in range(cre):
                amp *= np.sqrt(n + 1 + i)
            n += cre
        out[m] = n
    return amp, tuple(out)


class GenericEngine:
    """Connected-component evolution for a GenericSystem.

    Each initial Fock product state only couples to the states reachable
    through the Hamiltonian terms, which for the parametric processes is a
    short ladder, never the full tensor space. Components and their dense
    eigendecompositions are cached so time sweeps are cheap.
    """

    def __init__(self, system: GenericSystem):
        self.system = system
        self._components: Dict[tuple, tuple] = {}

    def _component(self, initial: tuple):
        if initial in self._components:
            return self._components[initial]
        sys = self.system
        seen = {initial: 0}
        order = [initial]
        stack = [initial]
        while stack:
            st = stack.pop()
            for coeff, powers in sys.terms:
                r = _apply_term(st, coeff, powers, sys.cutoffs)
                if r is not None and r[1] not in seen:
                    if len(order) >= sys.dim_guard:
                        raise ConfigurationError(
                            "reachable state set exceeds the dimension guard %d"
                            % sys.dim_guard)
                    seen[r[1]] = len(order)
                    order.append(r[1])
                    stack.append(r[1])
        H = np.zeros((len(order), len(order)), dtype=complex)
        for i, st in enumerate(order):
            for coeff, powers in sys.terms:
                r = _apply_term(st, coeff, powers, sys.cutoffs)
                if r is not None:
                    H[seen[r[1]], i] += r[0]
        if np.abs(H - H.conj().T).max() > HERMITICITY_TOL:
            raise DomainError("assembled Hamiltonian is not Hermitian")
        w, V = eigh(H)
        self._components[initial] = (order, w, V)
        return self._components[initial]

    def evolve(self, initial: tuple, t: float):
        """Amplitudes over the component basis after time t from |initial>."""
        order, w, V = self._component(initial)
        psi0 = np.zeros(len(order), dtype=complex)
        psi0[0] = 1.0
        return order, V @ (np.exp(-1j * w * t) * (V.conj().T @ psi0))

    def mode_distributions(self, initial: tuple, t: float) -> List[np.ndarray]:
        """Per-mode photon distributions of the evolved pure state.

        The reduced state of each mode is checked to be numerically
        diagonal (the parametric Hamiltonians conserve enough charges to
        guarantee it); a violation raises rather than silently dropping
        coherences.
        """
        order, psi = self.evolve(initial, t)
        nm = len(self.system.cutoffs)
        dists = [np.zeros(c + 1) for c in self.system.cutoffs]
        for m in range(nm):
            rest_groups: Dict[tuple, list] = {}
            for i, st in enumerate(order):
                rest_groups.setdefault(st[:m] + st[m + 1:], []).append(i)
            for idxs in rest_groups.values():
                for u in range(len(idxs)):
                    for v in range(u + 1, len(idxs)):
                        off = abs(psi[idxs[u]] * np.conj(psi[idxs[v]]))
                        if off > REDUCED_OFFDIAG_TOL:
                            raise ConfigurationError(
                                "reduced state of mode %d has off-diagonal "
                                "weight %g" % (m, off))
            for i, st in enumerate(order):
                dists[m][st[m]] += np.abs(psi[i]) ** 2
        return dists


def generic_evolve(system: GenericSystem, initial, t: float) -> List[np.ndarray]:
    """Evolve a mixture of Fock product states and return per-mode
    distributions.

    initial: either a single occupation tuple or an iterable of
    (weight, occupation tuple) pairs (e.g. a thermal pump tensored with
    vacuum in the other modes).
    """
    if isinstance(initial, tuple):
        initial = [(1.0, initial)]
    eng = GenericEngine(system)
    dists = [np.zeros(c + 1) for c in system.cutoffs]
    for w, occ in initial:
        if w < 0:
            raise DomainError("negative mixture weight")
        if w == 0:
            continue
        part = eng.mode_distributions(tuple(occ), t)
        for m in range(len(dists)):
            dists[m] += w * part[m]
    return dists


# ---------------------------------------------------------------------------
# parametric down-conversion front ends
# ---------------------------------------------------------------------------

def pdc_system(process, nbar: float, tail_tol: float = 1e-12):
    """(GenericSystem, pump mixture) for a PDC variant with a thermal pump.

    Non-degenerate: modes (pump, signal, idler), signal/idler cutoffs equal
    the pump cutoff. Degenerate: modes (pump, signal) with signal cutoff
    twice the pump cutoff, since each converted pump photon makes a pair.
    """
    P = fock.thermal_distribution(nbar, tail_tol)
    cut = P.size - 1
    if isinstance(process, NonDegeneratePDC):
        g = process.g
        system = GenericSystem(
            cutoffs=(cut, cut, cut),
            terms=((g, ((0, 1), (1, 0), (1, 0))),
                   (g, ((1, 0), (0, 1), (0, 1)))))
        initial = [(P[n], (n, 0, 0)) for n in range(P.size)]
    elif isinstance(process, DegeneratePDC):
        g = process.g
        system = GenericSystem(
            cutoffs=(cut, 2 * cut),
            terms=((g, ((0, 1), (2, 0))),
                   (g, ((1, 0), (0, 2)))))
        initial = [(P[n], (n, 0)) for n in range(P.size)]
    else:
        raise ConfigurationError("pdc_system needs a PDC process spec")
    return system, initial


def pdc_signal_sweep(process, nbar: float, gts, tail_tol: float = 1e-12):
    """Signal-mode distributions across a g t grid, one column per point."""
    system, initial = pdc_system(process, nbar, tail_tol)
    gts = np.atleast_1d(np.asarray(gts, dtype=float))
    eng = GenericEngine(system)
    sig = np.zeros((system.cutoffs[1] + 1, gts.size))
    for i, gt in enumerate(gts):
        for w, occ in initial:
            sig[:, i] += w * eng.mode_distributions(tuple(occ), gt)[1]
    return sig
