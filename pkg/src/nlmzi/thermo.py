"""Work capacity (ergotropy) of photon number distributions.

For a diagonal field state with distribution p, the passive counterpart
rearranges the same probabilities in descending order; the work capacity

    W = <n> - <n>_passive

is the energy (in photon quanta, hbar omega = 1) unitarily extractable from
the state. The dispersion |Var(n) - Var_passive(n)| tracks the fluctuation
cost of that extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import fock
from .errors import DomainError
from .evolution import BlockEngine, sweep_distributions
from .operators import CrossPhase, Exchange, ProcessSpec

# negative work capacities can only be round-off: sorting minimizes the mean
_ROUNDOFF = 1e-14


@dataclass(frozen=True)
class ErgotropyReport:
    mean_energy: float
    passive_energy: float
    wc: float
    wc_dispersion: float
    efficiency: float  # nan when the input scale nbar was not supplied


def passive_distribution(p) -> np.ndarray:
    """Probabilities rearranged to descending order (stable in the index)."""
    p = np.asarray(p, dtype=float)
    order = np.argsort(-p, kind="stable")
    return p[order]


def wc_from_dist(p) -> float:
    """Work capacity <n> - <n>_passive of a distribution."""
    p = np.asarray(p, dtype=float)
    if p.size and p.min() < -1e-12:
        raise DomainError("negative probability %g in distribution" % p.min())
    w = fock.mean_photon(p) - fock.mean_photon(passive_distribution(p))
    if w < 0:
        if w < -_ROUNDOFF * max(1.0, p.size):
            raise DomainError("passive rearrangement increased the mean")
        w = 0.0
    return w


def wc_dispersion(p) -> float:
    """|Var(n) - Var_passive(n)| in photon quanta squared."""
    p = np.asarray(p, dtype=float)
    return abs(fock.variance(p) - fock.variance(passive_distribution(p)))


def ergotropy(p, nbar: Optional[float] = None) -> ErgotropyReport:
    """Full work-capacity report of a distribution.

    nbar, when given, is the input-side mean photon number used for the
    efficiency eta = W / nbar.
    """
    p = np.asarray(p, dtype=float)
    mean = fock.mean_photon(p)
    pas = fock.mean_photon(passive_distribution(p))
    w = wc_from_dist(p)
    eta = float("nan")
    if nbar is not None:
        eta = 0.0 if nbar == 0 else w / nbar
    return ErgotropyReport(mean_energy=mean, passive_energy=pas, wc=w,
                           wc_dispersion=wc_dispersion(p), efficiency=eta)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def wc_cross_kerr_closed_form(nbar: float, theta: float) -> float:
    """W(theta) for the cross-phase s=1 interferometer with thermal input:

        W = (nbar/4) (1 - 1 / (1 + nbar - nbar cos theta)^2).
    """
    if nbar < 0:
        raise DomainError("nbar must be >= 0")
    return (nbar / 4.0) * (1.0 - 1.0 / (1.0 + nbar - nbar * np.cos(theta)) ** 2)


def wc_table_oracle(process: ProcessSpec, nbar: float, theta: float):
    """Leading small-nbar work capacity, where a closed row exists.

    Cross-phase s=1:  nbar^2/(1+nbar)^3 sin^2(theta/2)
    Exchange k=2:     nbar^2/(1+nbar)^3 (sin^2 theta
                        + nbar/(4(1+nbar)) sin^2(2 sqrt(3) theta))
    Returns None for any other process; k=3 in particular has no clean
    single-expression row (its windowed forms live with the coherence
    scalings).
    """
    if nbar < 0:
        raise DomainError("nbar must be >= 0")
    lead = nbar ** 2 / (1.0 + nbar) ** 3
    if isinstance(process, CrossPhase) and process.s == 1:
        return lead * np.sin(theta / 2.0) ** 2
    if isinstance(process, Exchange) and process.k == 2:
        return lead * (np.sin(theta) ** 2
                       + nbar / (4.0 * (1.0 + nbar))
                       * np.sin(2.0 * np.sqrt(3.0) * theta) ** 2)
    return None


def wc_exchange3_windows(nbar: float, theta: float):
    """Leading small-nbar work capacity for 3-photon exchange.

    Defined piecewise on the windows where the passive reordering is
    analytically known:

      (4j+1) pi/12 < theta < (4j+3) pi/12:
          W = P_3 (3/4 sin^4(3 theta) - 3/16 sin^2(6 theta))
      (6j+5) pi/18 < theta < (6j+7) pi/18:
          W = P_3 (1/16 sin^2(6 theta) - 3/4 sin^4(3 theta))

    Returns None outside both window families (both may apply; the
    applicable positive branch is returned).
    """
    p3 = nbar ** 3 / (1.0 + nbar) ** 4
    s3 = np.sin(3.0 * theta)
    s6 = np.sin(6.0 * theta)
    x = theta / np.pi
    frac12 = (12.0 * x) % 4.0
    if 1.0 < frac12 < 3.0:
        return p3 * (0.75 * s3 ** 4 - (3.0 / 16.0) * s6 ** 2)
    frac18 = (18.0 * x - 5.0) % 6.0  # window (6j+5, 6j+7) wraps mod 6
    if 0.0 < frac18 < 2.0:
        return p3 * ((1.0 / 16.0) * s6 ** 2 - 0.75 * s3 ** 4)
    return None


# ---------------------------------------------------------------------------
# sweeps and saturation scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    thetas: np.ndarray
    wc: np.ndarray
    eta: np.ndarray
    wc_dispersion: np.ndarray
    mean_a: np.ndarray
    mean_b: np.ndarray
    odd_mass: np.ndarray
    tail_mass: float


def wc_sweep(process: ProcessSpec, nbar: float, thetas,
             tail_tol: float = 1e-12,
             engine: Optional[BlockEngine] = None) -> SweepResult:
    """Work capacity and companions across a theta grid (vectorized)."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    da, db, P = sweep_distributions(process, nbar, thetas, tail_tol, engine)
    n = np.arange(da.shape[0], dtype=float)
    mean_a = n @ da
    mean_b = n @ db
    srt = np.sort(da, axis=0)[::-1]
    pas_mean = n @ srt
    w = np.clip(mean_a - pas_mean, 0.0, None)
    var = (n * n) @ da - mean_a ** 2
    pas_var = (n * n) @ srt - pas_mean ** 2
    disp = np.abs(var - pas_var)
    odd = da[1::2].sum(axis=0)
    eta = w / nbar if nbar > 0 else np.zeros_like(w)
    return SweepResult(thetas=thetas, wc=w, eta=eta, wc_dispersion=disp,
                       mean_a=mean_a, mean_b=mean_b, odd_mass=odd,
                       tail_mass=fock.thermal_tail_mass(nbar, P.size - 1))


def max_efficiency(process: ProcessSpec, nbar: float, theta_max: float,
                   grid: int = 200, tail_tol: float = 1e-12,
                   engine: Optional[BlockEngine] = None,
                   xtol: float = 1e-5) -> Tuple[float, float]:
    """(eta_max, theta_star) over theta in [0, theta_max].

    Coarse grid scan followed by bracket refinement around the best grid
    point. A sweep evaluating a dozen angles through the cached spectral
    factorizations costs barely more than evaluating one (the cache
    streaming dominates), so each refinement round re-grids the bracket
    instead of bisecting point by point.
    """
    if grid < 100:
        raise DomainError("grid must be >= 100 for a trustworthy coarse scan")
    if nbar == 0:
        return 0.0, 0.0
    eng = engine if engine is not None else BlockEngine(process)
    thetas = np.linspace(0.0, theta_max, grid)
    res = wc_sweep(process, nbar, thetas, tail_tol, eng)
    i = int(np.argmax(res.wc))
    step = thetas[1] - thetas[0] if grid > 1 else theta_max
    theta_star, w_star = float(thetas[i]), float(res.wc[i])

    lo = max(0.0, theta_star - step)
    hi = min(theta_max, theta_star + step)
    while hi - lo > xtol:
        sub = np.linspace(lo, hi, 13)
        w = wc_sweep(process, nbar, sub, tail_tol, eng).wc
        j = int(np.argmax(w))
        if w[j] > w_star:
            theta_star, w_star = float(sub[j]), float(w[j])
        lo, hi = sub[max(j - 1, 0)], sub[min(j + 1, sub.size - 1)]
    return w_star / nbar, theta_star
