"""
How the peak efficiency scales with input brightness
====================================================

For the cross-phase arm the best-case efficiency eta_max = W_max / nbar
climbs toward 1/4 as the input gets brighter. For k-photon exchange the
efficiency instead falls off as 1/nbar, so the product eta_max * nbar is
the quantity that settles to a constant. This script scans a few input
strengths for both behaviours; trimming the thermal tail keeps the bright
cross-phase points affordable.
"""

import numpy as np

from nlmzi import thermo
from nlmzi.operators import CrossPhase, Exchange


def main():
    print("cross-phase: eta_max vs nbar (limit 1/4)")
    print("%8s %12s %12s" % ("nbar", "eta_max", "theta*"))
    for nbar, tail in ((0.5, 1e-12), (2.0, 1e-12), (10.0, 1e-8),
                       (40.0, 1e-4)):
        eta, th = thermo.max_efficiency(CrossPhase(s=1), nbar, 2.0 * np.pi,
                                        grid=100, tail_tol=tail)
        print("%8.1f %12.6f %12.6f" % (nbar, eta, th))
    # the closed form says eta_max = (1/4)(1 - 1/(1+2 nbar)^2) exactly at
    # theta = pi, so the table above is also an end-to-end pipeline check
    print()

    # for exchange arms the peak W stops growing with nbar, so eta decays
    # roughly as 1/nbar; the product eta_max * nbar drifts down toward a
    # constant of order 0.4 (k=2) and 0.2 (k=3). The peak is a narrow,
    # quasi-periodic spike, so the scan window and grid are part of the
    # measurement protocol and are held fixed across rows here.
    print("exchange: eta decays, eta_max * nbar approaches a constant")
    print("%4s %8s %12s %14s" % ("k", "nbar", "eta_max", "eta_max * nbar"))
    for k in (2, 3):
        for nbar in (5.0, 10.0, 20.0):
            eta, _ = thermo.max_efficiency(Exchange(k=k), nbar, 100.0,
                                           grid=2000, tail_tol=1e-5)
            print("%4d %8.1f %12.6f %14.6f" % (k, nbar, eta, eta * nbar))


if __name__ == "__main__":
    main()
