# SPDX-License-Identifier: Apache-2.0
"""Closed-form prediction values, lattice counts and volumes, re-derived
independently of the library."""
import math

import mpmath as mp

mp.mp.dps = 30


def diag_p_cyclic():
    # d = 2, finite cyclic group of order m = 3 acting freely, tau = 0.5,
    # lambda = 400, chi(0) = 1.  Pi modulus: (2 pi)^{-1/2} (lambda / 2 pi tau)^{d-1}
    # chi(0) / (r V), r = 1 (free point), V = m (counting measure).
    d, m, tau, lam = 2, 3, mp.mpf("0.5"), mp.mpf(400)
    pi_mod = (2 * mp.pi) ** mp.mpf("-0.5") * (lam / (2 * mp.pi * tau)) ** (d - 1) / m
    p_mod = pi_mod * (lam / (mp.pi * tau)) ** (-mp.mpf(d - 1) / 2)
    return pi_mod, p_mod


def count_disc(r):
    """Lattice points of Z^2 with |k| <= r, by direct enumeration."""
    m = int(math.floor(r))
    return sum(1 for a in range(-m, m + 1) for b in range(-m, m + 1) if a * a + b * b <= r * r)


def main():
    pi_mod, p_mod = diag_p_cyclic()
    print("diag Pi d=2 Z3 tau=0.5 lambda=400:", mp.nstr(pi_mod, 20))
    print("diag P  d=2 Z3 tau=0.5 lambda=400:", mp.nstr(p_mod, 20))
    print("trivial d=2 tau=0.5 lambda=400 Pi:", mp.nstr((2 * mp.pi) ** mp.mpf("-0.5") * 400 / mp.pi, 20))
    c = count_disc(100)
    print("lattice points |k|<=100, d=2:", c, " pi*100^2 =", math.pi * 1e4, " rel:", c / (math.pi * 1e4) - 1)
    print("lattice points |k|<=1.5, d=2:", count_disc(1.5))
    # Quotient volume for d = 2, S^1 on e1, tau = 1: Z = T^2 x {(0, +-1)}, area (2 pi)^2 each,
    # orbit length in kappa-tilde = 2 pi sqrt(1/2).
    print("quotient volume d=2 S1 tau=1:", mp.nstr(2 * (2 * mp.pi) ** 2 / (2 * mp.pi * mp.sqrt(mp.mpf(1) / 2)), 20))
    # d = 3, S^1 on e1, tau: Z = T^3 x circle of radius tau in the (p2, p3) plane.
    for tau in ("0.5", "1"):
        t = mp.mpf(tau)
        v = (2 * mp.pi) ** 3 * 2 * mp.pi * t / (2 * mp.pi * mp.sqrt(mp.mpf(1) / 2))
        print(f"quotient volume d=3 S1 tau={tau}:", mp.nstr(v, 20))
    # Poisson Weyl prediction, d = 3, d_G = 1, tau = 0.5, lambda = 400:
    # 2^{-(d+1+d_G)/2} pi^{-1} (lambda / 2 pi tau)^{(d-1)/2 - d_G} vol(Z/G) lambda / ((d+1)/2 - d_G).
    d, dg, t, lam = 3, 1, mp.mpf("0.5"), mp.mpf(400)
    vol = (2 * mp.pi) ** 3 * 2 * mp.pi * t / (2 * mp.pi * mp.sqrt(mp.mpf(1) / 2))
    w = 2 ** (-mp.mpf(d + 1 + dg) / 2) / mp.pi * (lam / (2 * mp.pi * t)) ** (mp.mpf(d - 1) / 2 - dg) * vol * lam / (
        mp.mpf(d + 1) / 2 - dg)
    print("weyl poisson d=3 S1 tau=0.5 lambda=400:", mp.nstr(w, 20), " = 2 pi^2 tau lambda:", mp.nstr(2 * mp.pi ** 2 * t * lam, 20))


if __name__ == "__main__":
    main()
