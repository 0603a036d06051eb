# SPDX-License-Identifier: Apache-2.0
"""q(|k|) = tau^{d-1} int_{S^{d-1}} exp(-2 tau |k| (1 + <khat, w>)) dw.

d = 2 by the modified Bessel closed form and by direct angular quadrature;
d >= 3 by polar-angle quadrature.
"""
import mpmath as mp

mp.mp.dps = 30


def sphere_area(n):
    """Area of the unit sphere S^{n-1} in R^n."""
    return 2 * mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2)


def q_bessel_d2(tau, k):
    z = 2 * tau * k
    return 2 * mp.pi * tau * mp.e ** (-z) * mp.besseli(0, z)


def q_angle_d2(tau, k):
    z = 2 * tau * k
    return tau * mp.quad(lambda a: mp.e ** (-z * (1 + mp.cos(a))), mp.linspace(0, 2 * mp.pi, 9))


def q_polar(d, tau, k):
    z = 2 * tau * k
    f = lambda th: mp.e ** (-z * (1 + mp.cos(th))) * mp.sin(th) ** (d - 2)
    return tau ** (d - 1) * sphere_area(d - 1) * mp.quad(f, mp.linspace(0, mp.pi, 17))


def main():
    tau = mp.mpf("0.5")
    print("d=2 k=0:", mp.nstr(q_bessel_d2(tau, 0), 20))
    print("d=2 k=50 bessel:", mp.nstr(q_bessel_d2(tau, 50), 20))
    print("d=2 k=50 angle :", mp.nstr(q_angle_d2(tau, 50), 20))
    for k in (50, 100, 200):
        q = q_bessel_d2(tau, k)
        print(f"d=2 k={k} normalized:", mp.nstr(q * (k / (mp.pi * tau)) ** mp.mpf("0.5"), 20))
    print("d=3 k=200:", mp.nstr(q_polar(3, tau, 200), 20))
    print("d=4 k=30:", mp.nstr(q_polar(4, tau, 30), 20))


if __name__ == "__main__":
    main()
