# SPDX-License-Identifier: Apache-2.0
"""Cutoff transforms by direct high-precision quadrature.

chi_hat(s) = (2 pi)^{-1/2} int e^{-i s t} chi(t) dt, bump b(t) = exp(-1/(1-(t/eps)^2)),
autocorrelated chi = (b * b) / int b^2 (so chi(0) = 1).
"""
import mpmath as mp

mp.mp.dps = 30


def bump(t, eps):
    u = t / eps
    return mp.e ** (-1 / (1 - u * u)) if abs(u) < 1 else mp.mpf(0)


def bump_hat(s, eps):
    f = lambda t: bump(t, eps) * mp.cos(s * t)
    pts = mp.linspace(0, eps, 2 + int(abs(s) * eps / 2))
    return 2 * mp.quad(f, pts) / mp.sqrt(2 * mp.pi)


def bump_l2(eps):
    return 2 * mp.quad(lambda t: bump(t, eps) ** 2, [0, eps])


def auto_hat(s, eps):
    return mp.sqrt(2 * mp.pi) * bump_hat(s, eps) ** 2 / bump_l2(eps)


def auto_chi(t, eps):
    lo, hi = max(-eps, t - eps), min(eps, t + eps)
    if hi <= lo:
        return mp.mpf(0)
    return mp.quad(lambda u: bump(u, eps) * bump(u - t, eps), [lo, hi]) / bump_l2(eps)


def main():
    eps = mp.mpf("0.4")
    for s in (0, 1, 5, 20, 50):
        print(f"eps=0.4 s={s}: bump_hat = {mp.nstr(bump_hat(s, eps), 20)}  auto_hat = {mp.nstr(auto_hat(s, eps), 20)}")
    for t in ("0.3", "0.6"):
        print(f"eps=0.4 t={t}: auto_chi = {mp.nstr(auto_chi(mp.mpf(t), eps), 20)}")
    eps = mp.mpf("0.5")
    for s in (0, 3, 6):
        print(f"eps=0.5 s={s}: auto_hat = {mp.nstr(auto_hat(s, eps), 20)}")


if __name__ == "__main__":
    main()
