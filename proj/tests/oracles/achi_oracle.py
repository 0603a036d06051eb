# SPDX-License-Identifier: Apache-2.0
"""a_chi for the d = 2, d_G = 0 shear by direct 2D quadrature of
exp(-|u|^2 / 2 - |B u|^2 / 2), B = [[1, -s], [0, 1]]."""
import numpy as np
from scipy import integrate


def main():
    s = 0.7
    b = np.array([[1.0, -s], [0.0, 1.0]])

    def f(y, x):
        u = np.array([x, y])
        return np.exp(-0.5 * u @ u - 0.5 * (b @ u) @ (b @ u))

    val, err = integrate.dblquad(f, -12, 12, -12, 12, epsabs=1e-14, epsrel=1e-13)
    print(f"a_chi shear s={s}: {val:.17g} (quadrature error estimate {err:.1e})")


if __name__ == "__main__":
    main()
