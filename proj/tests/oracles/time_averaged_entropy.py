"""Independent check of the 600-kick time-averaged linear entropy at
j = 4, kappa = 3, p = pi/2 along theta = 2.25 (scipy expm, no shared code)."""
import numpy as np
from scipy.linalg import expm

from frozen_values import spin_ops

j, kappa, p = 4, 3.0, np.pi / 2
jx, jy, jz = spin_ops(j)
u = expm(-1j * kappa * jx @ jx / (2 * j)) @ expm(-1j * p * jy)
top = np.zeros(2 * j + 1, dtype=complex)
top[-1] = 1.0


def coherent(theta, phi):
    return expm(1j * theta * (jx * np.sin(phi) - jy * np.cos(phi))) @ top


def s_bar(theta, phi, kicks=600):
    psi = coherent(theta, phi)
    acc = 0.0
    for _ in range(kicks):
        psi = u @ psi
        m = [np.vdot(psi, op @ psi).real for op in (jx, jy, jz)]
        acc += 0.5 * (1 - sum(v * v for v in m) / j**2)
    return acc / kicks


if __name__ == "__main__":
    reg, cha = s_bar(2.25, 2.5), s_bar(2.25, 1.1)
    print(repr(reg), repr(cha), "margin", repr(cha - reg))
