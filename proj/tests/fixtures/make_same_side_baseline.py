"""Regenerates same_side_baseline.json by brute-force 2D quadrature.

Independent of the C++ code: evaluates the two-packet wavefunction directly
and integrates |psi|^2 over the two same-side quadrants with scipy.
"""

import json
import math
from pathlib import Path

import numpy as np
from scipy import integrate

hbar, m, s0, Y, d, D, kx, ky = 1.0, 1.0, 1.0, 5.0, 10.0, 50.0, 5.0, 0.0
t0 = m * D / (hbar * kx)


def packet(sign, y, t):
    st = s0 * (1 + 1j * hbar * t / (2 * m * s0**2))
    u = sign * y - Y - hbar * ky * t / m
    pre = (2 * math.pi * st**2) ** -0.25
    return pre * np.exp(-(u**2) / (4 * s0 * st)) * np.exp(1j * ky * (sign * y - Y - hbar * ky * t / (2 * m)))


def density(y1, y2, t):
    psi = packet(1, y1, t) * packet(-1, y2, t) + packet(-1, y1, t) * packet(1, y2, t)
    return abs(psi) ** 2


def main():
    reach = 60.0
    opts = dict(epsabs=1e-12, epsrel=1e-10)
    norm, _ = integrate.dblquad(lambda b, a: density(a, b, t0), -reach, reach, -reach, reach, **opts)
    pp, _ = integrate.dblquad(lambda b, a: density(a, b, t0), 0, reach, 0, reach, **opts)
    mm, _ = integrate.dblquad(lambda b, a: density(a, b, t0), -reach, 0, -reach, 0, **opts)
    value = (pp + mm) / norm
    out = {
        "scenario": {"hbar": hbar, "mass": m, "sigma0": s0, "Y": Y, "d": d, "D": D, "kx": kx, "ky": ky},
        "detection_time": t0,
        "same_side_probability": value,
        "tolerance": 1e-8,
        "method": "scipy dblquad of |psi|^2 over the two same-side quadrants, divided by the full integral",
    }
    path = Path(__file__).with_name("same_side_baseline.json")
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(value)


if __name__ == "__main__":
    main()
