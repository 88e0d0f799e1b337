#!/usr/bin/env python3
"""Independent oracle for the energy-breakdown golden test.

Builds a deterministic closed-form complex field on a 16^3 grid and computes
every energy ingredient with numpy (pocketfft) only. The Riesz convolution is
additionally cross-checked against a brute-force circular convolution whose
kernel is the inverse DFT of the sampled multiplier, so the spectral path is
validated inside the oracle itself before any number is frozen.

Run from anywhere:  python3 tests/oracles/energy_oracle.py
Writes tests/golden/energy_golden.json next to this script's parent.
"""
import json
import os

import numpy as np

N_AXIS = 16
L = 10.0
H = L / N_AXIS
ALPHA = 1.0
DIM = 3

idx = np.arange(N_AXIS)
coords = -L / 2 + idx * H
X, Y, Z = np.meshgrid(coords, coords, coords, indexing="ij")
R2 = X**2 + Y**2 + Z**2

# Deterministic field: a modulated Gaussian plus an out-of-phase imaginary part.
U = np.exp(-R2 / 2) * (1 + 0.25 * np.cos(2 * np.pi * X / L)) + 0.15j * np.exp(
    -R2 / 3
) * np.sin(2 * np.pi * Y / L)

# Default potentials.
A = [
    0.5 * np.sin(2 * np.pi * Y / L),
    np.zeros_like(X),
    np.zeros_like(X),
]
VP = 1.0 + 0.5 * (
    np.cos(2 * np.pi * X / L) ** 2
    * np.cos(2 * np.pi * Y / L) ** 2
    * np.cos(2 * np.pi * Z / L) ** 2
)
R = np.sqrt(R2)
W = 0.2 * np.exp(-R2) * (R < 3.0)
VEFF = VP - W


def central_diff(f, axis):
    return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) / (2 * H)


def kinetic_and_potential(u, v_scalar):
    kin = 0.0
    for ax in range(DIM):
        d = central_diff(u, ax) + 1j * A[ax] * u
        kin += np.sum(np.abs(d) ** 2)
    pot = np.sum(v_scalar * np.abs(u) ** 2)
    return kin * H**3, pot * H**3


def riesz_multiplier():
    m = np.fft.fftfreq(N_AXIS, d=1.0 / N_AXIS)  # signed integer modes
    KX, KY, KZ = np.meshgrid(m, m, m, indexing="ij")
    k2 = (2 * np.pi / L) ** 2 * (KX**2 + KY**2 + KZ**2)
    # c(3,1) |xi|^{alpha-N} = 4*pi / |xi|^2, zero mode suppressed.
    with np.errstate(divide="ignore"):
        mult = 4 * np.pi / k2
    mult[0, 0, 0] = 0.0
    return mult


MULT = riesz_multiplier()


def riesz_convolve(rho):
    return np.real(np.fft.ifftn(np.fft.fftn(rho) * MULT))


def riesz_convolve_direct(rho):
    """Brute-force circular convolution with kernel = IDFT of the multiplier."""
    kernel = np.real(np.fft.ifftn(MULT)) / H**3  # sum form absorbs one h^3
    out = np.zeros_like(rho)
    for sx in range(N_AXIS):
        for sy in range(N_AXIS):
            for sz in range(N_AXIS):
                out += kernel[sx, sy, sz] * np.roll(
                    np.roll(np.roll(rho, sx, 0), sy, 1), sz, 2
                )
    return out * H**3


def interaction(u, s):
    rho = np.abs(u) ** s
    conv = riesz_convolve(rho)
    return float(np.sum(conv * rho) * H**3)


def power(u, e):
    return float(np.sum(np.abs(u) ** e) * H**3)


def main():
    # Internal cross-check of the spectral convolution before freezing numbers.
    rho = np.abs(U) ** 2
    spect = riesz_convolve(rho)
    direct = riesz_convolve_direct(rho)
    gap = np.linalg.norm(spect - direct) / np.linalg.norm(spect)
    assert gap < 1e-12, f"oracle self-check failed: {gap}"

    tas = (2 * DIM - ALPHA) / (DIM - 2)  # 5.0
    tstar = 2 * DIM / (DIM - 2)  # 6.0

    kin, pot_p = kinetic_and_potential(U, VP)
    _, pot_e = kinetic_and_potential(U, VEFF)
    D = interaction(U, tas)

    out = {
        "grid": {"points_per_axis": N_AXIS, "box_length": L},
        "alpha": ALPHA,
        "kinetic_magnetic": kin,
        "potential_periodic": pot_p,
        "potential_effective": pot_e,
        "D_critical": D,
        "families": {},
    }

    # Family A: p = 3.5, lambda = 1.3.
    pA, lamA = 3.5, 1.3
    BA = interaction(U, pA)
    nsA = kin + pot_p
    out["families"]["A"] = {
        "p": pA,
        "lambda": lamA,
        "B_sub": BA,
        "total_periodic": 0.5 * nsA - D / (2 * tas) - lamA * BA / (2 * pA),
    }

    # Family B: p = 2.5, lambda = 0.7.
    pB, lamB = 2.5, 0.7
    PB = power(U, pB + 1)
    out["families"]["B"] = {
        "p": pB,
        "lambda": lamB,
        "P_sub": PB,
        "total_periodic": 0.5 * nsA - D / (2 * tas) - lamB * PB / (pB + 1),
    }

    # Family C: p = 3.0, lambda = 1.1.
    pC, lamC = 3.0, 1.1
    QC = power(U, tstar)
    BC = interaction(U, pC)
    out["families"]["C"] = {
        "p": pC,
        "lambda": lamC,
        "Q_critical": QC,
        "B_sub": BC,
        "total_periodic": 0.5 * nsA - QC / tstar - lamC * BC / (2 * pC),
    }

    # Nehari root for family A on the periodic scalar:
    # phi(t) = ns - t^{2 tas - 2} D - lam t^{2p - 2} B = 0.
    def phi(t):
        return nsA - t ** (2 * tas - 2) * D - lamA * t ** (2 * pA - 2) * BA

    lo, hi = 1e-8, 1.0
    while phi(hi) > 0:
        hi *= 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if phi(mid) > 0:
            lo = mid
        else:
            hi = mid
    out["families"]["A"]["t_u_periodic"] = 0.5 * (lo + hi)

    here = os.path.dirname(os.path.abspath(__file__))
    golden_dir = os.path.join(os.path.dirname(here), "golden")
    os.makedirs(golden_dir, exist_ok=True)
    path = os.path.join(golden_dir, "energy_golden.json")
    with open(path, "w") as f:
        json.dump(out, f, indent=2)
        f.write("\n")
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
