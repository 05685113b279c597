#!/usr/bin/env python3
"""Regenerates fixtures/expected/lambda_sweep.json.

A numpy re-implementation of the split-step scheme: half kinetic step,
phase kick by (lambda - 1) * Q of the floored density, half kinetic step.
The sweep evolves two packets sitting on a uniform pedestal and records the
fringe visibility near the origin at the final time.

As a second, scheme-independent check it verifies the exact rescaling of
the deformed fluid with V = 0 and zero initial phase: lambda * Q is the
quantum potential of hbar' = sqrt(lambda) * hbar, so rho_lambda(x, t) equals
rho_1(x, sqrt(lambda) * t).

    python3 fixtures/oracles/lambda_sweep.py
"""

import json
import math
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "expected" / "lambda_sweep.json"

CONFIG = {
    "n_points": 512,
    "length": 40.0,
    "separation": 8.0,
    "sigma0": 0.5,
    "pedestal": 0.2,
    "t_final": 1.9,
    "dt_over_dx2": 0.15,
    "window": math.pi / 2,
    "hbar": 1.0,
    "mass": 1.0,
    "density_floor": 1e-14,
    "lambdas": [round(0.1 * k, 1) for k in range(11)],
}


def grid(cfg):
    n, length = cfg["n_points"], cfg["length"]
    dx = length / n
    x = -length / 2 + dx * np.arange(n)
    k = 2 * np.pi / length * np.concatenate([np.arange(n // 2), np.arange(n // 2, n) - n])
    return x, dx, k


def initial(cfg, x, dx):
    s0, sep = cfg["sigma0"], cfg["separation"]
    g = np.exp(-((x + sep / 2) ** 2) / (4 * s0**2)) + np.exp(-((x - sep / 2) ** 2) / (4 * s0**2))
    g = g / math.sqrt(np.sum(np.abs(g) ** 2) * dx)
    g = g + cfg["pedestal"]
    return (g / math.sqrt(np.sum(np.abs(g) ** 2) * dx)).astype(complex)


def evolve(cfg, lam, t_final, dt_max):
    x, dx, k = grid(cfg)
    hb, m = cfg["hbar"], cfg["mass"]
    steps = math.ceil(t_final / dt_max - 1e-9)
    dt = t_final / steps
    half = np.exp(-1j * hb * k**2 / (2 * m) * dt / 2)
    psi = initial(cfg, x, dx)
    for _ in range(steps):
        psi = np.fft.ifft(half * np.fft.fft(psi))
        if lam != 1.0:
            a = np.sqrt(np.maximum(np.abs(psi) ** 2, cfg["density_floor"]))
            lap = np.real(np.fft.ifft(-(k**2) * np.fft.fft(a)))
            q = -(hb**2) / (2 * m) * lap / a
            psi = psi * np.exp(-1j * (lam - 1) * q * dt / hb)
        psi = np.fft.ifft(half * np.fft.fft(psi))
    return x, np.abs(psi) ** 2


def visibility(x, rho, window):
    r = rho[np.abs(x) <= window]
    return float((r.max() - r.min()) / (r.max() + r.min()))


def main():
    cfg = CONFIG
    _, dx, _ = grid(cfg)
    dt = cfg["dt_over_dx2"] * dx * dx
    vis = []
    for lam in cfg["lambdas"]:
        x, rho = evolve(cfg, lam, cfg["t_final"], dt)
        vis.append(visibility(x, rho, cfg["window"]))

    # Rescaling check at lambda = 1/4: time 2T at lambda 1/4 equals time T at lambda 1.
    _, rho_quarter = evolve(cfg, 0.25, 2 * cfg["t_final"], dt / 2)
    _, rho_one = evolve(cfg, 1.0, cfg["t_final"], dt / 4)
    rescale_error = float(np.max(np.abs(rho_quarter - rho_one)))
    assert rescale_error < 1e-3, rescale_error

    assert vis[0] < 0.1 and vis[-1] > 0.9
    assert all(b >= a - 1e-3 for a, b in zip(vis, vis[1:]))

    OUT.write_text(json.dumps({"config": cfg, "visibility": vis, "rescaling_max_abs_error": rescale_error},
                              indent=2) + "\n")
    print("wrote", OUT)
    for lam, v in zip(cfg["lambdas"], vis):
        print(f"  lambda={lam:.1f}  visibility={v:.6f}")


if __name__ == "__main__":
    main()
