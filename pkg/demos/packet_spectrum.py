#!/usr/bin/env python3
"""Momentum anatomy of the runway packet.

Near band center the dispersion E = 2 sin(phi) is linear, so a packet
whose spectrum concentrates at phi = 0 translates rigidly at speed 2.
This script quantifies that concentration: the right-moving weight
|A(phi)|^2, its tail outside a window, the alternating contamination
|B(phi)|^2, and the share of the packet inside the matching energy window
of the actual finite graph.
"""

import math

import numpy as np

from nandwalk import (
    RunConfig,
    build_full,
    dense_eig,
    dispersion_smallness,
    error_budget,
    initial_packet,
    packet_spectrum,
    parse_input,
    parseval_total,
    tail_mass,
    window_weight,
)

print("=" * 66)
print("Right-moving spectrum A(phi) for L = 64")
print("=" * 66)
L = 64
print(f"{'phi':>8} {'|A|^2':>10} {'|B|^2':>10}")
for phi in (0.0, 0.02, 0.05, 0.1, 0.3, 1.0, math.pi):
    A, B = packet_spectrum(L, phi)
    print(f"{phi:>8.3f} {abs(A)**2:>10.4f} {abs(B)**2:>10.4f}")
print(f"\ntotal band mass (Parseval): {parseval_total(L):.12f}")
print(f"|B|^2 stays at the 1/L = {1.0/L:.4f} scale: the packet is essentially")
print("purely right-moving.")

print()
print("=" * 66)
print("Weight outside |phi| < eps vs the analytic ceiling pi/(L eps)")
print("=" * 66)
print(f"{'L':>6} {'eps':>6} {'tail':>10} {'bound':>10}")
for L in (16, 64, 256):
    for eps in (0.1, 0.3):
        print(f"{L:>6} {eps:>6.2f} {tail_mass(L, eps):>10.5f} "
              f"{math.pi/(L*eps):>10.5f}")

print()
print("=" * 66)
print("Energy-window weight on the real (finite) graph")
print("=" * 66)
tree = parse_input("1" * 16)
eps = 1.0 / (16.0 * math.sqrt(16))
print(f"window |E| < 2 sin(eps) with eps = 1/(16 sqrt N) = {eps:.4f}")
print(f"{'gamma':>6} {'L':>5} {'weight':>8}")
for gamma in (8.0, 16.0, 32.0, 64.0):
    cfg = RunConfig.for_tree(16, gamma=gamma)
    H = build_full(tree, cfg.M)
    psi0 = initial_packet(cfg.L, cfg.M, H.index_map)
    w = window_weight(dense_eig(H), psi0, eps)
    print(f"{gamma:>6.0f} {cfg.L:>5} {w:>8.4f}")
print("\nthe window only captures most of the packet once L eps >> 1,")
print("i.e. gamma >> 16; the decision margin at gamma = 16 rests on the")
print("transmission amplitude being flat over a wider band than eps.")

print()
print("=" * 66)
print("Composite error scale and dispersion budget")
print("=" * 66)
print(f"{'gamma':>6} {'budget':>10} {'L*eps^3 (N=16)':>16}")
for gamma in (4.0, 16.0, 64.0, 256.0):
    root = 4.0
    budget = error_budget(gamma * root, 1.0 / (16.0 * root), 8.0 * root)
    disp = dispersion_smallness(gamma * root, 1.0 / (16.0 * root))
    print(f"{gamma:>6.0f} {budget:>10.4f} {disp:>16.2e}")
print("\nthe budget is 4/sqrt(gamma) regardless of N; the cubic-dispersion")
print("product stays far below 1 for every sensible configuration.")
