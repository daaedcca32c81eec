"""Wave-packet dynamics and the end-to-end decision procedure.

The initial state is a right-moving packet of length L on the left half of
the runway, amplitude e^{i pi r / 2} / sqrt(L) on sites -L+1..0.  It has
<H> = 0 and <H^2> = 5/L exactly, so its energy concentrates near the band
center where the tree either transmits (root value 1) or reflects (root
value 0).  Evolving for t = L/2 and measuring the probability on the right
half of the runway decides the instance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np
from scipy.special import jv

from .nand_core import TreeInput
from .lattice import HamiltonianGraph, NodeIndexMap, build_full, dense_eig
from .scattering import SymbolicY, y_at_zero

SPECTRAL_RADIUS_BOUND = 3.0  # max node degree in the walk graph
EXACT_PROPAGATOR_DIM_CAP = 2000


def initial_packet(L: int, M: int, index_map: NodeIndexMap) -> np.ndarray:
    """Unit-norm packet on runway sites -L+1..0, zero on the tree.

    Site r carries e^{i pi r / 2} / sqrt(L); the quarter-period phase makes
    the packet right-moving with group velocity 2.
    """
    if L > M:
        raise ValueError(f"packet length L={L} exceeds half-runway M={M}")
    if L < 1:
        raise ValueError("packet length must be positive")
    psi = np.zeros(index_map.dim, dtype=complex)
    rs = np.arange(-L + 1, 1)
    psi[index_map.runway_indices(rs)] = np.exp(1j * np.pi * rs / 2.0) / math.sqrt(L)
    return psi


def prob_right(psi: np.ndarray, index_map: NodeIndexMap) -> float:
    """Total probability on runway sites r = 1..M."""
    return float(np.sum(np.abs(psi[index_map.right_runway_slice()]) ** 2))


def evolve_exact(eig, psi: np.ndarray, t: float) -> np.ndarray:
    """Propagate by the dense eigendecomposition: sum_i e^{-i w_i t} v_i <v_i|psi>."""
    w, V = eig
    return V @ (np.exp(-1j * w * t) * (V.conj().T @ psi))


def _chebyshev_coefficients(x: float, tol: float):
    """Coefficients (2 - d_k0) (-i)^k J_k(x) truncated where the Bessel
    tail drops below tol."""
    budget = int(10 * abs(x)) + 10_000
    K = max(int(abs(x)) + 40, 60)
    while True:
        ks = np.arange(K + 1)
        j = jv(ks, x)
        beyond_turn = ks > abs(x)
        small = (np.abs(j) < tol / 100.0) & beyond_turn
        hits = np.nonzero(small)[0]
        if hits.size:
            cut = int(hits[0]) + 8
            ks = np.arange(cut + 1)
            coef = (2.0 - (ks == 0)) * (-1j) ** ks * jv(ks, x)
            return coef
        K *= 2
        if K > budget:
            raise RuntimeError(
                f"Chebyshev expansion did not converge within {budget} terms"
            )


def evolve_cheb(H: HamiltonianGraph, psi: np.ndarray, t: float, tol: float = 1e-12) -> np.ndarray:
    """Polynomial approximation of e^{-iHt} psi.

    Uses the Chebyshev series with the spectral radius bound 3 (maximum
    node degree), truncated when the Bessel coefficient tail falls below
    tol.  Norm drift stays within a small multiple of tol.
    """
    if tol < 1e-14:
        raise ValueError("tolerance below 1e-14 is not resolvable in double precision")
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[0] != H.dim:
        raise ValueError("state dimension mismatch")
    if t == 0:
        return psi.copy()
    coef = _chebyshev_coefficients(SPECTRAL_RADIUS_BOUND * t, tol)
    Hs = H.matrix * (1.0 / SPECTRAL_RADIUS_BOUND)
    t_prev = psi
    t_cur = Hs @ psi
    acc = coef[0] * t_prev + coef[1] * t_cur
    for k in range(2, coef.size):
        t_next = 2.0 * (Hs @ t_cur) - t_prev
        acc += coef[k] * t_next
        t_prev, t_cur = t_cur, t_next
    return acc


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one decision run.

    L is the packet length (forced even, >= 4), M the half-runway length
    (>= 3L so nothing reaches the walls by measurement time), t_run the
    evolution time (L/2 by default).
    """

    gamma: float
    L: int
    M: int
    t_run: float
    propagator: str = "auto"  # auto | exact | chebyshev
    tolerance: float = 1e-12
    threshold: float = 0.5

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError("gamma must be >= 1")
        if self.L < 4 or self.L % 2:
            raise ValueError("L must be an even integer >= 4")
        if self.M < 3 * self.L:
            raise ValueError("M must be >= 3 L (wall-insensitive margin)")
        if self.propagator not in ("auto", "exact", "chebyshev"):
            raise ValueError(f"unknown propagator {self.propagator!r}")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("threshold must lie in (0, 1)")

    @classmethod
    def for_tree(cls, n_leaves: int, gamma: float = 16.0, m_factor: int = 3,
                 propagator: str = "auto", tolerance: float = 1e-12,
                 threshold: float = 0.5) -> "RunConfig":
        """Derive L = gamma sqrt(N) (even, >= 4), M = m_factor L, t = L/2."""
        L = int(round(gamma * math.sqrt(n_leaves)))
        L += L % 2
        L = max(L, 4)
        return cls(gamma=gamma, L=L, M=m_factor * L, t_run=L / 2.0,
                   propagator=propagator, tolerance=tolerance, threshold=threshold)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one run: the decision bit, the measured right-side
    probability, and the analytic transmission probability at band center."""

    decision: int
    p_right: float
    analytic_T0_sq: float
    config: dict

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def run_algorithm(tree: TreeInput, config: RunConfig | None = None) -> Verdict:
    """Build the graph, launch the packet, evolve for t_run, measure.

    The verdict carries |T(0)|^2 in {0, 1} from the symbolic recursion for
    comparison with the measured probability.
    """
    if config is None:
        config = RunConfig.for_tree(tree.n_leaves)
    H = build_full(tree, config.M)
    psi0 = initial_packet(config.L, config.M, H.index_map)
    method = config.propagator
    if method == "auto":
        method = "exact" if H.dim <= EXACT_PROPAGATOR_DIM_CAP else "chebyshev"
    if method == "exact":
        psi_t = evolve_exact(dense_eig(H), psi0, config.t_run)
    else:
        psi_t = evolve_cheb(H, psi0, config.t_run, config.tolerance)
    p = prob_right(psi_t, H.index_map)
    t0_sq = 1.0 if y_at_zero(tree) is SymbolicY.ZERO else 0.0
    decision = 1 if p >= config.threshold else 0
    echo = {
        "bits": tree.to_text(),
        "N": tree.n_leaves,
        "gamma": config.gamma,
        "L": config.L,
        "M": config.M,
        "t_run": config.t_run,
        "propagator": method,
        "tolerance": config.tolerance,
        "threshold": config.threshold,
        "dim": H.dim,
    }
    return Verdict(decision=decision, p_right=p, analytic_T0_sq=t0_sq, config=echo)


def free_packet_at(psi0: np.ndarray, index_map: NodeIndexMap, shift: float) -> np.ndarray:
    """The initial runway packet translated by `shift` sites to the right,
    under free right-moving dispersionless propagation.

    Each source amplitude at site s contributes i^{r-s} sinc((r-s) - shift)
    at site r: the band-limited interpolation of the shifted packet, which
    also carries the quarter-period phase accumulated per site.  For
    integer shifts this reduces to an exact translation times i^shift.
    """
    M = index_map.M
    rs = np.arange(-M, M + 1)
    src = psi0[index_map.runway_indices(rs)]
    nz = np.nonzero(np.abs(src) > 0.0)[0]
    out = np.zeros(2 * M + 1, dtype=complex)
    if nz.size == 0:
        return out
    s = rs[nz]
    amps = src[nz]
    delta = rs[:, None] - s[None, :]
    kernel = (1j) ** np.mod(delta, 4) * np.sinc(delta - shift)
    out = kernel @ amps
    return out


def translation_residual(psi_t: np.ndarray, psi0: np.ndarray, T0: complex,
                         t: float, index_map: NodeIndexMap) -> float:
    """L2 mismatch, over the right runway, between the evolved state and
    T0 times the freely translated packet.

    Non-integer displacements 2t are handled by evaluating the reference
    through its band-limited momentum representation (sinc interpolation).
    """
    M = index_map.M
    if 2.0 * t > 2 * M:
        raise ValueError("displacement 2t exceeds the runway")
    ref_runway = T0 * free_packet_at(psi0, index_map, 2.0 * t)
    right = slice(M + 1, 2 * M + 1)  # runway-local indices for r = 1..M
    measured = psi_t[index_map.runway_indices(np.arange(1, M + 1))]
    return float(np.linalg.norm(measured - ref_runway[right]))
