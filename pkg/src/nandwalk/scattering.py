"""Scattering analysis of the tree attached to the runway.

An energy eigenstate at E = -2 cos(theta) carries, on every tree edge, the
ratio Y(E) of the amplitude above the edge to the amplitude below it.
Working upward from the leaves,

    leaf with pendant node:  Y = E / (1 - E^2)
    bare leaf:               Y = -1 / E
    internal node:           Y = -1 / (E + Y' + Y'')

and the value y(E) on the root-to-runway edge fixes the transmission
amplitude

    T(E) = 2 i sin(theta) / (2 i sin(theta) + y(E)),    R = T - 1.

As E -> 0+ the recursion degenerates to {0, -infinity} and is exactly a
NAND gate (0 <-> logical 1, pole <-> logical 0), so T(0) is 1 when the
tree evaluates to 1 and 0 when it evaluates to 0.  Y is stored as a
projective (num, den) pair so poles are ordinary data and the recursion
never divides by zero.

For 0 < E < 1/(16 sqrt(N)) the root value is still readable from y(E):

    value 0 (reflect):   |y| > 1/(4 sqrt(N) E),   |T|     < 8 sqrt(N) E
    value 1 (transmit):  |y| < 4 sqrt(N) E,       |T - 1| < 3 sqrt(N) E

scan_bounds checks these inequalities pointwise over an energy grid.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .nand_core import TreeInput, eval_nand


class DegenerateRecursionError(ArithmeticError):
    """Both projective components vanished (exact double-pole cancellation)."""


@dataclass(frozen=True, eq=False)
class ProjectiveValue:
    """Y = num / den with poles represented as den = 0.

    Components may be scalars or equally shaped arrays (one Y per grid
    energy).  Combination steps renormalize to max(|num|, |den|) = 1.
    """

    num: object
    den: object

    @property
    def magnitude(self):
        """|Y|, with +inf at poles."""
        with np.errstate(divide="ignore"):
            return np.abs(np.asarray(self.num)) / np.abs(np.asarray(self.den))

    @property
    def ratio(self):
        """Y as a float, +/-inf at poles."""
        with np.errstate(divide="ignore"):
            return np.asarray(self.num) / np.asarray(self.den)

    def is_pole(self):
        return np.asarray(self.den) == 0


class SymbolicY(enum.Enum):
    """Limit of Y as E -> 0+: ZERO encodes logical 1, POLE logical 0."""

    ZERO = "zero"
    POLE = "pole"


def _renormalized(num, den):
    scale = np.maximum(np.abs(num), np.abs(den))
    if np.any(scale == 0.0):
        raise DegenerateRecursionError("projective recursion produced (0, 0)")
    return ProjectiveValue(num=num / scale, den=den / scale)


def leaf_y(bit: int, E):
    """Y on a leaf edge: E/(1-E^2) with the pendant node, -1/E without."""
    E = np.asarray(E, dtype=float)
    if bit == 1:
        return ProjectiveValue(num=E, den=1.0 - E * E)
    return ProjectiveValue(num=-np.ones_like(E), den=E)


def combine_y(y1: ProjectiveValue, y2: ProjectiveValue, E) -> ProjectiveValue:
    """One recursion step: Y = -1/(E + Y' + Y''), projectively.

    With Y' = p1/q1 and Y'' = p2/q2 this is
    (-q1 q2) / (E q1 q2 + p1 q2 + p2 q1), renormalized.
    """
    E = np.asarray(E, dtype=float)
    qq = np.asarray(y1.den) * np.asarray(y2.den)
    num = -qq
    den = E * qq + np.asarray(y1.num) * np.asarray(y2.den) + np.asarray(y2.num) * np.asarray(y1.den)
    return _renormalized(num, den)


def y_bottom(tree: TreeInput, E) -> ProjectiveValue:
    """Y on the root-to-runway edge, folded from all N leaves.

    E may be a scalar or a 1-d grid; the fold is vectorized over the grid.
    Satisfies y(-E) = -y(E).
    """
    E_in = np.asarray(E, dtype=float)
    scalar = E_in.ndim == 0
    Ev = np.atleast_1d(E_in)
    bits = np.asarray(tree.bits)[:, None]
    p = np.where(bits == 1, Ev[None, :], -1.0)
    q = np.where(bits == 1, 1.0 - Ev * Ev, Ev[None, :])
    while p.shape[0] > 1:
        qq = q[0::2] * q[1::2]
        num = -qq
        den = Ev * qq + p[0::2] * q[1::2] + p[1::2] * q[0::2]
        scale = np.maximum(np.abs(num), np.abs(den))
        if np.any(scale == 0.0):
            raise DegenerateRecursionError("projective recursion produced (0, 0)")
        p, q = num / scale, den / scale
    if scalar:
        return ProjectiveValue(num=float(p[0, 0]), den=float(q[0, 0]))
    return ProjectiveValue(num=p[0], den=q[0])


def y_at_zero(tree: TreeInput) -> SymbolicY:
    """Exact E -> 0+ limit of y_bottom, evaluated symbolically.

    The combination table is a NAND gate: the result is a pole exactly
    when both inputs are zeros.  The returned tag is ZERO iff the tree
    evaluates to 1.
    """
    tags = [SymbolicY.ZERO if b == 1 else SymbolicY.POLE for b in tree.bits]
    while len(tags) > 1:
        tags = [
            SymbolicY.POLE
            if (tags[2 * i] is SymbolicY.ZERO and tags[2 * i + 1] is SymbolicY.ZERO)
            else SymbolicY.ZERO
            for i in range(len(tags) // 2)
        ]
    return tags[0]


def transmission(E, y: ProjectiveValue):
    """Transmission and reflection amplitudes for |E| < 2.

    T = 2 i sin(theta) q / (2 i sin(theta) q + p) for y = p/q, which stays
    finite through poles of y; R = T - 1 always.
    """
    E = np.asarray(E, dtype=float)
    if np.any(np.abs(E) >= 2.0):
        raise ValueError("|E| must be < 2 (propagating band)")
    sin_theta = np.sqrt(1.0 - E * E / 4.0)
    p = np.asarray(y.num)
    q = np.asarray(y.den)
    denom = 2j * sin_theta * q + p
    if np.any(denom == 0):
        raise ArithmeticError("transmission denominator vanished for real y")
    T = 2j * sin_theta * q / denom
    return T, T - 1.0


@dataclass(frozen=True)
class ScatteringPoint:
    """y, T and R at one energy, with theta = arccos(-E/2)."""

    E: float
    theta: float
    y: ProjectiveValue
    T: complex
    R: complex


def scattering_point(tree: TreeInput, E: float) -> ScatteringPoint:
    y = y_bottom(tree, float(E))
    T, R = transmission(float(E), y)
    return ScatteringPoint(
        E=float(E), theta=math.acos(-E / 2.0), y=y, T=complex(T), R=complex(R)
    )


# ---------------------------------------------------------------------------
# Bound scan.
# ---------------------------------------------------------------------------


def energy_grid(n_leaves: int, points: int = 64, emin: float = 1e-8) -> np.ndarray:
    """Log-spaced energies inside the validity window (0, 1/(16 sqrt(N)))."""
    emax = 1.0 / (16.0 * math.sqrt(n_leaves))
    if not 0.0 < emin < emax:
        raise ValueError(f"emin must lie in (0, {emax})")
    return np.geomspace(emin, emax * (1.0 - 1e-9), points)


@dataclass(frozen=True)
class BoundRow:
    N: int
    instance_id: int
    E: float
    nand: int
    abs_y: float
    abs_T: float
    bound_y: float
    bound_T: float
    passed: bool


CSV_COLUMNS = ("N", "instance_id", "E", "nand", "abs_y", "abs_T", "bound_y", "bound_T", "pass")


@dataclass
class BoundReport:
    """Pointwise reflect/transmit bound checks over an energy grid."""

    rows: list

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def violations(self) -> list:
        return [r for r in self.rows if not r.passed]

    def to_csv(self, fh=None) -> str:
        buf = fh or io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(
                [r.N, r.instance_id, f"{r.E:.12e}", r.nand,
                 f"{r.abs_y:.12e}", f"{r.abs_T:.12e}",
                 f"{r.bound_y:.12e}", f"{r.bound_T:.12e}",
                 "true" if r.passed else "false"]
            )
        return "" if fh else buf.getvalue()


def scan_bounds(tree: TreeInput, grid, instance_id: int = 0) -> BoundReport:
    """Check the reflect/transmit inequalities at every grid energy.

    Reflecting (value 0) instances must satisfy |y| > 1/(4 sqrt(N) E) and
    |T| < 8 sqrt(N) E; transmitting (value 1) instances |y| < 4 sqrt(N) E
    and |T - 1| < 3 sqrt(N) E.  Every grid point must lie strictly inside
    (0, 1/(16 sqrt(N))).
    """
    grid = np.asarray(grid, dtype=float)
    N = tree.n_leaves
    root_n = math.sqrt(N)
    emax = 1.0 / (16.0 * root_n)
    if np.any((grid <= 0.0) | (grid >= emax)):
        raise ValueError(f"grid energies must lie in (0, {emax})")
    nand = eval_nand(tree)
    y = y_bottom(tree, grid)
    abs_y = y.magnitude
    T, _ = transmission(grid, y)
    rows = []
    for i, E in enumerate(grid):
        if nand == 0:
            bound_y = 1.0 / (4.0 * root_n * E)
            bound_T = 8.0 * root_n * E
            ok = (abs_y[i] > bound_y) and (abs(T[i]) < bound_T)
        else:
            bound_y = 4.0 * root_n * E
            bound_T = 3.0 * root_n * E
            ok = (abs_y[i] < bound_y) and (abs(T[i] - 1.0) < bound_T)
        rows.append(
            BoundRow(
                N=N, instance_id=instance_id, E=float(E), nand=nand,
                abs_y=float(abs_y[i]), abs_T=float(abs(T[i])),
                bound_y=float(bound_y), bound_T=float(bound_T), passed=bool(ok),
            )
        )
    return BoundReport(rows=rows)
