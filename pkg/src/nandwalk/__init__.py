"""Evaluation of NAND trees by a continuous-time quantum walk.

A right-moving wave packet on a long runway scatters off a binary tree
encoding the instance; at band center the tree transmits when the root
value is 1 and reflects when it is 0, so a single measurement of the
right-side probability after time L/2 decides the tree in O(sqrt(N)) time.
"""

__version__ = "0.1.0"

from .nand_core import (
    EvalTrace,
    NonPowerOfTwoError,
    TreeInput,
    embed_parity,
    eval_nand,
    expected_hard_queries,
    hard_instance,
    hard_query_samples,
    parity_blocks,
    parity_layout,
    parse_input,
    randomized_eval,
)
from .scattering import (
    BoundReport,
    DegenerateRecursionError,
    ProjectiveValue,
    ScatteringPoint,
    SymbolicY,
    combine_y,
    energy_grid,
    leaf_y,
    scan_bounds,
    scattering_point,
    transmission,
    y_at_zero,
    y_bottom,
)
from .lattice import (
    HamiltonianGraph,
    NodeIndexMap,
    apply_h,
    build_driver,
    build_full,
    build_oracle,
    build_runway,
    degrees,
    dense_eig,
    extra_node,
    runway_node,
    tree_node,
)
from .dynamics import (
    RunConfig,
    Verdict,
    evolve_cheb,
    evolve_exact,
    free_packet_at,
    initial_packet,
    prob_right,
    run_algorithm,
    translation_residual,
)
from .spectral import (
    SpectrumProfile,
    band_mass,
    dispersion_smallness,
    error_budget,
    packet_spectrum,
    parseval_total,
    spectrum_profile,
    tail_mass,
    window_weight,
)
from .harness import ExperimentConfig, cli_main, sweep
