"""Kronecker squares of quivers and invariants of their Leavitt path algebras."""

from .analysis import (
    condition_K,
    condition_L,
    cycle_chains,
    degree_census,
    downward_directed,
    enumerate_cycles,
    hereditary_saturated_closure,
    line_points,
    paths_ending_at,
)
from .harness import GeneratorConfig, conjecture_check, random_quiver, run_suite
from .ktheory import k0_group, smith_normal_form, verify_shift_equivalence
from .lpa import (
    cross_product_dim,
    decompose,
    dim_graded,
    dim_graded_oracle,
    gk_dimension,
    graded_iso_invariant,
    is_locally_finite,
    ring_properties,
    socle_decomposition,
)
from .matrix import IntMatrix
from .presentation import face_quotient_presentation, lpa_presentation, presentations_match
from .quiver import (
    OutSplitPartition,
    Quiver,
    adjacency_matrix,
    kronecker_product,
    kronecker_square,
    out_split,
    quiver,
    quiver_isomorphic,
    remove_vertices,
    weak_components,
)

__version__ = "0.1.0"
