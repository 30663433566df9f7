"""Exact computation with finite synchronous transducers."""
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .transducer import (
    EquivalenceResult,
    InitialTransducer,
    SyncInfo,
    Transducer,
    core,
    core_distance,
    equivalent,
    identity,
    inverse,
    is_injective_on_lines,
    min_core,
    min_core_power,
    minimize,
    parse_trn,
    power_raw,
    product,
    serialize,
    sync_analysis,
    sync_level,
    validate,
)
from .words import (
    PeriodicBiInfiniteWord,
    WordMap,
    apply_to_periodic,
    compare_spectra,
    inverse_level_map,
    is_prime_word,
    level_map,
    orbit_is_infinite_sample,
    rotation,
    rotation_index,
    spectrum,
)
from .dual import (
    bad_pairs_graph,
    bottom_depends_only_on_top,
    decide_order,
    dual as dual_automaton,
    verify_split,
    dual_is_zero,
    finite_order_certificate,
    free_semigroup_condition,
    h3_order_tests,
    has_circuit,
    letter_partition,
    letter_partition_inverse,
    minimal_bad_pairs_graph,
    reduce_by_conjugation_h3,
    right_zero_check,
    sigma_family,
    splitting_length,
    witness_from_loop,
)
from .constructions import (
    cayley_machine,
    combine_disjoint,
    combine_oplus,
    conjugate,
    cyclic_group,
    surjective_output_check,
)
from .registry import example_registry
from .growth import growth_series, lower_bound_check, sync_level_linear_check

__version__ = "0.1.0"
