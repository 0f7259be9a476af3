"""Exact synthesis and analysis of multivalued stochastic relay circuits.

Switches take states ``0..N-1``; series composition is min, parallel is
max. The library evaluates such circuits exactly over rational
probabilities, synthesizes circuits realizing target distributions from
restricted switch sets, bounds their size, checks their robustness to
switch error, builds universal probability generators, and searches
partially ordered state spaces for expressibility.
"""

from .bounds import (
    ceil_log, ceil_log2, complexity_bound, complexity_bound_recursive,
    rational_bound,
)
from .circuits import (
    Assignment, CapacityError, Circuit, Det, DimensionError, Distribution,
    Edge, Graph, IdGen, Input, InvalidMappingError, InvalidRangeError, Leaf,
    MissingAssignmentError, Node, Parallel, Pswitch, RelayError, Series,
    UnsupportedStructureError, ValidationError, clamp, clamp_node,
    compose_parallel, compose_series, count_switches, det, dual, evaluate,
    evaluate_oracle, inp, parallel, pswitch, remap_states, resolve, series,
)
from .lattice import (
    Lattice, LatticeDistribution, LatticeError, LatticeMismatchError,
    SearchResult, SearchSpec, compose_lattice, lattice_from_json,
    lattice_to_json, search_expressible,
)
from .netlist import circuit_from_json, circuit_to_json, dumps, load, loads, save
from .rational import (
    RationalParseError, format_rational, parse_rational, parse_rational_list,
)
from .render import ascii_render, dot_render
from .robustness import (
    BoundVerdict, ErrorReport, InvalidPerturbationError, PerturbationModel,
    check_bounds, perturb, perturb_dist, worst_case_error,
)
from .synthesis import (
    CutRecord, InsufficientSwitchSetError, InvalidCutError,
    InvalidTargetError, SwitchSet, SynthesisReport, TargetSpec,
    block_interval_cut, composite_synthesis, cut_switch,
    denominator_reduction, reassemble_cut, state_reduction,
    synth_binary_nstate,
)
from .upg import (
    CONSTRUCTIONS, InvalidUpgInputError, UnsupportedConstructionError,
    UpgInput, UpgSpec, build_upg, embedded_pair_upg, encode_input,
    upg_truth_table, valid_inputs, vector_names,
)

__version__ = "0.1.0"
