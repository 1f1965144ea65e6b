"""Teaching parameters of finite concept classes."""

from ._core import (
    ConceptClass,
    InputError,
    SizeGuardError,
    add_all_ones,
    an_double_prime,
    an_prime,
    binary_counter_class,
    compute,
    free_combination,
    gmn_prime,
    p_star,
    param_names,
    parse_ccm,
    powerset,
    powerset_closed_forms,
    random_class,
    smn_prime,
    std_example_pair,
    teaching_dim,
    validate_sequence,
    verify_hierarchy,
    warmuth,
    warmuth_extended,
    write_ccm,
)

__all__ = [
    "ConceptClass",
    "InputError",
    "SizeGuardError",
    "add_all_ones",
    "an_double_prime",
    "an_prime",
    "binary_counter_class",
    "compute",
    "free_combination",
    "gmn_prime",
    "p_star",
    "param_names",
    "parse_ccm",
    "powerset",
    "powerset_closed_forms",
    "random_class",
    "smn_prime",
    "std_example_pair",
    "teaching_dim",
    "validate_sequence",
    "verify_hierarchy",
    "warmuth",
    "warmuth_extended",
    "write_ccm",
]
