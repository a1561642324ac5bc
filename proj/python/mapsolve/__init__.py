"""Multidimensional assignment problem: seeded instances, local searches and a memetic solver."""

from ._core import (
    Instance,
    NodeLimitExceeded,
    brute_force,
    greedy,
    local_search,
    local_search_names,
    make_instance,
    memetic,
    next_gen_size,
    read_instance,
    round_gen_size,
    solution_error,
    solve,
    solve_ap,
    tensor_instance,
    validate,
    weight,
)

__all__ = [
    "Instance",
    "NodeLimitExceeded",
    "brute_force",
    "greedy",
    "local_search",
    "local_search_names",
    "make_instance",
    "memetic",
    "next_gen_size",
    "read_instance",
    "round_gen_size",
    "solution_error",
    "solve",
    "solve_ap",
    "tensor_instance",
    "validate",
    "weight",
]
