"""Membership, representability and law checks for cyclotomic ideal-norm sets."""

__version__ = "0.1.0"

from .arith import Factorization, factorize, is_prime, mod_order, popcount
from .msets import (
    MembershipSieve,
    MSetSpec,
    enumerate_norm_form_values,
    generate_members,
    is_member,
    is_sum_of_two_squares,
    norm_form_value,
    sieve_members,
)
from .represent import (
    ReprQuery,
    ReprWitness,
    SearchReport,
    enumerate_power_sums,
    find_nonrepresentable,
    is_representable,
)

__all__ = [
    "Factorization",
    "MSetSpec",
    "MembershipSieve",
    "ReprQuery",
    "ReprWitness",
    "SearchReport",
    "enumerate_norm_form_values",
    "enumerate_power_sums",
    "factorize",
    "find_nonrepresentable",
    "generate_members",
    "is_member",
    "is_prime",
    "is_representable",
    "is_sum_of_two_squares",
    "mod_order",
    "norm_form_value",
    "popcount",
    "sieve_members",
]
