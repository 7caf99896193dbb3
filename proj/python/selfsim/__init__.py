"""Simple virtual endomorphisms of extensions of abelian p-groups."""

from ._core import (
    CapExceeded,
    Group,
    ParseError,
    Subgroup,
    VerificationFailure,
    VirtualEndo,
    construct_phi,
    enumerate_virtual_endos,
    find_simple,
    kpn_order,
    kpn_recursion,
    verify_dihedral,
    verify_ternary_example,
    verify_theorem,
)

__all__ = [
    "CapExceeded",
    "Group",
    "ParseError",
    "Subgroup",
    "VerificationFailure",
    "VirtualEndo",
    "construct_phi",
    "enumerate_virtual_endos",
    "find_simple",
    "kpn_order",
    "kpn_recursion",
    "verify_dihedral",
    "verify_ternary_example",
    "verify_theorem",
]
