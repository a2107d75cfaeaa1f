"""Class groups, linking numbers and mildness certificates over imaginary quadratic fields."""

from ._core import (
    MildcertError,
    __version__,
    certify,
    class_group,
    linking,
    power_residue,
    prop34,
    replay,
    search,
    split_prime,
)

__all__ = [
    "MildcertError",
    "certify",
    "class_group",
    "linking",
    "power_residue",
    "prop34",
    "replay",
    "search",
    "split_prime",
]
