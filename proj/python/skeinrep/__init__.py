"""Explicit representations of Kauffman bracket skein algebras at roots of unity."""

from ._core import (
    Representation,
    RootContext,
    SkeinError,
    Surface,
    cheb,
    context,
    peripheral_lifts,
    represent,
    run_cli,
    search_exceptional,
    singular,
)

__all__ = [
    "Representation",
    "RootContext",
    "SkeinError",
    "Surface",
    "cheb",
    "context",
    "peripheral_lifts",
    "represent",
    "run_cli",
    "search_exceptional",
    "singular",
]
