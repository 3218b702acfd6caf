"""The cyclic group of plane rotations both players draw their moves from.

An order-``n`` group contains the rotations by ``2*pi*k/n`` for
``k = 0 .. n-1``.  Exponents are kept in that canonical range; construction
reduces mod ``n`` silently.  For even orders every element has a *dual*
obtained by adding a half turn, which is what makes the game fair: measuring
in the dual basis swaps the two players' win probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quantum import ry

MAX_ORDER = 1024

__all__ = [
    "MAX_ORDER",
    "GroupElement",
    "RotatedBasis",
    "RotationGroup",
    "UnsupportedOrderError",
    "element",
    "rotated_basis",
]


class UnsupportedOrderError(ValueError):
    """Raised where an operation needs an even group order (the dual)."""


@dataclass(frozen=True)
class GroupElement:
    """Rotation by ``2*pi*k/n``, the element ``r^k`` of the order-n group."""

    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"group order must be an integer, got {self.n!r}")
        if not 1 <= self.n <= MAX_ORDER:
            raise ValueError(f"group order must be in [1, {MAX_ORDER}], got {self.n}")
        if not isinstance(self.k, int) or isinstance(self.k, bool):
            raise ValueError(f"exponent must be an integer, got {self.k!r}")
        object.__setattr__(self, "k", self.k % self.n)

    @property
    def angle(self) -> float:
        """Rotation angle in [0, 2*pi)."""
        return 2.0 * math.pi * self.k / self.n

    def compose(self, other: "GroupElement") -> "GroupElement":
        if self.n != other.n:
            raise ValueError(f"cannot compose elements of orders {self.n} and {other.n}")
        return GroupElement(self.n, self.k + other.k)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.n, -self.k)

    def dual(self) -> "GroupElement":
        """The half-turn shift ``(k + n/2) mod n``; an involution for even n."""
        if self.n % 2:
            raise UnsupportedOrderError(
                f"the dual needs an even group order, got n={self.n}"
            )
        return GroupElement(self.n, self.k + self.n // 2)

    def __repr__(self) -> str:
        return f"r^{self.k} (order {self.n})"


def element(n: int, k: int) -> GroupElement:
    """Canonical element ``r^k`` of the order-n group; k is reduced mod n."""
    return GroupElement(n, k)


@dataclass(frozen=True)
class RotationGroup:
    """The full order-n group, mainly an iteration convenience for sweeps."""

    n: int

    def __post_init__(self):
        GroupElement(self.n, 0)  # reuse the order validation

    def element(self, k: int) -> GroupElement:
        return GroupElement(self.n, k)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self.n, k) for k in range(self.n)]

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.elements())


@dataclass(frozen=True, eq=False)
class RotatedBasis:
    """The one-qubit measurement basis induced by a group element.

    ``ket0``/``ket1`` are the computational kets rotated by half the group
    angle, and ``change_matrix`` (their transposed column matrix) maps
    computational coordinates into the rotated basis.
    """

    element: GroupElement
    ket0: np.ndarray
    ket1: np.ndarray
    change_matrix: np.ndarray


def rotated_basis(e: GroupElement) -> RotatedBasis:
    """Rotated basis kets and the change-of-basis matrix for ``r^k``."""
    half = math.pi * e.k / e.n
    c, s = math.cos(half), math.sin(half)
    return RotatedBasis(
        element=e,
        ket0=np.array([c, s]),
        ket1=np.array([-s, c]),
        change_matrix=ry(e.angle).T,
    )
