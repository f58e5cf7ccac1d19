"""Permutations and the parity-dependent signs of antisymmetrizers.

Permutations are written by their images s(1)..s(k) and compose as
(s1 * s2)(i) = s1(s2(i)). A parity vector P acts through s(P) = (p_s(1), ..., p_s(k)).

Two sign conventions live here. ``super_sign`` is the reordering sign of
Grassmann-envelope elements of shifted parity p_i + 1 and is what the generic
element produces. ``antisymmetrizer_sign`` = sign(s) * sign(s') is the sign of
the super antisymmetrizer itself. They differ by the tensor sign of the envelope,
see ``tensor_sign``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .exceptions import ValidationError
from .validators import validate_parity_vector, validate_permutation

logger = logging.getLogger(__name__)

ParityVector = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..k} given by its images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        validate_permutation(self.images)

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def all(cls, k: int) -> Iterator[Permutation]:
        """Every permutation of {1..k}, lexicographic in images."""
        for images in itertools.permutations(range(1, k + 1)):
            yield cls(images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return self.compose(other)

    def compose(self, other: Permutation) -> Permutation:
        """(self * other)(i) = self(other(i)).

        Raises:
            ValidationError: If the permutations have different sizes
        """
        if len(self) != len(other):
            raise ValidationError(f"Cannot compose S_{len(self)} with S_{len(other)}")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        images = [0] * len(self.images)
        for position, image in enumerate(self.images, start=1):
            images[image - 1] = position
        return Permutation(tuple(images))

    def act(self, parities: Sequence[int]) -> ParityVector:
        """s(P) = (p_s(1), ..., p_s(k))."""
        _check_lengths(self, parities)
        return tuple(parities[image - 1] for image in self.images)

    def inversions(self) -> Iterator[tuple[int, int]]:
        """Position pairs (i, j), 0-based, with i < j and s(i) > s(j)."""
        images = self.images
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                if images[i] > images[j]:
                    yield i, j

    @property
    def sign(self) -> int:
        """Classical signature."""
        count = sum(1 for _ in self.inversions())
        return -1 if count & 1 else 1


def _check_lengths(s: Permutation, parities: Sequence[int]) -> None:
    validate_parity_vector(parities)
    if len(s) != len(parities):
        raise ValidationError(
            f"Permutation of length {len(s)} against parity vector of length {len(parities)}"
        )


def super_sign(s: Permutation, parities: Sequence[int]) -> int:
    """Envelope reordering sign.

    Product over inversions of (-1)^((p_s(i) + 1)(p_s(j) + 1)): reordering
    e_1...e_k into e_s(1)...e_s(k), e_i of parity p_i + 1, multiplies by it.

    Raises:
        ValidationError: If the lengths differ
    """
    _check_lengths(s, parities)
    values = s.act(parities)
    flips = sum((values[i] + 1) * (values[j] + 1) for i, j in s.inversions())
    return -1 if flips & 1 else 1


def koszul_sign(s: Permutation, parities: Sequence[int]) -> int:
    """Product over inversions of (-1)^(p_s(i) p_s(j)), the sign of the odd subpermutation."""
    _check_lengths(s, parities)
    values = s.act(parities)
    flips = sum(values[i] * values[j] for i, j in s.inversions())
    return -1 if flips & 1 else 1


def antisymmetrizer_sign(s: Permutation, parities: Sequence[int]) -> int:
    """sign(s) * sign(s'); reduces to sign(s) when all parities are even."""
    return s.sign * koszul_sign(s, parities)


def tensor_sign(s: Permutation, parities: Sequence[int]) -> int:
    """(-1)^(sum over i<j of p_s(i) (p_s(j) + 1)).

    Moving the envelope generators of e_s(1)...e_s(k) past the matrix factors
    costs this sign, so that
    generic_sign(P) * antisymmetrizer_sign(s, P) == tensor_sign(s, P) * super_sign(s, P).
    """
    _check_lengths(s, parities)
    values = s.act(parities)
    flips = 0
    for i in range(len(values)):
        if values[i]:
            flips += sum(values[j] + 1 for j in range(i + 1, len(values)))
    return -1 if flips & 1 else 1


def generic_sign(parities: Sequence[int]) -> int:
    """Global sign relating X^r coefficients to antisymmetrizers for pattern P."""
    return tensor_sign(Permutation.identity(len(parities)), parities)
