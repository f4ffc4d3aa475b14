"""Sparse multiqubit Pauli operators without phase tracking.

Single-qubit Paulis are stored as symplectic bit pairs: bit 0 is the X
component and bit 1 the Z component, so ``Y = X | Z``. Two operators
anticommute exactly when the symplectic inner product of their bit vectors
is odd, which is all the graph-state test ever needs.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Iterator, Mapping, Sequence

from graphcheck.errors import SupportTooLarge

MAX_ENUMERATION_SUPPORT = 12


class SinglePauli(enum.IntEnum):
    I = 0
    X = 1
    Z = 2
    Y = 3

    @property
    def x(self) -> int:
        return self.value & 1

    @property
    def z(self) -> int:
        return self.value >> 1

    def __str__(self) -> str:
        return self.name


# Local enumeration order, also used by the canonical text form.
NON_IDENTITY = (SinglePauli.X, SinglePauli.Y, SinglePauli.Z)


def anticommutes_single(a: SinglePauli, b: SinglePauli) -> bool:
    """Return True iff two single-qubit Paulis anticommute."""
    return bool((a & 1) & (b >> 1) ^ (a >> 1) & (b & 1))


class SparsePauli(Mapping):
    """Immutable map from vertex id to a non-identity single-qubit Pauli.

    Missing vertices act as identity, so ``e[v]`` returns ``SinglePauli.I``
    for any ``v`` outside the support. Identity entries passed to the
    constructor are dropped.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, SinglePauli | str] | Iterable[tuple[int, SinglePauli | str]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[int, SinglePauli] = {}
        for vertex, op in items:
            op = SinglePauli[op] if isinstance(op, str) else SinglePauli(op)
            vertex = int(vertex)
            if vertex < 0:
                raise ValueError(f"vertex ids must be nonnegative, got {vertex}")
            if op is not SinglePauli.I:
                clean[vertex] = op
            else:
                clean.pop(vertex, None)
        self._terms = dict(sorted(clean.items()))
        self._hash: int | None = None

    @classmethod
    def identity(cls) -> SparsePauli:
        return cls()

    @classmethod
    def from_text(cls, text: str) -> SparsePauli:
        """Parse the canonical text form, e.g. ``"X3 Z7 Z9"``.

        The empty string (or ``"I"``) is the identity.
        """
        terms = {}
        for token in text.split():
            if token == "I":
                continue
            letter, digits = token[0], token[1:]
            if letter not in "XYZI" or not digits.isdigit():
                raise ValueError(f"bad Pauli token {token!r}")
            vertex = int(digits)
            if vertex in terms:
                raise ValueError(f"vertex {vertex} appears twice in {text!r}")
            terms[vertex] = SinglePauli[letter]
        return cls(terms)

    def __getitem__(self, vertex: int) -> SinglePauli:
        return self._terms.get(vertex, SinglePauli.I)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._terms

    def __iter__(self) -> Iterator[int]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePauli):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._terms)

    @property
    def weight(self) -> int:
        return len(self._terms)

    def __mul__(self, other: SparsePauli) -> SparsePauli:
        """Product up to a global phase (bitwise XOR of symplectic vectors)."""
        if not isinstance(other, SparsePauli):
            return NotImplemented
        merged = dict(self._terms)
        for vertex, op in other._terms.items():
            merged[vertex] = SinglePauli(merged.get(vertex, SinglePauli.I) ^ op)
        return SparsePauli(merged)

    def restrict(self, vertices: Iterable[int]) -> SparsePauli:
        keep = set(vertices)
        return SparsePauli({v: op for v, op in self._terms.items() if v in keep})

    def to_text(self) -> str:
        return " ".join(f"{op.name}{v}" for v, op in self._terms.items())

    def __str__(self) -> str:
        return self.to_text() or "I"

    def __repr__(self) -> str:
        return f"SparsePauli({self.to_text()!r})"


def anticommutes(e: SparsePauli, s: SparsePauli) -> bool:
    """Return True iff ``e`` and ``s`` anticommute.

    Only the overlap of the two supports matters; each site where both act
    with different non-identity Paulis contributes one sign flip.
    """
    small, large = (e, s) if len(e) <= len(s) else (s, e)
    flips = 0
    for vertex in small:
        if vertex in large:
            flips ^= anticommutes_single(small[vertex], large[vertex])
    return bool(flips)


def enumerate_on_support(support: Sequence[int], min_weight: int = 0) -> Iterator[SparsePauli]:
    """Yield every Pauli supported inside ``support`` with weight >= ``min_weight``.

    The order is lexicographic over positions of ``support`` (first position
    most significant) with the local order I < X < Y < Z.

    Raises:
        SupportTooLarge: if ``support`` has more than 12 sites.
    """
    support = list(support)
    if len(support) > MAX_ENUMERATION_SUPPORT:
        raise SupportTooLarge(
            f"enumeration over {len(support)} sites exceeds the cap of {MAX_ENUMERATION_SUPPORT}"
        )
    if len(set(support)) != len(support):
        raise ValueError("support contains repeated vertex ids")
    if min_weight < 0:
        raise ValueError("min_weight must be nonnegative")
    local = (SinglePauli.I,) + NON_IDENTITY
    for letters in itertools.product(local, repeat=len(support)):
        weight = sum(op is not SinglePauli.I for op in letters)
        if weight >= min_weight:
            yield SparsePauli(zip(support, letters))
