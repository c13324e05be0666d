"""Finite posets, downsets, local finiteness and the Möbius function.

Elements are opaque strings; internally every element is addressed by its
position in ``Poset.elements`` and the order is stored as one frozenset of
indices per element (its downset).  Nothing here allocates an n-by-n
structure, so posets with 10^5 elements and small downsets are cheap.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from fractions import Fraction
from functools import cached_property

from .errors import CycleError, SemilatError, UnknownElement

__all__ = [
    "Poset",
    "MobiusTable",
    "poset_from_leq",
    "downset",
    "local_finiteness_constant",
    "height",
    "mobius",
    "mobius_column",
]


class Poset:
    """An immutable finite partial order.

    Use :func:`poset_from_leq` for untrusted input; the constructor trusts
    ``downsets`` (``downsets[i]`` holds the indices ``j`` with
    ``elements[j] <= elements[i]``, including ``i`` itself).
    """

    __slots__ = ("elements", "index", "_down", "__dict__")

    def __init__(self, elements: Sequence[str], downsets: Sequence[Iterable[int]]):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise SemilatError("element identifiers must be distinct")
        self._down = tuple(frozenset(d) for d in downsets)
        if len(self._down) != len(self.elements):
            raise SemilatError("one downset per element is required")

    @classmethod
    def from_downsets(cls, elements, downsets, validate=True):
        """Build from explicit downsets, optionally checking the poset axioms."""
        P = cls(elements, downsets)
        if validate:
            P.check_axioms()
        return P

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._down == other._down

    def __hash__(self):
        return hash((self.elements, self._down))

    def __repr__(self):
        return f"Poset({len(self)} elements, {self.n_relations} relations)"

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def down_idx(self, i: int) -> frozenset[int]:
        return self._down[i]

    def leq(self, y: str, x: str) -> bool:
        """True iff ``y <= x``."""
        return self.idx(y) in self._down[self.idx(x)]

    def lt(self, y: str, x: str) -> bool:
        return y != x and self.leq(y, x)

    @property
    def n_relations(self) -> int:
        return sum(len(d) for d in self._down)

    @cached_property
    def relation(self) -> frozenset[tuple[str, str]]:
        """All pairs ``(y, x)`` with ``y <= x``."""
        E = self.elements
        return frozenset((E[j], E[i]) for i, d in enumerate(self._down) for j in d)

    @cached_property
    def _up(self) -> tuple[frozenset[int], ...]:
        up = [set() for _ in self.elements]
        for i, d in enumerate(self._down):
            for j in d:
                up[j].add(i)
        return tuple(frozenset(u) for u in up)

    def up_idx(self, i: int) -> frozenset[int]:
        return self._up[i]

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Indices sorted so that every element comes after everything below it."""
        # y < x forces |down(y)| < |down(x)|, so sorting by downset size works.
        return tuple(sorted(range(len(self)), key=lambda i: (len(self._down[i]), i)))

    def lower_covers_idx(self, i: int) -> list[int]:
        strict = [j for j in self._down[i] if j != i]
        return sorted(j for j in strict if not any(j in self._down[k] for k in strict if k != j))

    def minimal(self) -> list[str]:
        return [x for i, x in enumerate(self.elements) if len(self._down[i]) == 1]

    def maximal(self) -> list[str]:
        return [x for i, x in enumerate(self.elements) if len(self._up[i]) == 1]

    def restrict(self, subset: Iterable[str]) -> "Poset":
        """The induced order on ``subset``, listed in this poset's element order."""
        keep = sorted({self.idx(x) for x in subset})
        new = {old: new for new, old in enumerate(keep)}
        downs = [[new[j] for j in self._down[i] if j in new] for i in keep]
        return Poset([self.elements[i] for i in keep], downs)

    def check_axioms(self):
        """Raise unless the stored relation is reflexive, antisymmetric and transitive."""
        n = len(self)
        for i, d in enumerate(self._down):
            if i not in d:
                raise SemilatError(f"relation is not reflexive at {self.elements[i]!r}")
            for j in d:
                if not 0 <= j < n:
                    raise SemilatError(f"downset of {self.elements[i]!r} has bad index {j}")
                if j != i and i in self._down[j]:
                    raise CycleError(self.elements[j], self.elements[i])
                if not self._down[j] <= d:
                    raise SemilatError(
                        f"relation is not transitive below {self.elements[i]!r}"
                    )

    def zeta_matrix(self) -> list[list[int]]:
        """Dense 0/1 matrix with ``Z[y][x] = 1`` iff ``y <= x``."""
        n = len(self)
        Z = [[0] * n for _ in range(n)]
        for i, d in enumerate(self._down):
            for j in d:
                Z[j][i] = 1
        return Z


def poset_from_leq(elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Poset:
    """Reflexive-transitive closure of ``pairs`` (each ``(y, x)`` means ``y <= x``)."""
    elements = tuple(elements)
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise SemilatError("element identifiers must be distinct")
    below: list[set[int]] = [set() for _ in elements]
    for y, x in pairs:
        for z in (y, x):
            if z not in index:
                raise UnknownElement(z)
        below[index[x]].add(index[y])

    downs = []
    for i in range(len(elements)):
        seen = {i}
        stack = [i]
        while stack:
            for j in below[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        downs.append(seen)
    for i, d in enumerate(downs):
        for j in d:
            if j != i and i in downs[j]:
                raise CycleError(elements[j], elements[i])
    return Poset(elements, downs)


def downset(P: Poset, x: str) -> frozenset[str]:
    E = P.elements
    return frozenset(E[j] for j in P.down_idx(P.idx(x)))


def local_finiteness_constant(P: Poset) -> int:
    """Least C such that every downset has at most C elements."""
    return max((len(P.down_idx(i)) for i in range(len(P))), default=0)


def height(P: Poset) -> int:
    """Length of the longest chain counted in edges (a single point has height 0)."""
    if not len(P):
        return 0
    longest = [0] * len(P)
    for i in P.linear_extension:
        longest[i] = 1 + max((longest[j] for j in P.down_idx(i) if j != i), default=0)
    return max(longest) - 1


def mobius_column(P: Poset, i: int) -> dict[int, Fraction]:
    """``{j: mu(j, i)}`` over the downset of element index ``i``.

    Runs in O(|down(i)|^2) and touches nothing outside the downset.
    """
    D = P.down_idx(i)
    order = sorted(D, key=lambda j: (-len(P.down_idx(j)), j))
    col: dict[int, Fraction] = {}
    done: list[int] = []
    for j in order:
        if j == i:
            col[j] = Fraction(1)
        else:
            col[j] = -sum((col[z] for z in done if j in P.down_idx(z)), Fraction(0))
        done.append(j)
    return col


class MobiusTable(Mapping):
    """Möbius function of a poset as a mapping ``(y, x) -> mu(y, x)`` for ``y <= x``.

    Lookups of incomparable pairs raise ``KeyError``; :meth:`value` returns 0
    for them instead.
    """

    def __init__(self, poset: Poset, columns: Sequence[Mapping[int, Fraction]]):
        self.poset = poset
        self._cols = tuple(dict(c) for c in columns)

    def column_idx(self, i: int) -> dict[int, Fraction]:
        return self._cols[i]

    def column(self, x: str) -> dict[str, Fraction]:
        E = self.poset.elements
        col = self._cols[self.poset.idx(x)]
        return {E[j]: col[j] for j in sorted(col)}

    def value(self, y: str, x: str) -> Fraction:
        return self._cols[self.poset.idx(x)].get(self.poset.idx(y), Fraction(0))

    def __getitem__(self, pair):
        y, x = pair
        col = self._cols[self.poset.idx(x)]
        j = self.poset.idx(y)
        if j not in col:
            raise KeyError(pair)
        return col[j]

    def __iter__(self) -> Iterator[tuple[str, str]]:
        E = self.poset.elements
        for i, col in enumerate(self._cols):
            for j in sorted(col):
                yield (E[j], E[i])

    def __len__(self):
        return sum(len(c) for c in self._cols)

    def matrix(self) -> list[list[Fraction]]:
        """Dense matrix ``M[y][x] = mu(y, x)`` (0 when ``y`` is not below ``x``)."""
        n = len(self.poset)
        M = [[Fraction(0)] * n for _ in range(n)]
        for i, col in enumerate(self._cols):
            for j, v in col.items():
                M[j][i] = v
        return M


def mobius(P: Poset) -> MobiusTable:
    return MobiusTable(P, [mobius_column(P, i) for i in range(len(P))])
