"""Finite semilattices given by multiplication tables, and example families.

A semilattice is stored as its element tuple, a product on element
indices, and the canonical order ``e <= f iff ef = e`` as a :class:`Poset`.
Table-backed semilattices keep a dense index table; the generated families
use closed-form products so that e.g. ``fan(10**5)`` never builds an
n-by-n table.
"""
from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from functools import cached_property
from itertools import combinations, permutations

from .errors import (
    IncompleteTable,
    NoMeet,
    NotAssociative,
    NotCommutative,
    NotIdempotent,
    NotMeet,
    SemilatError,
    UnknownElement,
    UnknownFamily,
)
from .l1 import FiniteSet
from .poset import Poset

__all__ = [
    "FiniteSemilattice",
    "semilattice_from_table",
    "semilattice_from_meet_poset",
    "downset_subsemilattice",
    "generate_family",
    "FAMILIES",
    "diamond",
    "enumerate_semilattices",
]

THETA = "theta"
ONE = "one"


class FiniteSemilattice:
    """A finite commutative idempotent semigroup with its canonical order."""

    def __init__(
        self,
        elements: Sequence[str],
        mul: Callable[[int, int], int],
        poset: Poset,
        *,
        table: list[list[int]] | None = None,
        name: str | None = None,
        notes: Sequence[str] = (),
    ):
        self.elements = tuple(elements)
        self.index = poset.index if poset.elements == self.elements else {
            x: i for i, x in enumerate(self.elements)
        }
        self.mul_idx = mul
        self.basis_mul = mul
        self.poset = poset
        self._table = table
        self.name = name
        self.notes = tuple(notes)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteSemilattice{label} |S|={len(self)}>"

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def mul(self, x: str, y: str) -> str:
        return self.elements[self.mul_idx(self.idx(x), self.idx(y))]

    @cached_property
    def underlying(self) -> FiniteSet:
        """The bare element set, carrying the pointwise algebra."""
        return FiniteSet(self.elements, name=f"Und({self.name or 'S'})")

    @property
    def table(self) -> list[list[int]]:
        """Dense index table; built on demand for closed-form families."""
        if self._table is None:
            n = len(self)
            self._table = [[self.mul_idx(i, j) for j in range(n)] for i in range(n)]
        return self._table

    @cached_property
    def zero_idx(self) -> int | None:
        n = len(self)
        for i in range(n):
            if len(self.poset.up_idx(i)) == n:
                return i
        return None

    @cached_property
    def identity_idx(self) -> int | None:
        n = len(self)
        for i in range(n):
            if len(self.poset.down_idx(i)) == n:
                return i
        return None

    @property
    def zero(self) -> str | None:
        i = self.zero_idx
        return None if i is None else self.elements[i]

    @property
    def identity(self) -> str | None:
        i = self.identity_idx
        return None if i is None else self.elements[i]

    @property
    def is_unital(self) -> bool:
        return self.identity_idx is not None

    def product_pairs(self):
        """Yield ``(x, y, xy)`` for unordered pairs ``x <= y`` in element order."""
        E = self.elements
        for i in range(len(E)):
            for j in range(i, len(E)):
                yield E[i], E[j], E[self.mul_idx(i, j)]

    def validate(self):
        """Exhaustive O(|S|^3) check of every semilattice axiom.

        Also checks that the stored order is the canonical one and that each
        product is the greatest lower bound of its factors.
        """
        n = len(self)
        E = self.elements
        m = self.table
        for i in range(n):
            if m[i][i] != i:
                raise NotIdempotent((E[i], E[i]), f"{E[i]}*{E[i]} = {E[m[i][i]]}")
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise NotCommutative(
                        (E[i], E[j]), f"{E[i]}*{E[j]} = {E[m[i][j]]} but {E[j]}*{E[i]} = {E[m[j][i]]}"
                    )
        for i in range(n):
            row = m[i]
            for j in range(n):
                ij = row[j]
                mij = m[ij]
                for k in range(n):
                    if mij[k] != row[m[j][k]]:
                        raise NotAssociative((E[i], E[j], E[k]))
        for y in range(n):
            expected = frozenset(x for x in range(n) if m[x][y] == x)
            if self.poset.down_idx(y) != expected:
                raise SemilatError(f"stored order disagrees with canonical order at {E[y]!r}")
        down = self.poset.down_idx
        for i in range(n):
            for j in range(i, n):
                p = m[i][j]
                common = down(i) & down(j)
                if p not in common or not common <= down(p):
                    raise NotMeet((E[i], E[j]), f"product {E[p]} is not the meet")
        return self


def _canonical_order_from_table(n, m) -> list[set[int]]:
    return [{x for x in range(n) if m[x][y] == x} for y in range(n)]


def semilattice_from_table(
    elements: Sequence[str],
    product: Mapping[tuple[str, str], str],
    *,
    symmetric: bool = False,
    name: str | None = None,
    validate: bool = True,
) -> FiniteSemilattice:
    """Validate a multiplication table and derive the canonical order.

    ``validate=False`` skips the cubic associativity and meet checks (for
    trusted generated input); totality, idempotency and commutativity are
    always checked.

    With ``symmetric=True`` each entry ``(x, y) -> z`` also fills ``(y, x)``
    (an explicit conflicting entry for ``(y, x)`` is reported as
    non-commutativity).
    """
    elements = tuple(elements)
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise SemilatError("element identifiers must be distinct")
    if not elements:
        raise SemilatError("a semilattice needs at least one element")
    n = len(elements)
    m: list[list[int | None]] = [[None] * n for _ in range(n)]

    def put(i, j, k):
        if m[i][j] is not None and m[i][j] != k:
            if symmetric:
                raise NotCommutative((elements[min(i, j)], elements[max(i, j)]))
            raise SemilatError(f"conflicting products for ({elements[i]}, {elements[j]})")
        m[i][j] = k

    for (x, y), z in product.items():
        for w in (x, y, z):
            if w not in index:
                raise UnknownElement(w)
        i, j, k = index[x], index[y], index[z]
        put(i, j, k)
        if symmetric:
            put(j, i, k)
    for i in range(n):
        for j in range(n):
            if m[i][j] is None:
                raise IncompleteTable(f"missing product {elements[i]} * {elements[j]}")

    # Idempotency and commutativity are checked before the order is derived so
    # the error names the broken axiom rather than a downstream symptom.
    for i in range(n):
        if m[i][i] != i:
            raise NotIdempotent((elements[i], elements[i]))
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise NotCommutative((elements[i], elements[j]))
    table = [list(row) for row in m]
    P = Poset(elements, _canonical_order_from_table(n, table))
    S = FiniteSemilattice(elements, lambda i, j: table[i][j], P, table=table, name=name)
    return S.validate() if validate else S


def semilattice_from_meet_poset(P: Poset, *, name: str | None = None) -> FiniteSemilattice:
    """The semilattice whose product is the meet of ``P``; raises :class:`NoMeet`."""
    n = len(P)
    E = P.elements
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = i
        for j in range(i + 1, n):
            common = P.down_idx(i) & P.down_idx(j)
            glb = [k for k in common if P.down_idx(k) >= common]
            if len(glb) != 1:
                raise NoMeet(E[i], E[j])
            m[i][j] = m[j][i] = glb[0]
    return FiniteSemilattice(E, lambda i, j: m[i][j], P, table=m, name=name)


def downset_subsemilattice(S: FiniteSemilattice, f: str) -> FiniteSemilattice:
    """Restriction of ``S`` to the principal ideal below ``f`` (unital, identity ``f``)."""
    i = S.idx(f)
    keep = sorted(S.poset.down_idx(i))
    new = {old: k for k, old in enumerate(keep)}
    sub = S.poset.restrict(S.elements[j] for j in keep)
    mul = S.mul_idx
    return FiniteSemilattice(
        sub.elements,
        lambda a, b: new[mul(keep[a], keep[b])],
        sub,
        name=f"down({f})" if S.name is None else f"{S.name}|down({f})",
    )


# --- families -------------------------------------------------------------


def _chain(n, labels, name):
    P = Poset(labels, [range(i + 1) for i in range(n)])
    return FiniteSemilattice(labels, min, P, name=name)


def chain(n: int) -> FiniteSemilattice:
    """``0 < 1 < ... < n-1`` with product ``min``."""
    return _chain(n, [str(i) for i in range(n)], f"chain({n})")


def nmin(n: int) -> FiniteSemilattice:
    """``{1, ..., n}`` with product ``min``: a truncation of (N, min)."""
    return _chain(n, [str(i) for i in range(1, n + 1)], f"nmin({n})")


def fan(n: int) -> FiniteSemilattice:
    """A zero ``theta`` plus ``n`` pairwise orthogonal idempotents ``a1..an``."""
    labels = [THETA] + [f"a{i}" for i in range(1, n + 1)]
    downs = [(0,)] + [(0, i) for i in range(1, n + 1)]
    P = Poset(labels, downs)
    return FiniteSemilattice(labels, lambda i, j: i if i == j else 0, P, name=f"fan({n})")


def fan_unital(n: int) -> FiniteSemilattice:
    """``fan(n)`` with an identity ``one`` adjoined on top."""
    labels = [THETA] + [f"a{i}" for i in range(1, n + 1)] + [ONE]
    top = n + 1
    downs = [(0,)] + [(0, i) for i in range(1, n + 1)] + [range(n + 2)]

    def mul(i, j):
        if i == j or j == top:
            return i
        if i == top:
            return j
        return 0

    return FiniteSemilattice(labels, mul, Poset(labels, downs), name=f"fan_unital({n})")


def paper_S(n: int) -> FiniteSemilattice:
    """Truncation of the semilattice on ``(N x {1,2}) + {theta}``.

    Elements are ``theta``, ``(m,1)`` for ``m = 1..2n`` and ``(r,2)`` for
    ``r = 1..n``; ``(2r-1,1)*(2r,1) = (r,2)``, each ``(r,2)`` lies below both
    of its generators, and every other product of distinct elements is
    ``theta``.
    """
    labels = [THETA] + [f"({m},1)" for m in range(1, 2 * n + 1)] + [f"({r},2)" for r in range(1, n + 1)]

    # index of (r,2) is 2n + r; index of (m,1) is m
    def low(i):
        return 2 * n + (i + 1) // 2

    def mul(i, j):
        if i == j:
            return i
        if i == 0 or j == 0:
            return 0
        if i > j:
            i, j = j, i
        if j <= 2 * n:
            # two first-row elements: meet is (r,2) only for a sibling pair
            return low(i) if i % 2 == 1 and j == i + 1 else 0
        if i <= 2 * n and low(i) == j:
            return j
        return 0

    downs = [(0,)] + [(0, low(m), m) for m in range(1, 2 * n + 1)] + [
        (0, 2 * n + r) for r in range(1, n + 1)
    ]
    note = (
        "maximal elements (2r-1,1) and (2r,1) lie above (r,2) and theta, so their "
        "downsets have 3 elements; the computed local finiteness constant is 3, not 2"
    )
    return FiniteSemilattice(labels, mul, Poset(labels, downs), name=f"paper_S({n})", notes=[note])


def diamond() -> FiniteSemilattice:
    """``theta < a, b < one`` with ``a*b = theta``."""
    labels = [THETA, "a", "b", ONE]
    P = Poset(labels, [(0,), (0, 1), (0, 2), (0, 1, 2, 3)])
    return semilattice_from_meet_poset(P, name="diamond")


FAMILIES: dict[str, Callable[[int], FiniteSemilattice]] = {
    "chain": chain,
    "fan": fan,
    "fan_unital": fan_unital,
    "nmin": nmin,
    "paper_S": paper_S,
}


def generate_family(name: str, n: int, *, validate: bool = False) -> FiniteSemilattice:
    """Build a member of a named family; ``validate`` runs the O(|S|^3) check."""
    try:
        build = FAMILIES[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    if n < 1:
        raise ValueError("family size parameter must be >= 1")
    S = build(n)
    return S.validate() if validate else S


# --- exhaustive enumeration ------------------------------------------------


def _canonical_key(n, downs):
    # downs[0] is the bottom, fixed by every isomorphism
    best = None
    for perm in permutations(range(1, n)):
        p = (0,) + perm
        key = tuple(sorted((p[j], p[i]) for i in range(n) for j in downs[i]))
        if best is None or key < best:
            best = key
    return best


def enumerate_semilattices(n: int, *, unital_only: bool = False) -> list[FiniteSemilattice]:
    """All semilattices on ``n`` elements, one per isomorphism class.

    A finite semilattice has a bottom, so it is enumerated as a bottom
    ``e0`` below a naturally labelled poset on ``e1..e{n-1}``, keeping the
    orders in which every pair has a meet.
    """
    if n < 1:
        return []
    labels = [f"e{i}" for i in range(n)]
    cand = list(combinations(range(1, n), 2))
    seen = set()
    out = []
    for mask in range(1 << len(cand)):
        rel = {cand[b] for b in range(len(cand)) if mask >> b & 1}
        if any((i, k) not in rel for (i, j) in rel for (jj, k) in rel if j == jj):
            continue
        downs = [{0}] + [{0, i} | {a for (a, b) in rel if b == i} for i in range(1, n)]
        if unital_only and not any(len(d) == n for d in downs):
            continue
        key = _canonical_key(n, downs)
        if key in seen:
            continue
        seen.add(key)
        try:
            S = semilattice_from_meet_poset(Poset(labels, downs), name=f"enum{n}#{len(out)}")
        except NoMeet:
            continue
        out.append(S)
    return out
