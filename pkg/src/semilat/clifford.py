"""Clifford semigroups as strong semilattices of finite groups.

A Clifford semigroup is given by a semilattice ``L``, a finite group
``G(x)`` for each ``x`` in ``L`` and structure homomorphisms
``phi[x -> y]: G(x) -> G(y)`` for ``y <= x``.  The product of ``s`` in
``G(e)`` and ``t`` in ``G(f)`` is ``phi[e -> ef](s) * phi[f -> ef](t)``.
Only the maps for covering pairs need to be supplied; the rest are
composed and cross-checked.
"""
from __future__ import annotations

import random
from collections.abc import Mapping, Sequence
from fractions import Fraction
from functools import cached_property
from itertools import permutations

from .errors import (
    CarrierMismatch,
    GroupAxiomError,
    SemilatError,
    StructureMapError,
    UnknownComponent,
    UnknownElement,
)
from .l1 import L1Vector, _compatible, multiply
from .poset import Poset, local_finiteness_constant, mobius_column
from .semilattice import FiniteSemilattice
from .verdict import Verdict

__all__ = [
    "FiniteGroup",
    "cyclic",
    "symmetric",
    "trivial",
    "group_from_spec",
    "CliffordSemigroup",
    "BlockCarrier",
    "BlockVector",
    "clifford_multiply",
    "q_map",
    "natural_order",
    "block_multiply",
    "schutz_clifford",
    "schutz_clifford_inverse",
    "retraction_check",
    "clifford_verify",
]

EXHAUSTIVE_LIMIT = 24


class FiniteGroup:
    """A finite group given by its Cayley table on element indices."""

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[int]], name=None):
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise SemilatError("group element identifiers must be distinct")
        self.table = tuple(tuple(r) for r in table)
        self.name = name
        self.identity_idx = self._validate()

    @classmethod
    def from_products(cls, elements, products: Mapping[tuple[str, str], str], name=None):
        index = {g: i for i, g in enumerate(elements)}
        n = len(index)
        rows = [[None] * n for _ in range(n)]
        for (g, h), gh in products.items():
            for w in (g, h, gh):
                if w not in index:
                    raise UnknownElement(w)
            rows[index[g]][index[h]] = index[gh]
        if any(v is None for r in rows for v in r):
            raise GroupAxiomError((), "Cayley table is not total")
        return cls(elements, rows, name=name)

    def _validate(self) -> int:
        n = len(self.elements)
        E, m = self.elements, self.table
        if n == 0:
            raise GroupAxiomError((), "a group needs an identity")
        if len(m) != n or any(len(r) != n or not all(0 <= v < n for v in r) for r in m):
            raise GroupAxiomError((), "Cayley table must be square over the elements")
        units = [e for e in range(n) if all(m[e][g] == g == m[g][e] for g in range(n))]
        if not units:
            raise GroupAxiomError((), "no identity element")
        e = units[0]
        for g in range(n):
            if not any(m[g][h] == e == m[h][g] for h in range(n)):
                raise GroupAxiomError((E[g],), "no two-sided inverse")
        for a in range(n):
            for b in range(n):
                ab = m[a][b]
                for c in range(n):
                    if m[ab][c] != m[a][m[b][c]]:
                        raise GroupAxiomError((E[a], E[b], E[c]), "not associative")
        return e

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name or len(self)})"

    @property
    def identity(self) -> str:
        return self.elements[self.identity_idx]

    def idx(self, g: str) -> int:
        try:
            return self.index[g]
        except KeyError:
            raise UnknownElement(g) from None

    def mul_idx(self, a: int, b: int) -> int:
        return self.table[a][b]

    def mul(self, g: str, h: str) -> str:
        return self.elements[self.table[self.idx(g)][self.idx(h)]]


def cyclic(k: int) -> FiniteGroup:
    """``Z/k`` on labels ``0..k-1``."""
    if k < 1:
        raise ValueError("cyclic group order must be >= 1")
    return FiniteGroup([str(i) for i in range(k)], [[(i + j) % k for j in range(k)] for i in range(k)], f"cyclic({k})")


def trivial() -> FiniteGroup:
    return FiniteGroup(["e"], [[0]], "trivial")


def symmetric(n: int) -> FiniteGroup:
    """Permutations of ``0..n-1`` written as digit strings; ``(pq)(i) = p(q(i))``."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(["".join(map(str, p)) for p in perms], table, f"symmetric({n})")


def group_from_spec(spec: str) -> FiniteGroup:
    """Parse ``trivial``, ``cyclic(k)``, ``symmetric(n)`` or ``table r1;r2;...``.

    In the table form each row is comma separated and the first row lists the
    elements (so the first element must be the identity).
    """
    spec = spec.strip()
    if spec == "trivial":
        return trivial()
    for prefix, build in (("cyclic(", cyclic), ("symmetric(", symmetric)):
        if spec.startswith(prefix) and spec.endswith(")"):
            return build(int(spec[len(prefix):-1]))
    if spec.startswith("table"):
        rows = [r.split(",") for r in spec[len("table"):].replace(" ", "").split(";") if r]
        elements = rows[0]
        products = {(elements[i], elements[j]): rows[i][j] for i in range(len(rows)) for j in range(len(rows[i]))}
        return FiniteGroup.from_products(elements, products, name="table")
    raise SemilatError(f"unrecognised group spec {spec!r}")


class CliffordSemigroup:
    """A strong semilattice of finite groups, validated on construction.

    ``phi`` maps ``(x, y)`` (names, ``y < x``) to a dict ``g -> h`` between
    group element names.  Every covering pair needs a map unless the lower
    group is trivial; maps for non-covering pairs are optional and checked
    against the composites.
    """

    def __init__(
        self,
        L: FiniteSemilattice,
        groups: Mapping[str, FiniteGroup] | None = None,
        phi: Mapping[tuple[str, str], Mapping[str, str]] | None = None,
        *,
        name: str | None = None,
        validate: bool = True,
    ):
        self.L = L
        self.name = name
        groups = dict(groups or {})
        for x in groups:
            L.idx(x)
        self.groups = tuple(groups.get(x) or trivial() for x in L.elements)
        self._phi = self._build_phi(dict(phi or {}))

        names, comp, pos, offset = [], [], [], []
        for xi, G in enumerate(self.groups):
            offset.append(len(names))
            for gi, g in enumerate(G.elements):
                names.append(f"{L.elements[xi]}:{g}")
                comp.append(xi)
                pos.append(gi)
        self.elements = tuple(names)
        self.index = {s: i for i, s in enumerate(names)}
        self.component = tuple(comp)
        self.position = tuple(pos)
        self.offset = tuple(offset)
        if validate:
            self.validate()

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<CliffordSemigroup {self.name or ''} |G|={len(self)} |L|={len(self.L)}>"

    def idx(self, t: str) -> int:
        try:
            return self.index[t]
        except KeyError:
            raise UnknownElement(t) from None

    def group(self, x: str) -> FiniteGroup:
        try:
            return self.groups[self.L.index[x]]
        except KeyError:
            raise UnknownComponent(x) from None

    def element(self, x: str, g: str) -> str:
        """Name of ``g`` in ``G(x)`` as an element of the semigroup."""
        G = self.group(x)
        G.idx(g)
        return f"{x}:{g}"

    def idempotent_idx(self, xi: int) -> int:
        return self.offset[xi] + self.groups[xi].identity_idx

    def idempotent(self, x: str) -> str:
        return self.elements[self.idempotent_idx(self.L.idx(x))]

    def phi(self, x: str, y: str) -> dict[str, str]:
        xi, yi = self.L.idx(x), self.L.idx(y)
        if (xi, yi) not in self._phi:
            raise StructureMapError(f"{y} is not below {x}")
        Gx, Gy = self.groups[xi], self.groups[yi]
        return {Gx.elements[a]: Gy.elements[b] for a, b in enumerate(self._phi[(xi, yi)])}

    def _parse_map(self, xi, yi, mapping):
        Gx, Gy = self.groups[xi], self.groups[yi]
        L = self.L.elements
        out = [None] * len(Gx)
        for g, h in mapping.items():
            out[Gx.idx(g)] = Gy.idx(h)
        if any(v is None for v in out):
            raise StructureMapError(f"phi[{L[xi]}->{L[yi]}] is not defined on all of G({L[xi]})")
        for a in range(len(Gx)):
            for b in range(len(Gx)):
                if out[Gx.mul_idx(a, b)] != Gy.mul_idx(out[a], out[b]):
                    raise StructureMapError(
                        f"phi[{L[xi]}->{L[yi]}] is not a homomorphism at "
                        f"({Gx.elements[a]}, {Gx.elements[b]})"
                    )
        return tuple(out)

    def _build_phi(self, given):
        L, P = self.L, self.L.poset
        E = L.elements
        maps: dict[tuple[int, int], tuple[int, ...]] = {}
        explicit = {}
        for (x, y), mp in given.items():
            xi, yi = L.idx(x), L.idx(y)
            if xi == yi or yi not in P.down_idx(xi):
                raise StructureMapError(f"phi[{x}->{y}] given but {y} is not strictly below {x}")
            explicit[(xi, yi)] = self._parse_map(xi, yi, mp)
        for xi in P.linear_extension:
            Gx = self.groups[xi]
            maps[(xi, xi)] = tuple(range(len(Gx)))
            covers = P.lower_covers_idx(xi)
            for c in covers:
                if (xi, c) in explicit:
                    maps[(xi, c)] = explicit[(xi, c)]
                elif len(self.groups[c]) == 1:
                    maps[(xi, c)] = (0,) * len(Gx)
                else:
                    raise StructureMapError(f"missing structure map phi[{E[xi]}->{E[c]}]")
            for yi in P.down_idx(xi):
                if yi == xi or yi in covers:
                    continue
                found = None
                for c in covers:
                    if yi in P.down_idx(c):
                        first, second = maps[(xi, c)], maps[(c, yi)]
                        comp = tuple(second[first[a]] for a in range(len(Gx)))
                        if found is None:
                            found = comp
                        elif comp != found:
                            raise StructureMapError(
                                f"composites {E[xi]}->{E[yi]} through different covers disagree"
                            )
                maps[(xi, yi)] = found
            for yi in P.down_idx(xi):
                if (xi, yi) in explicit and explicit[(xi, yi)] != maps[(xi, yi)]:
                    raise StructureMapError(
                        f"given phi[{E[xi]}->{E[yi]}] disagrees with the composite of cover maps"
                    )
        # the path-independence above enforces phi[y->z] o phi[x->y] = phi[x->z]
        return maps

    def basis_mul(self, i: int, j: int) -> int:
        e, f = self.component[i], self.component[j]
        ef = self.L.mul_idx(e, f)
        s = self._phi[(e, ef)][self.position[i]]
        t = self._phi[(f, ef)][self.position[j]]
        return self.offset[ef] + self.groups[ef].mul_idx(s, t)

    def mul(self, s: str, t: str) -> str:
        return self.elements[self.basis_mul(self.idx(s), self.idx(t))]

    def validate(self, *, samples: int = 20000, seed: int = 0):
        """Check associativity: exhaustively up to 24 elements, sampled beyond."""
        n = len(self)
        mul = self.basis_mul
        E = self.elements
        if n <= EXHAUSTIVE_LIMIT:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                raise StructureMapError(f"product is not associative at {(E[a], E[b], E[c])}")
        return self

    @cached_property
    def block(self) -> "BlockCarrier":
        return BlockCarrier(self)

    @cached_property
    def order(self) -> Poset:
        return natural_order(self)


class BlockCarrier:
    """Basis of the l1-sum of the component group algebras.

    Shares element names with its semigroup; only the product differs.
    """

    def __init__(self, G: CliffordSemigroup):
        self.semigroup = G
        self.elements = G.elements
        self.index = G.index

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"BlockCarrier({self.semigroup!r})"

    idx = CliffordSemigroup.idx

    def basis_mul(self, i: int, j: int) -> int | None:
        G = self.semigroup
        x = G.component[i]
        if x != G.component[j]:
            return None
        return G.offset[x] + G.groups[x].mul_idx(G.position[i], G.position[j])


class BlockVector(L1Vector):
    """Sparse vector on the block algebra."""

    __slots__ = ()

    def components(self) -> dict[str, dict[str, Fraction]]:
        """``{x: {g: coeff}}`` grouped by component, in canonical order."""
        G = self.carrier.semigroup
        out: dict[str, dict[str, Fraction]] = {}
        for i in sorted(self.coeffs):
            xi = G.component[i]
            x = G.L.elements[xi]
            g = G.groups[xi].elements[G.position[i]]
            out.setdefault(x, {})[g] = self.coeffs[i]
        return out


def clifford_multiply(G: CliffordSemigroup, s: str, t: str) -> str:
    return G.mul(s, t)


def q_map(G: CliffordSemigroup, t: str) -> str:
    """The idempotent indexing the component that contains ``t``."""
    return G.L.elements[G.component[G.idx(t)]]


def natural_order(G: CliffordSemigroup) -> Poset:
    """``s <= t`` iff ``s = t x`` for some idempotent ``x``, validated as a poset."""
    idem = [G.idempotent_idx(x) for x in range(len(G.L))]
    downs = [{G.basis_mul(t, e) for e in idem} for t in range(len(G))]
    return Poset.from_downsets(G.elements, downs, validate=True)


def _require(v, carrier, what):
    if not _compatible(v.carrier, carrier):
        raise CarrierMismatch(f"{what} must live on {carrier!r}, got {v.carrier!r}")


def block_multiply(G: CliffordSemigroup, a: L1Vector, b: L1Vector) -> BlockVector:
    _require(a, G.block, "first factor")
    _require(b, G.block, "second factor")
    return BlockVector(G.block, multiply(a, b).coeffs)


def schutz_clifford(G: CliffordSemigroup, a: L1Vector) -> BlockVector:
    """``e_t -> sum of d_s over s <= t`` in the natural order; lands in the block algebra."""
    _require(a, G, "argument")
    down = G.order.down_idx
    out: dict[int, Fraction] = {}
    for t, v in a.coeffs.items():
        for s in down(t):
            out[s] = out.get(s, 0) + v
    return BlockVector(G.block, out)


def schutz_clifford_inverse(G: CliffordSemigroup, b: L1Vector) -> L1Vector:
    """Möbius inversion inside each downset of the natural order."""
    _require(b, G.block, "argument")
    P = G.order
    out: dict[int, Fraction] = {}
    for x, v in b.coeffs.items():
        keep = sorted(P.down_idx(x))
        local = P.restrict(P.elements[j] for j in keep)
        for y, m in mobius_column(local, keep.index(x)).items():
            g = keep[y]
            out[g] = out.get(g, 0) + m * v
    return L1Vector(G, out)


def retraction_check(G: CliffordSemigroup) -> Verdict:
    """``e_t -> e_q(t)`` is multiplicative and fixes the embedded semilattice."""
    name = "retraction"
    L = G.L
    comp = G.component
    for s in range(len(G)):
        for t in range(len(G)):
            if comp[G.basis_mul(s, t)] != L.mul_idx(comp[s], comp[t]):
                return Verdict.fail(name, f"q is not multiplicative at ({G.elements[s]}, {G.elements[t]})")
    for x in range(len(L)):
        if comp[G.idempotent_idx(x)] != x:
            return Verdict.fail(name, f"q does not fix {L.elements[x]}")
    return Verdict.ok(name)


def clifford_verify(G: CliffordSemigroup) -> list[Verdict]:
    """Run every structural check on ``G``; construction has validated the input."""
    V: list[Verdict] = [Verdict.ok("clifford_valid")]
    E = G.elements
    n = len(G)
    L = G.L
    mul = G.basis_mul
    comp = G.component

    bad = None
    for s in range(n):
        if mul(s, G.idempotent_idx(comp[s])) != s or mul(G.idempotent_idx(comp[s]), s) != s:
            bad = f"t q(t) != t at {E[s]}"
            break
        for t in range(n):
            if comp[mul(s, t)] != L.mul_idx(comp[s], comp[t]):
                bad = f"q(st) != q(s)q(t) at ({E[s]}, {E[t]})"
                break
        if bad:
            break
    V.append(Verdict.fail("q_homomorphism", bad) if bad else Verdict.ok("q_homomorphism"))

    P = G.order
    idem = [G.idempotent_idx(x) for x in range(len(L))]
    ok = all(
        (idem[y] in P.down_idx(idem[x])) == (y in L.poset.down_idx(x))
        for x in range(len(L)) for y in range(len(L))
    )
    V.append(Verdict.ok("order_restricts_to_L") if ok else Verdict.fail("order_restricts_to_L", "mismatch"))

    bad = None
    for t in range(n):
        formula = {mul(t, idem[f]) for f in L.poset.down_idx(comp[t])}
        if formula != set(P.down_idx(t)):
            bad = f"downset of {E[t]}"
            break
        per = {}
        for s in P.down_idx(t):
            per.setdefault(comp[s], []).append(s)
        if any(len(v) > 1 or v[0] != mul(t, idem[f]) for f, v in per.items()):
            bad = f"component meets downset of {E[t]} twice"
            break
    V.append(Verdict.fail("downset_formula", bad) if bad else Verdict.ok("downset_formula"))

    cL, cG = local_finiteness_constant(L.poset), local_finiteness_constant(P)
    V.append(
        Verdict.ok("local_finiteness_preserved") if cL == cG
        else Verdict.fail("local_finiteness_preserved", f"{cG} != {cL}")
    )

    images = [schutz_clifford(G, L1Vector.basis_idx(G, t)) for t in range(n)]
    bad = None
    for s in range(n):
        for t in range(n):
            lhs = schutz_clifford(G, L1Vector.basis_idx(G, mul(s, t)))
            if lhs != block_multiply(G, images[s], images[t]):
                bad = f"({E[s]}, {E[t]})"
                break
        if bad:
            break
    V.append(Verdict.fail("sigma_homomorphism", bad) if bad else Verdict.ok("sigma_homomorphism"))

    bad = None
    for i in range(n):
        if schutz_clifford_inverse(G, images[i]) != L1Vector.basis_idx(G, i):
            bad = f"left inverse fails at e_{E[i]}"
            break
        d = BlockVector(G.block, {i: 1})
        if schutz_clifford(G, schutz_clifford_inverse(G, d)) != d:
            bad = f"right inverse fails at d_{E[i]}"
            break
    V.append(Verdict.fail("sigma_invertible", bad) if bad else Verdict.ok("sigma_invertible"))
    V.append(retraction_check(G))
    return V
