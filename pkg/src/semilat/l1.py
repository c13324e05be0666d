"""Finitely supported exact-rational vectors on S and S x S.

Every carrier (semilattice, Clifford semigroup, block carrier, plain set)
exposes ``elements``, ``idx(name)`` and ``basis_mul(i, j)``, the product of
two basis vectors as a basis index or ``None`` for zero.  That covers the
convolution algebra of a semigroup (``e_s e_t = e_st``) and the pointwise
algebra of a set (``d_a d_b = d_a`` if ``a == b`` else 0) with one code path.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

from .errors import CarrierMismatch, NotUnital, SemilatError, UnknownElement
from .verdict import Verdict

__all__ = [
    "FiniteSet",
    "L1Vector",
    "TensorVector",
    "convolve",
    "pointwise_multiply",
    "multiply",
    "tensor_left_act",
    "tensor_right_act",
    "pi",
    "algebra_identity",
    "operator_norm_on_basis",
    "check_pointwise_diagonal_map",
    "format_fraction",
    "parse_fraction",
    "vector_to_text",
    "vector_from_text",
    "tensor_to_text",
    "tensor_from_text",
]


class FiniteSet:
    """A finite set with the pointwise algebra structure on its l1 space."""

    def __init__(self, elements: Iterable[str], name: str | None = None):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise SemilatError("element identifiers must be distinct")
        self.name = name

    @classmethod
    def of_size(cls, n: int) -> "FiniteSet":
        return cls([str(i) for i in range(n)], name=f"Omega({n})")

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteSet({len(self)})"

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def basis_mul(self, i: int, j: int) -> int | None:
        return i if i == j else None


def _compatible(c1, c2) -> bool:
    if c1 is c2:
        return True
    return isinstance(c1, FiniteSet) and isinstance(c2, FiniteSet) and c1.elements == c2.elements


def _check(c1, c2, what="operands"):
    if not _compatible(c1, c2):
        raise CarrierMismatch(f"{what} live on different carriers ({c1!r} vs {c2!r})")


def _clean(coeffs):
    return {k: Fraction(v) for k, v in coeffs.items() if v}


class _SparseBase:
    __slots__ = ("carrier", "coeffs")

    def __init__(self, carrier, coeffs: Mapping | None = None):
        self.carrier = carrier
        self.coeffs = _clean(coeffs or {})

    def _new(self, coeffs):
        return type(self)(self.carrier, coeffs)

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        _check(self.carrier, other.carrier)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self._new({k: v * c for k, v in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return _compatible(self.carrier, other.carrier) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def l1_norm(self) -> Fraction:
        return sum((abs(v) for v in self.coeffs.values()), Fraction(0))

    norm = l1_norm


class L1Vector(_SparseBase):
    """Sparse ``element index -> Fraction`` map; zero coefficients are dropped."""

    __slots__ = ()

    @classmethod
    def basis(cls, carrier, x: str) -> "L1Vector":
        return cls(carrier, {carrier.idx(x): 1})

    @classmethod
    def basis_idx(cls, carrier, i: int) -> "L1Vector":
        return cls(carrier, {i: 1})

    @classmethod
    def from_dict(cls, carrier, values: Mapping[str, object]) -> "L1Vector":
        out: dict[int, Fraction] = {}
        for x, v in values.items():
            i = carrier.idx(x)
            out[i] = out.get(i, 0) + Fraction(v)
        return cls(carrier, out)

    @classmethod
    def zero(cls, carrier) -> "L1Vector":
        return cls(carrier)

    def items(self):
        """``(element name, coefficient)`` pairs in carrier order."""
        E = self.carrier.elements
        return [(E[i], self.coeffs[i]) for i in sorted(self.coeffs)]

    def to_dict(self) -> dict[str, Fraction]:
        return dict(self.items())

    def __getitem__(self, x: str) -> Fraction:
        return self.coeffs.get(self.carrier.idx(x), Fraction(0))

    @property
    def support(self) -> frozenset[str]:
        E = self.carrier.elements
        return frozenset(E[i] for i in self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "L1Vector(0)"
        return "L1Vector(" + " + ".join(f"{v}*{x}" for x, v in self.items()) + ")"


class TensorVector(_SparseBase):
    """Sparse ``(index, index) -> Fraction`` map on the pair universe."""

    __slots__ = ()

    @classmethod
    def basis(cls, carrier, s: str, t: str) -> "TensorVector":
        return cls(carrier, {(carrier.idx(s), carrier.idx(t)): 1})

    @classmethod
    def outer(cls, a: L1Vector, b: L1Vector) -> "TensorVector":
        _check(a.carrier, b.carrier)
        return cls(
            a.carrier,
            {(i, j): u * v for i, u in a.coeffs.items() for j, v in b.coeffs.items()},
        )

    @classmethod
    def from_dict(cls, carrier, values: Mapping[tuple[str, str], object]) -> "TensorVector":
        out: dict[tuple[int, int], Fraction] = {}
        for (s, t), v in values.items():
            k = (carrier.idx(s), carrier.idx(t))
            out[k] = out.get(k, 0) + Fraction(v)
        return cls(carrier, out)

    def items(self):
        E = self.carrier.elements
        return [((E[i], E[j]), self.coeffs[(i, j)]) for i, j in sorted(self.coeffs)]

    def to_dict(self):
        return dict(self.items())

    def __getitem__(self, pair) -> Fraction:
        s, t = pair
        return self.coeffs.get((self.carrier.idx(s), self.carrier.idx(t)), Fraction(0))

    def __repr__(self):
        if not self.coeffs:
            return "TensorVector(0)"
        return "TensorVector(" + " + ".join(f"{v}*({s}⊗{t})" for (s, t), v in self.items()) + ")"


def _mul_generic(carrier, a: L1Vector, b: L1Vector) -> L1Vector:
    mul = carrier.basis_mul
    out: dict[int, Fraction] = {}
    for i, u in a.coeffs.items():
        for j, v in b.coeffs.items():
            k = mul(i, j)
            if k is not None:
                out[k] = out.get(k, 0) + u * v
    return L1Vector(carrier, out)


def convolve(S, a: L1Vector, b: L1Vector) -> L1Vector:
    """Product in the convolution algebra of ``S``: bilinear in ``e_s e_t = e_st``."""
    _check(a.carrier, S, "first factor and algebra")
    _check(b.carrier, S, "second factor and algebra")
    return _mul_generic(S, a, b)


def pointwise_multiply(a: L1Vector, b: L1Vector) -> L1Vector:
    """Coordinatewise product of coefficient functions."""
    _check(a.carrier, b.carrier)
    return L1Vector(
        a.carrier, {i: v * b.coeffs[i] for i, v in a.coeffs.items() if i in b.coeffs}
    )


def multiply(a: L1Vector, b: L1Vector) -> L1Vector:
    """Product in whatever algebra the shared carrier defines."""
    _check(a.carrier, b.carrier)
    return _mul_generic(a.carrier, a, b)


def tensor_left_act(S, x: str, T: TensorVector) -> TensorVector:
    """``e_x . e_(s,t) = e_(xs,t)``, extended linearly."""
    _check(T.carrier, S, "tensor and algebra")
    i = S.idx(x)
    mul = S.basis_mul
    out: dict[tuple[int, int], Fraction] = {}
    for (s, t), v in T.coeffs.items():
        k = mul(i, s)
        if k is not None:
            out[(k, t)] = out.get((k, t), 0) + v
    return TensorVector(S, out)


def tensor_right_act(S, x: str, T: TensorVector) -> TensorVector:
    """``e_(s,t) . e_x = e_(s,tx)``, extended linearly."""
    _check(T.carrier, S, "tensor and algebra")
    i = S.idx(x)
    mul = S.basis_mul
    out: dict[tuple[int, int], Fraction] = {}
    for (s, t), v in T.coeffs.items():
        k = mul(t, i)
        if k is not None:
            out[(s, k)] = out.get((s, k), 0) + v
    return TensorVector(S, out)


def pi(S, T: TensorVector) -> L1Vector:
    """Linearised product map ``e_s (x) e_t -> e_s e_t``."""
    _check(T.carrier, S, "tensor and algebra")
    mul = S.basis_mul
    out: dict[int, Fraction] = {}
    for (s, t), v in T.coeffs.items():
        k = mul(s, t)
        if k is not None:
            out[k] = out.get(k, 0) + v
    return L1Vector(S, out)


def algebra_identity(carrier) -> L1Vector:
    """The unit of the algebra defined by ``carrier``; raises :class:`NotUnital`."""
    if isinstance(carrier, FiniteSet):
        return L1Vector(carrier, {i: 1 for i in range(len(carrier))})
    unit = getattr(carrier, "identity_idx", None)
    if unit is None:
        raise NotUnital(f"{carrier!r} has no identity element")
    return L1Vector.basis_idx(carrier, unit)


def operator_norm_on_basis(images: Mapping[object, _SparseBase]) -> Fraction:
    """Norm of a linear map out of an l1 space: the largest norm of a basis image."""
    carrier = None
    best = Fraction(0)
    for v in images.values():
        if carrier is None:
            carrier = v.carrier
        else:
            _check(carrier, v.carrier, "basis images")
        n = v.l1_norm()
        if n > best:
            best = n
    return best


def _diag_sigma(omega: FiniteSet, i: int) -> TensorVector:
    return TensorVector(omega, {(i, i): 1})


def check_pointwise_diagonal_map(omega, sigma=None) -> Verdict:
    """Check that ``sigma`` is a splitting bimodule map for the pointwise algebra.

    ``omega`` is a :class:`FiniteSet` or a size; ``sigma(i)`` returns the
    image of ``d_i`` and defaults to ``d_i (x) d_i``.  Verifies, for all basis
    pairs, ``d_a . sigma(d_b) = sigma(d_a d_b) = sigma(d_b) . d_a`` and
    ``pi(sigma(d_w)) = d_w``.
    """
    name = "pointwise_diagonal_map"
    if not isinstance(omega, FiniteSet):
        omega = FiniteSet.of_size(int(omega))
    sigma = sigma or (lambda i: _diag_sigma(omega, i))
    E = omega.elements
    n = len(omega)
    images = [sigma(i) for i in range(n)]
    zero = TensorVector(omega)
    for a in range(n):
        for b in range(n):
            prod = omega.basis_mul(a, b)
            mid = images[prod] if prod is not None else zero
            left = tensor_left_act(omega, E[a], images[b])
            right = tensor_right_act(omega, E[a], images[b])
            if left != mid or right != mid:
                return Verdict.fail(name, f"bimodule property fails for ({E[a]}, {E[b]})")
    for w in range(n):
        if pi(omega, images[w]) != L1Vector(omega, {w: 1}):
            return Verdict.fail(name, f"pi(sigma(d_{E[w]})) != d_{E[w]}")
    return Verdict.ok(name, size=n)


# --- text serialisation ------------------------------------------------------


def format_fraction(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def vector_to_text(v: L1Vector) -> str:
    return "".join(f"{x} {format_fraction(c)}\n" for x, c in v.items())


def vector_from_text(carrier, text: str) -> L1Vector:
    vals: dict[str, Fraction] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        x, c = line.split()
        vals[x] = vals.get(x, 0) + parse_fraction(c)
    return L1Vector.from_dict(carrier, vals)


def tensor_to_text(T: TensorVector) -> str:
    return "".join(f"{s} {t} {format_fraction(c)}\n" for (s, t), c in T.items())


def tensor_from_text(carrier, text: str) -> TensorVector:
    vals: dict[tuple[str, str], Fraction] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        s, t, c = line.split()
        vals[(s, t)] = vals.get((s, t), 0) + parse_fraction(c)
    return TensorVector.from_dict(carrier, vals)
