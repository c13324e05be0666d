"""Schützenberger representation of a finite semilattice and its certificate.

``sigma`` sends the basis vector ``e_t`` of the convolution algebra to the
indicator of the downset of ``t``, viewed in the pointwise algebra on the
underlying set.  Its inverse is Möbius inversion.  Everything is exact.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import CarrierMismatch, NoDiagonal, NotUnital, NoZeroElement
from .l1 import (
    FiniteSet,
    L1Vector,
    TensorVector,
    _compatible,
    algebra_identity,
    convolve,
    format_fraction,
    operator_norm_on_basis,
    pi,
    tensor_left_act,
    tensor_right_act,
)
from .linsolve import solve
from .poset import MobiusTable, local_finiteness_constant, mobius, mobius_column
from .semilattice import FiniteSemilattice
from .verdict import Verdict

__all__ = [
    "SchutzContext",
    "CertificateReport",
    "DiagonalSolution",
    "schutz_apply",
    "schutz_inverse_apply",
    "rho",
    "verify_rho_identity",
    "mm_apply",
    "diagonal",
    "diagonal_bruteforce",
    "check_diagonal_axioms",
    "schutz_kernel_dimension",
    "certificate",
]

DEFAULT_ORACLE_BOUND = 6


class SchutzContext:
    """A semilattice together with its order data, computed once.

    The global Möbius table is built lazily, so the local route
    (:func:`mm_apply`) never pays for it.
    """

    def __init__(self, S: FiniteSemilattice):
        self.S = S
        self.P = S.poset

    @cached_property
    def mu(self) -> MobiusTable:
        return mobius(self.P)

    @cached_property
    def C(self) -> int:
        return local_finiteness_constant(self.P)

    @property
    def target(self) -> FiniteSet:
        return self.S.underlying

    def __repr__(self):
        return f"SchutzContext({self.S!r})"


def _as_ctx(ctx) -> SchutzContext:
    return ctx if isinstance(ctx, SchutzContext) else SchutzContext(ctx)


def _require(v, carrier, what):
    if not _compatible(v.carrier, carrier):
        raise CarrierMismatch(f"{what} must live on {carrier!r}, got {v.carrier!r}")


def schutz_apply(ctx, a: L1Vector) -> L1Vector:
    """``e_t -> sum of d_s over s <= t``, extended linearly."""
    ctx = _as_ctx(ctx)
    _require(a, ctx.S, "argument of sigma")
    down = ctx.P.down_idx
    out: dict[int, Fraction] = {}
    for t, v in a.coeffs.items():
        for s in down(t):
            out[s] = out.get(s, 0) + v
    return L1Vector(ctx.target, out)


def schutz_inverse_apply(ctx, b: L1Vector) -> L1Vector:
    """``d_x -> sum_{y <= x} mu(y, x) e_y`` using the global Möbius table."""
    ctx = _as_ctx(ctx)
    _require(b, ctx.target, "argument of sigma^-1")
    out: dict[int, Fraction] = {}
    for x, v in b.coeffs.items():
        for y, m in ctx.mu.column_idx(x).items():
            out[y] = out.get(y, 0) + m * v
    return L1Vector(ctx.S, out)


def mm_apply(ctx, b: L1Vector) -> L1Vector:
    """Local inverse of sigma: each ``d_x`` is inverted inside its own downset.

    Only the order induced on the downset of ``x`` is consulted, so the cost
    is O(|support| * C^2) whatever the size of the semilattice.
    """
    ctx = _as_ctx(ctx)
    _require(b, ctx.target, "argument of MM")
    P = ctx.P
    out: dict[int, Fraction] = {}
    for x, v in b.coeffs.items():
        keep = sorted(P.down_idx(x))
        local = P.restrict(P.elements[j] for j in keep)
        top = keep.index(x)
        for y, m in mobius_column(local, top).items():
            g = keep[y]
            out[g] = out.get(g, 0) + m * v
    return L1Vector(ctx.S, out)


def rho(ctx, t: str) -> L1Vector:
    """The idempotent ``prod_{x < t} (e_t - e_x)`` (``e_theta`` at the zero)."""
    ctx = _as_ctx(ctx)
    S = ctx.S
    if S.zero_idx is None:
        raise NoZeroElement(f"{S!r} has no zero element")
    i = S.idx(t)
    if i == S.zero_idx:
        return L1Vector.basis_idx(S, i)
    # every factor lies in the ideal below t, so the running product does too
    acc = L1Vector.basis_idx(S, i)
    for x in sorted(ctx.P.down_idx(i)):
        if x != i:
            acc = convolve(S, acc, L1Vector(S, {i: 1, x: -1}))
    return acc


def verify_rho_identity(ctx) -> Verdict:
    """``sigma(rho_t) = d_t`` and ``rho_t * rho_t = rho_t`` for every ``t``."""
    ctx = _as_ctx(ctx)
    S = ctx.S
    name = "rho_identity"
    for t in S.elements:
        r = rho(ctx, t)
        image = schutz_apply(ctx, r)
        want = L1Vector.basis(ctx.target, t)
        if image != want:
            return Verdict.fail(name, f"t={t}: sigma(rho_t)={image.to_dict()} != d_t")
        if convolve(S, r, r) != r:
            return Verdict.fail(name, f"t={t}: rho_t is not idempotent")
    return Verdict.ok(name, checked=len(S))


def diagonal(ctx) -> TensorVector:
    """``sum_x sigma^-1(d_x) (x) sigma^-1(d_x)``; raises :class:`NotUnital`."""
    ctx = _as_ctx(ctx)
    if not ctx.S.is_unital:
        raise NotUnital(f"{ctx.S!r} has no identity")
    out: dict[tuple[int, int], Fraction] = {}
    for x in range(len(ctx.S)):
        col = ctx.mu.column_idx(x)
        for s, u in col.items():
            for t, v in col.items():
                out[(s, t)] = out.get((s, t), 0) + u * v
    return TensorVector(ctx.S, out)


def check_diagonal_axioms(A, D: TensorVector) -> Verdict:
    """``e_f . D = D . e_f`` for every basis ``f`` and ``pi(D)`` is the unit."""
    name = "diagonal_axioms"
    for f in A.elements:
        if tensor_left_act(A, f, D) != tensor_right_act(A, f, D):
            return Verdict.fail(name, f"e_{f} does not commute with the diagonal")
    if pi(A, D) != algebra_identity(A):
        return Verdict.fail(name, "pi(diagonal) is not the identity")
    return Verdict.ok(name)


@dataclass(frozen=True)
class DiagonalSolution:
    diagonal: TensorVector
    unique: bool
    nullity: int


def diagonal_bruteforce(A, bound: int = DEFAULT_ORACLE_BOUND) -> DiagonalSolution:
    """Solve the diagonal equations directly as a rational linear system.

    ``A`` is any finite carrier with ``basis_mul`` (a semilattice, or a
    :class:`FiniteSet` for the pointwise algebra).  Unknowns are the n^2
    coefficients of the diagonal; constraints are ``e_f . D - D . e_f = 0``
    for every ``f`` together with ``pi(D) = 1``.
    """
    n = len(A)
    if n > bound:
        raise ValueError(f"oracle bound is {bound}, algebra has dimension {n}")
    unit = algebra_identity(A)
    mul = A.basis_mul
    rows: dict[tuple, dict[int, int]] = {}

    def add(key, col, c):
        row = rows.setdefault(key, {})
        row[col] = row.get(col, 0) + c

    for s in range(n):
        for t in range(n):
            col = s * n + t
            for f in range(n):
                fs = mul(f, s)
                tf = mul(t, f)
                if fs is not None:
                    add(("comm", f, fs, t), col, 1)
                if tf is not None:
                    add(("comm", f, s, tf), col, -1)
            st = mul(s, t)
            if st is not None:
                add(("pi", st), col, 1)
    for k in range(n):
        rows.setdefault(("pi", k), {})
    equations = [
        (row, unit.coeffs.get(key[1], 0) if key[0] == "pi" else 0)
        for key, row in sorted(rows.items(), key=lambda kv: repr(kv[0]))
    ]
    sol = solve(equations, n * n)
    if not sol.consistent:
        raise NoDiagonal(f"{A!r}: diagonal equations are inconsistent")
    D = TensorVector(A, {divmod(c, n): v for c, v in sol.particular.items()})
    return DiagonalSolution(D, sol.unique, sol.nullity)


def schutz_kernel_dimension(ctx) -> int:
    """Dimension of the kernel of sigma, by exact elimination of its matrix."""
    ctx = _as_ctx(ctx)
    rows = [{s: 1 for s in ctx.P.down_idx(t)} for t in range(len(ctx.S))]
    # rows of the transpose have the same rank
    return len(ctx.S) - solve(((r, 0) for r in rows), len(ctx.S)).rank


# --- certificate -------------------------------------------------------------


def _fmt(q):
    return None if q is None else format_fraction(q)


@dataclass
class CertificateReport:
    name: str
    size: int
    C: int
    unital: bool
    zero: str | None
    identity: str | None
    norm_sigma: Fraction
    norm_sigma_inv: Fraction
    two_pow_C_minus_1: Fraction
    two_pow_L_minus_1: Fraction
    norm_delta: Fraction | None = None
    mobius_square_sum: Fraction | None = None
    verdicts: list[Verdict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "size": self.size,
            "local_finiteness_constant": self.C,
            "unital": self.unital,
            "zero": self.zero,
            "identity": self.identity,
            "norm_sigma": _fmt(self.norm_sigma),
            "norm_sigma_inv": _fmt(self.norm_sigma_inv),
            "norm_delta": _fmt(self.norm_delta),
            "mobius_square_sum": _fmt(self.mobius_square_sum),
            "two_pow_C_minus_1": _fmt(self.two_pow_C_minus_1),
            "two_pow_L_minus_1": _fmt(self.two_pow_L_minus_1),
            "verdicts": [
                {"name": v.name, "passed": v.passed, "skipped": v.skipped, "witness": v.witness}
                for v in self.verdicts
            ],
            "notes": list(self.notes),
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        def const(label, q):
            if q is None:
                return f"{label:<22} -"
            return f"{label:<22} {format_fraction(q):<14} # ~{float(q):.6g}"

        lines = [
            f"certificate {self.name}",
            f"{'size':<22} {self.size}",
            f"{'local_finiteness':<22} {self.C}",
            f"{'unital':<22} {'yes' if self.unital else 'no'}",
            f"{'zero':<22} {self.zero or '-'}",
            f"{'identity':<22} {self.identity or '-'}",
            const("norm_sigma", self.norm_sigma),
            const("norm_sigma_inv", self.norm_sigma_inv),
            const("norm_delta", self.norm_delta),
            const("mobius_square_sum", self.mobius_square_sum),
            const("two_pow_C_minus_1", self.two_pow_C_minus_1),
            const("two_pow_L_minus_1", self.two_pow_L_minus_1),
        ]
        lines += [v.line() for v in self.verdicts]
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"result {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _pmap(fn, items, jobs):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def certificate(
    ctx, *, oracle: bool = False, oracle_bound: int = DEFAULT_ORACLE_BOUND, jobs: int = 1
) -> CertificateReport:
    """Compute every norm constant exactly and check the inequalities between them.

    Results are independent of ``jobs``: per-basis work is mapped in order.
    """
    ctx = _as_ctx(ctx)
    S, P = ctx.S, ctx.P
    n = len(S)
    C = ctx.C
    idx = range(n)

    sig_images = _pmap(lambda t: schutz_apply(ctx, L1Vector.basis_idx(S, t)), idx, jobs)
    inv_images = _pmap(
        lambda x: schutz_inverse_apply(ctx, L1Vector.basis_idx(ctx.target, x)), idx, jobs
    )
    norm_sigma = operator_norm_on_basis(dict(zip(idx, sig_images)))
    norm_inv = operator_norm_on_basis(dict(zip(idx, inv_images)))
    two_C = Fraction(2) ** (C - 1)
    two_L = Fraction(2) ** (n - 1)
    max_down = max(len(P.down_idx(t)) for t in idx)

    report = CertificateReport(
        name=S.name or "semilattice",
        size=n,
        C=C,
        unital=S.is_unital,
        zero=S.zero,
        identity=S.identity,
        norm_sigma=norm_sigma,
        norm_sigma_inv=norm_inv,
        two_pow_C_minus_1=two_C,
        two_pow_L_minus_1=two_L,
        notes=list(S.notes),
    )
    V = report.verdicts

    if norm_sigma != max_down:
        V.append(Verdict.fail("norm_sigma_is_max_downset", f"{norm_sigma} != {max_down}"))
    elif S.is_unital and norm_sigma != n:
        V.append(Verdict.fail("norm_sigma_is_max_downset", f"unital but {norm_sigma} != |L| = {n}"))
    else:
        V.append(Verdict.ok("norm_sigma_is_max_downset"))

    def roundtrip(i):
        back = schutz_inverse_apply(ctx, sig_images[i])
        fwd = schutz_apply(ctx, inv_images[i])
        return back == L1Vector.basis_idx(S, i) and fwd == L1Vector.basis_idx(ctx.target, i)

    bad = [S.elements[i] for i, ok in zip(idx, _pmap(roundtrip, idx, jobs)) if not ok]
    V.append(
        Verdict.fail("sigma_inverse_roundtrip", f"basis {bad[0]}") if bad
        else Verdict.ok("sigma_inverse_roundtrip")
    )

    def rho_check(i):
        r = rho(ctx, S.elements[i])
        return (
            schutz_apply(ctx, r) == L1Vector.basis_idx(ctx.target, i)
            and convolve(S, r, r) == r
            and r.l1_norm() == inv_images[i].l1_norm()
        )

    bad = [S.elements[i] for i, ok in zip(idx, _pmap(rho_check, idx, jobs)) if not ok]
    V.append(
        Verdict.fail("rho_identity", f"t={bad[0]}") if bad else Verdict.ok("rho_identity")
    )

    V.append(
        Verdict.ok("sigma_inv_le_2^(|L|-1)") if norm_inv <= two_L
        else Verdict.fail("sigma_inv_le_2^(|L|-1)", f"{norm_inv} > {two_L}")
    )
    over = [S.elements[t] for t in idx if sig_images[t].l1_norm() > C]
    V.append(
        Verdict.fail("sigma_le_C", f"t={over[0]}") if over else Verdict.ok("sigma_le_C")
    )
    over = [S.elements[x] for x in idx if inv_images[x].l1_norm() > two_C]
    V.append(
        Verdict.fail("sigma_inv_basis_le_2^(C-1)", f"x={over[0]}") if over
        else Verdict.ok("sigma_inv_basis_le_2^(C-1)")
    )

    diag_checks = [
        "diagonal_axioms",
        "delta_ge_mobius_squares_ge_|L|",
        "|L|_le_delta",
        "sigma_inv_le_delta",
        "sigma_inv^2_le_|L|*delta",
    ]
    if not S.is_unital:
        V.extend(Verdict.skip(c, "not unital") for c in diag_checks)
        if oracle:
            V.append(Verdict.skip("diagonal_oracle", "not unital"))
        return report

    D = diagonal(ctx)
    nd = D.l1_norm()
    sq = sum((m * m for m in ctx.mu.values()), Fraction(0))
    report.norm_delta = nd
    report.mobius_square_sum = sq
    V.append(check_diagonal_axioms(S, D))
    V.append(
        Verdict.ok(diag_checks[1]) if nd >= sq >= n
        else Verdict.fail(diag_checks[1], f"{nd} >= {sq} >= {n} fails")
    )
    V.append(Verdict.ok(diag_checks[2]) if n <= nd else Verdict.fail(diag_checks[2], f"{n} > {nd}"))
    V.append(
        Verdict.ok(diag_checks[3]) if norm_inv <= nd
        else Verdict.fail(diag_checks[3], f"{norm_inv} > {nd}")
    )
    V.append(
        Verdict.ok(diag_checks[4]) if norm_inv**2 <= n * nd
        else Verdict.fail(diag_checks[4], f"{norm_inv ** 2} > {n * nd}")
    )
    if oracle:
        if n > oracle_bound:
            V.append(Verdict.skip("diagonal_oracle", f"|L| = {n} exceeds oracle bound {oracle_bound}"))
        else:
            sol = diagonal_bruteforce(S, oracle_bound)
            if not sol.unique:
                V.append(Verdict.fail("diagonal_oracle", f"solution space has dimension {sol.nullity}"))
            elif sol.diagonal != D:
                V.append(Verdict.fail("diagonal_oracle", "brute-force diagonal differs"))
            else:
                V.append(Verdict.ok("diagonal_oracle"))
    return report
