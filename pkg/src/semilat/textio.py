"""Line-oriented text formats for semilattices and Clifford semigroups.

Semilattice::

    semilattice
    symmetric                 # optional: each product line fills both orders
    elements theta a b
    product a b theta
    ...

A ``leq <y> <x>`` line may replace the product lines; the product is then
the meet of the generated order.  The Clifford format starts with
``clifford`` and adds::

    group <idempotent> cyclic(2) | symmetric(3) | trivial | table e,a;a,e
    phi <x> <y> : <g>-><h>, <g>-><h>

Blank lines and everything after ``#`` are ignored.
"""
from __future__ import annotations

from .clifford import CliffordSemigroup, group_from_spec
from .errors import AxiomError, NoMeet, ParseError, SemilatError
from .poset import poset_from_leq
from .semilattice import FiniteSemilattice, semilattice_from_meet_poset, semilattice_from_table

__all__ = ["parse_semilattice", "parse_clifford", "parse_any", "format_semilattice"]


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse(text, kind, validate=True):
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    if header != kind:
        raise ParseError(f"expected header {kind!r}, got {header!r}", lineno)
    elements = None
    symmetric = False
    products: dict[tuple[str, str], str] = {}
    where: dict[tuple[str, str], int] = {}
    leq: list[tuple[str, str]] = []
    groups: dict[str, str] = {}
    phis: dict[tuple[str, str], dict[str, str]] = {}
    for lineno, line in lines[1:]:
        word, _, rest = line.partition(" ")
        args = rest.split()
        if word == "symmetric" and not args:
            symmetric = True
        elif word == "elements":
            if elements is not None:
                raise ParseError("duplicate elements line", lineno)
            if not args:
                raise ParseError("elements line lists no elements", lineno)
            if len(set(args)) != len(args):
                raise ParseError("duplicate element identifier", lineno)
            elements = args
        elif word == "product":
            if len(args) != 3:
                raise ParseError("product line needs exactly three identifiers: x y xy", lineno)
            x, y, z = args
            _known(elements, (x, y, z), lineno)
            if (x, y) in products and products[(x, y)] != z:
                raise ParseError(f"conflicting product for ({x}, {y})", lineno)
            products[(x, y)] = z
            where.setdefault((x, y), lineno)
            where.setdefault((y, x), lineno)
        elif word == "leq":
            if len(args) != 2:
                raise ParseError("leq line needs exactly two identifiers: y x", lineno)
            _known(elements, args, lineno)
            leq.append((args[0], args[1]))
        elif word == "group" and kind == "clifford":
            if len(args) < 2:
                raise ParseError("group line needs an idempotent and a group spec", lineno)
            _known(elements, args[:1], lineno)
            try:
                group_from_spec(" ".join(args[1:]))
            except (SemilatError, ValueError) as exc:
                raise ParseError(str(exc), lineno) from None
            groups[args[0]] = " ".join(args[1:])
        elif word == "phi" and kind == "clifford":
            head, sep, body = rest.partition(":")
            pair = head.split()
            if not sep or len(pair) != 2:
                raise ParseError("phi line must look like 'phi x y : g->h, ...'", lineno)
            _known(elements, pair, lineno)
            mapping = {}
            for item in filter(None, (s.strip() for s in body.split(","))):
                g, arrow, h = item.partition("->")
                if not arrow:
                    raise ParseError(f"bad map entry {item!r}", lineno)
                mapping[g.strip()] = h.strip()
            phis[(pair[0], pair[1])] = mapping
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if elements is None:
        raise ParseError("missing elements line")
    if products and leq:
        raise ParseError("use either product lines or leq lines, not both")
    try:
        if leq or not products:
            S = semilattice_from_meet_poset(poset_from_leq(elements, leq))
        else:
            S = semilattice_from_table(elements, products, symmetric=symmetric, validate=validate)
    except AxiomError as exc:
        ref = where.get(exc.witness[:2])
        raise ParseError(str(exc), ref) from None
    except (NoMeet, SemilatError) as exc:
        raise ParseError(str(exc)) from None
    return S, groups, phis


def _known(elements, names, lineno):
    if elements is None:
        raise ParseError("elements line must come first", lineno)
    for x in names:
        if x not in elements:
            raise ParseError(f"unknown element {x!r}", lineno)


def parse_semilattice(text: str, name: str | None = None, validate: bool = True) -> FiniteSemilattice:
    S, _, _ = _parse(text, "semilattice", validate)
    S.name = name
    return S


def parse_clifford(text: str, name: str | None = None) -> CliffordSemigroup:
    L, groups, phis = _parse(text, "clifford")
    try:
        return CliffordSemigroup(
            L, {x: group_from_spec(s) for x, s in groups.items()}, phis, name=name
        )
    except SemilatError as exc:
        raise ParseError(str(exc)) from None


def parse_any(text: str, name: str | None = None, validate: bool = True):
    """Dispatch on the header line."""
    for _, line in _lines(text):
        if line == "clifford":
            return parse_clifford(text, name)
        return parse_semilattice(text, name, validate)
    raise ParseError("empty input")


def format_semilattice(S: FiniteSemilattice) -> str:
    """Canonical text form: symmetric product lines over unordered pairs."""
    out = ["semilattice"]
    if S.name:
        out.append(f"# {S.name}")
    out += [f"# note: {n}" for n in S.notes]
    out.append("symmetric")
    out.append("elements " + " ".join(S.elements))
    out += [f"product {x} {y} {z}" for x, y, z in S.product_pairs()]
    return "\n".join(out) + "\n"
