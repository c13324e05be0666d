"""Hypothesis strategies shared by the test modules."""
from itertools import combinations

from hypothesis import strategies as st

from semilat.semilattice import semilattice_from_table


@st.composite
def semilattices(draw, universe=3):
    """Families of subsets of a small universe closed under intersection.

    Every finite semilattice arises this way (map each element to its
    downset), and the construction never touches the poset code.  With a
    3-point universe there are at most 8 elements.
    """
    seeds = draw(st.lists(st.frozensets(st.integers(0, universe - 1)), min_size=1, max_size=5))
    family = set(seeds)
    while True:
        new = {a & b for a, b in combinations(family, 2)} - family
        if not new:
            break
        family |= new
    sets = sorted(family, key=lambda s: (len(s), sorted(s)))
    names = {s: "s" + ("".join(map(str, sorted(s))) or "_") for s in sets}
    product = {(names[a], names[b]): names[a & b] for a in sets for b in sets}
    return semilattice_from_table([names[s] for s in sets], product)
