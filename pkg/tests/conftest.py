"""Shared builders for the test suite."""

from __future__ import annotations

import random
from itertools import permutations, product

from structgrade import (
    AbelianGroup,
    CayleyGroup,
    Digraph,
    closure,
    parse_group_spec,
    validate_cayley,
)


def cyclic_table(m: int) -> list[list[int]]:
    """Z_m as a raw Cayley table with identity 0."""
    return [[(i + j) % m for j in range(m)] for i in range(m)]


def s3_table() -> list[list[int]]:
    """S_3 as a Cayley table built from permutation composition, identity first."""
    perms = sorted(permutations(range(3)))
    perms.sort(key=lambda p: p != (0, 1, 2))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            composed = tuple(p[q[k]] for k in range(3))  # apply q, then p
            row.append(index[composed])
        table.append(row)
    return table


def s3_group() -> CayleyGroup:
    return validate_cayley(s3_table())


# order-5 loop: Latin square with identity 0 and two-sided inverses that
# still fails associativity, first at the triple (1, 1, 2)
NONASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


ABELIAN_GRID = ("Z2", "Z3", "Z4", "Z2xZ2", "Z6")


def abelian_grid() -> list[AbelianGroup]:
    return [parse_group_spec(spec) for spec in ABELIAN_GRID]


def brute_ord_count(group, k: int) -> int:
    """Independent oracle for ord_count: count g with g^k = identity directly."""
    count = 0
    for g in group.elements():
        acc = group.identity
        for _ in range(k):
            acc = group.op(acc, g)
        if acc == group.identity:
            count += 1
    return count


def random_preorder(rng: random.Random, max_n: int = 6) -> Digraph:
    """Reflexive-transitive closure of a random arrow set."""
    n = rng.randint(2, max_n)
    arrows = set()
    for a, b in product(range(1, n + 1), repeat=2):
        if a != b and rng.random() < 0.25:
            arrows.add((a, b))
    return closure(Digraph(n, frozenset(arrows)))


def random_transitive(rng: random.Random, max_n: int = 5) -> Digraph:
    """Random transitive digraph; loop-free strict orders mixed with preorders."""
    if rng.random() < 0.5:
        return random_preorder(rng, max_n)
    n = rng.randint(2, max_n)
    # random strict partial order: a < b only for a < b numerically
    arrows = set()
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < 0.4:
                arrows.add((a, b))
    # transitive closure without adding loops
    changed = True
    while changed:
        changed = False
        for a, b in list(arrows):
            for c in range(1, n + 1):
                if (b, c) in arrows and (a, c) not in arrows:
                    arrows.add((a, c))
                    changed = True
    return Digraph(n, frozenset(arrows))
