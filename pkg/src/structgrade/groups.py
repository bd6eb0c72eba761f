"""Finite groups in two encodings.

``AbelianGroup`` is a product of cyclic groups given by its factor list;
elements are residue vectors and the operation is written additively.
``CayleyGroup`` is an arbitrary finite group given by a validated
multiplication table; elements are row indices and the operation is
written multiplicatively.  Both expose the same small element interface
(identity / op / inverse / power / elements / ord_count), so callers never
need to care which encoding they hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence


class GroupSpecError(ValueError):
    """Raised for a malformed abelian group spec string."""


class CayleyTableError(ValueError):
    """Raised when a multiplication table violates a group axiom."""


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{m_1} x ... x Z_{m_k}; the empty factor list is the trivial group."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for m in self.factors:
            if m < 2:
                raise GroupSpecError(f"cyclic factor must be >= 2, got {m}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        """Least k >= 1 with k*g = 0 for every g (lcm of the factors)."""
        return math.lcm(*self.factors) if self.factors else 1

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def op(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.factors))

    def inverse(self, a):
        return tuple((-x) % m for x, m in zip(a, self.factors))

    def power(self, a, k: int):
        return tuple((x * k) % m for x, m in zip(a, self.factors))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(m) for m in self.factors))

    def ord_count(self, k: int) -> int:
        """|{g : k*g = 0}| = prod gcd(k, m_i)."""
        if k < 1:
            raise ValueError(f"exponent must be >= 1, got {k}")
        return math.prod(math.gcd(k, m) for m in self.factors)

    def format_element(self, g) -> str:
        return "(" + ",".join(str(x) for x in g) + ")"

    def describe(self) -> str:
        if not self.factors:
            return "1"
        return "x".join(f"Z{m}" for m in self.factors)

    @property
    def is_abelian(self) -> bool:
        return True


@dataclass(frozen=True)
class CayleyGroup:
    """A finite group as a multiplication table over element indices 0..n-1.

    Construct through validate_cayley, which checks the axioms and fills in
    the identity index and the inverse array.
    """

    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def ord_count(self, k: int) -> int:
        """|{g : g^k = 1}| by direct power iteration."""
        if k < 1:
            raise ValueError(f"exponent must be >= 1, got {k}")
        return sum(1 for g in range(self.order) if self.power(g, k) == self.identity)

    def format_element(self, g: int) -> str:
        return str(g)

    def describe(self) -> str:
        return f"cayley group of order {self.order}"

    @property
    def is_abelian(self) -> bool:
        n = self.order
        return all(
            self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a)
        )


def parse_group_spec(text: str) -> AbelianGroup:
    """Parse 'Z<m>' products such as 'Z6' or 'Z4xZ2'; '1' is the trivial group."""
    spec = text.strip()
    if spec == "1":
        return AbelianGroup(())
    factors = []
    for part in spec.split("x"):
        if not part.startswith("Z") or not part[1:].isdigit():
            raise GroupSpecError(f"bad group spec {text!r}; expected e.g. Z6, Z4xZ2, or 1")
        m = int(part[1:])
        if m < 2:
            raise GroupSpecError(f"cyclic factor must be >= 2, got Z{m}")
        factors.append(m)
    return AbelianGroup(tuple(factors))


def validate_cayley(table: Sequence[Sequence[int]]) -> CayleyGroup:
    """Check the group axioms on a raw table and return the validated group.

    Verifies index range, the Latin-square property, existence of a
    two-sided identity and of inverses, and associativity; the first
    violated axiom is reported with a witness.
    """
    n = len(table)
    if n == 0:
        raise CayleyTableError("empty table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise CayleyTableError(f"row {i} has {len(row)} entries, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise CayleyTableError(f"row {i} entry {x} out of range 0..{n - 1}")
        rows.append(row)
    tab = tuple(rows)

    for i in range(n):
        if len(set(tab[i])) != n:
            raise CayleyTableError(f"row {i} is not a permutation (Latin square fails)")
        col = [tab[j][i] for j in range(n)]
        if len(set(col)) != n:
            raise CayleyTableError(f"column {i} is not a permutation (Latin square fails)")

    identity = None
    for e in range(n):
        if all(tab[e][x] == x and tab[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise CayleyTableError("no two-sided identity element")

    inverses = [None] * n
    for a in range(n):
        for b in range(n):
            if tab[a][b] == identity and tab[b][a] == identity:
                inverses[a] = b
                break
        if inverses[a] is None:
            raise CayleyTableError(f"element {a} has no two-sided inverse")

    for a in range(n):
        for b in range(n):
            ab = tab[a][b]
            for c in range(n):
                if tab[ab][c] != tab[a][tab[b][c]]:
                    raise CayleyTableError(
                        f"associativity fails at ({a}, {b}, {c}): "
                        f"({a}*{b})*{c} = {tab[ab][c]} but {a}*({b}*{c}) = {tab[a][tab[b][c]]}"
                    )

    return CayleyGroup(tab, identity, tuple(inverses))


def parse_cayley_file(text: str) -> CayleyGroup:
    """Parse the Cayley table file format.

    First meaningful line is ``order <n>``, followed by n lines of n
    space-separated 0-based indices.  The identity must be element 0.
    ``#`` comments and blank lines are ignored.
    """
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines or not lines[0].startswith("order"):
        raise CayleyTableError("missing 'order <n>' header")
    parts = lines[0].split()
    if len(parts) != 2 or not parts[1].isdigit():
        raise CayleyTableError("malformed 'order <n>' header")
    n = int(parts[1])
    body = lines[1:]
    if len(body) != n:
        raise CayleyTableError(f"expected {n} table rows, found {len(body)}")
    table = []
    for i, line in enumerate(body):
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise CayleyTableError(f"table row {i} contains a non-integer") from None
        table.append(row)
    group = validate_cayley(table)
    if group.identity != 0:
        raise CayleyTableError(
            f"file format requires identity at index 0, found {group.identity}"
        )
    return group
