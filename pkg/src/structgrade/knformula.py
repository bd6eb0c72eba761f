"""Closed-form counting of nonequivalent elementary gradings of M_n.

Equivalence classes of elementary gradings of a full matrix ring by a
finite group G correspond to orbits of the symmetric group acting on the
homomorphism set of the complete digraph, and the fixed points of a
permutation depend only on its cycle structure alpha:

    fixed(alpha, G) = |{g : g^d(alpha) = 1}| * |G|^(|alpha| - 1)

with d(alpha) the gcd of the cycle lengths present.  Averaging over all
of S_n with the permutation-count weights P_alpha gives the class count.
All arithmetic is exact; the final averages are asserted integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Sequence

from .arith import is_prime
from .digraph import VertexPermutation

MAX_N = 30


@dataclass(frozen=True)
class CycleStructure:
    """Multiplicity vector alpha of a permutation of n: alpha[i-1] i-cycles."""

    n: int
    alpha: tuple[int, ...]

    def __post_init__(self):
        if len(self.alpha) != self.n:
            raise ValueError(f"alpha must have length {self.n}")
        if any(x < 0 for x in self.alpha):
            raise ValueError("cycle multiplicities must be nonnegative")
        if sum(i * x for i, x in enumerate(self.alpha, start=1)) != self.n:
            raise ValueError(f"cycle lengths of {self.alpha} do not sum to {self.n}")

    @property
    def size(self) -> int:
        """|alpha| = total number of cycles, fixed points included."""
        return sum(self.alpha)

    @property
    def d(self) -> int:
        """gcd of the cycle lengths that occur."""
        out = 0
        for i, x in enumerate(self.alpha, start=1):
            if x:
                out = gcd(out, i)
        return out


def cycle_structures(n: int) -> tuple[CycleStructure, ...]:
    """All cycle structures of S_n (partitions of n in multiplicity form).

    Generated from partitions with descending parts in lexicographic order
    of the part lists, so the identity structure (n, 0, ..., 0) comes last.
    """
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")

    structures = []

    def build(remaining: int, largest: int, parts: list[int]):
        if remaining == 0:
            alpha = [0] * n
            for p in parts:
                alpha[p - 1] += 1
            structures.append(CycleStructure(n, tuple(alpha)))
            return
        for p in range(min(remaining, largest), 0, -1):
            parts.append(p)
            build(remaining - p, p, parts)
            parts.pop()

    build(n, n, [])
    return tuple(structures)


def p_alpha(structure: CycleStructure) -> int:
    """Number of permutations with the given cycle structure:
    n! / prod_i (i^alpha_i * alpha_i!)."""
    denominator = 1
    for i, x in enumerate(structure.alpha, start=1):
        denominator *= i**x * factorial(x)
    count, remainder = divmod(factorial(structure.n), denominator)
    if remainder:
        raise ArithmeticError("cycle-count denominator does not divide n!")
    return count


def fixed_count_kn(structure: CycleStructure, group) -> int:
    """Homomorphisms of the complete digraph fixed by a permutation of this type."""
    return group.ord_count(structure.d) * group.order ** (structure.size - 1)


def count_nonequivalent_elementary(n: int, group) -> int:
    """(1/n!) * sum over alpha of P_alpha * fixed_count_kn(alpha, G)."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    total = sum(
        p_alpha(structure) * fixed_count_kn(structure, group)
        for structure in cycle_structures(n)
    )
    count, remainder = divmod(total, factorial(n))
    if remainder:
        raise ArithmeticError(
            f"orbit sum {total} is not divisible by {n}!; "
            "fixed-point counting is inconsistent"
        )
    return count


@dataclass(frozen=True)
class FormulaTerm:
    """coefficient * |ord_k(G)| * |G|^power; k == 1 is a plain power of |G|."""

    coefficient: int
    ord_k: int
    power: int


def expand_formula(n: int) -> tuple[FormulaTerm, ...]:
    """The grading-count polynomial for K_n, grouped like the small-n tables.

    Terms with ord_k = 1 come first in decreasing powers of |G|, then the
    torsion terms sorted by k and decreasing power.  The implied overall
    factor 1/n! is not part of the terms.
    """
    if not 2 <= n <= 12:
        raise ValueError(f"n must be in 2..12, got {n}")
    grouped: dict[tuple[int, int], int] = {}
    for structure in cycle_structures(n):
        key = (structure.d, structure.size - 1)
        grouped[key] = grouped.get(key, 0) + p_alpha(structure)
    ordered = sorted(
        grouped.items(), key=lambda kv: (kv[0][0] != 1, kv[0][0], -kv[0][1])
    )
    return tuple(
        FormulaTerm(coefficient=c, ord_k=k, power=e) for (k, e), c in ordered
    )


def evaluate_formula(n: int, group) -> int:
    """Evaluate expand_formula(n) at a group; agrees with the direct count."""
    total = sum(
        term.coefficient * group.ord_count(term.ord_k) * group.order**term.power
        for term in expand_formula(n)
    )
    count, remainder = divmod(total, factorial(n))
    if remainder:
        raise ArithmeticError(f"formula sum {total} is not divisible by {n}!")
    return count


def format_formula(n: int) -> str:
    """Render the polynomial in the style 'N(K_4) = (1/4!)(|G|^3 + ... )'."""
    pieces = []
    for term in expand_formula(n):
        factors = []
        if term.coefficient != 1:
            factors.append(str(term.coefficient))
        if term.ord_k != 1:
            factors.append(f"|ord_{term.ord_k}(G)|")
        if term.power == 1:
            factors.append("|G|")
        elif term.power > 1:
            factors.append(f"|G|^{term.power}")
        if not factors:
            factors.append("1")
        pieces.append("*".join(factors))
    return f"N(K_{n}) = (1/{n}!)(" + " + ".join(pieces) + ")"


def qn_eval(n: int, s_values: Sequence) -> Fraction:
    """Principal characteristic of S_n at s_1..s_n:
    sum over alpha of prod_i (1/alpha_i!) * (s_i / i)^alpha_i."""
    if len(s_values) < n:
        raise ValueError(f"need at least {n} values, got {len(s_values)}")
    total = Fraction(0)
    for structure in cycle_structures(n):
        term = Fraction(1)
        for i, x in enumerate(structure.alpha, start=1):
            if x:
                term *= Fraction(s_values[i - 1], i) ** x / factorial(x)
        total += term
    return total


def representative_permutation(structure: CycleStructure) -> VertexPermutation:
    """A permutation of 1..n with the given cycle structure.

    Cycles of length >= 2 occupy consecutive blocks (longest first), each
    block cycling m+1 -> m+2 -> ... -> m+len -> m+1; fixed points come last.
    """
    image = list(range(1, structure.n + 1))
    start = 0
    for length in range(structure.n, 1, -1):
        for _ in range(structure.alpha[length - 1]):
            for offset in range(length - 1):
                image[start + offset] = start + offset + 2
            image[start + length - 1] = start + 1
            start += length
    return VertexPermutation(tuple(image))


@dataclass(frozen=True)
class CongruenceCheck:
    """Both sides of |ord_p(G)| = |G|^(p-1) (mod p) as residues."""

    p: int
    ord_p_residue: int
    power_residue: int

    @property
    def holds(self) -> bool:
        return self.ord_p_residue == self.power_residue


def corollary_residue_check(p: int, group) -> CongruenceCheck:
    """Check |ord_p(G)| = |G|^(p-1) (mod p); holds for every finite group."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return CongruenceCheck(
        p=p,
        ord_p_residue=group.ord_count(p) % p,
        power_residue=pow(group.order, p - 1, p),
    )
