"""Brute-force homomorphism enumeration and the orbit-counting layer.

A homomorphism assigns a group element to every arrow of a digraph so
that value(ab) * value(bc) = value(ac) on every transitive triple; loops
always carry the identity, and a two-cycle forces value(ba) to be the
inverse of value(ab).  Enumeration works for any finite group encoding;
the closed-form counting in transmat is abelian-only, so this module is
also the oracle that validates it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .digraph import (
    Arrow,
    Digraph,
    VertexPermutation,
    automorphisms,
    is_automorphism,
    transitive_triples,
)
from .transmat import count_homs_abelian, two_cycle_pairs
from .groups import AbelianGroup

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive search exceeds its node budget."""


@dataclass(frozen=True)
class Homomorphism:
    """Assignment of group elements to arrows; values align with nonloop_arrows."""

    digraph: Digraph
    group: object
    values: tuple

    def value(self, arrow: Arrow):
        if arrow not in self.digraph.arrows:
            raise ValueError(f"{arrow} is not an arrow of the digraph")
        if arrow[0] == arrow[1]:
            return self.group.identity
        return self.values[self.digraph.nonloop_index[arrow]]

    def as_dict(self) -> dict[Arrow, object]:
        return {arrow: self.value(arrow) for arrow in sorted(self.digraph.arrows)}

    def satisfies_constraints(self) -> bool:
        """Post-hoc validation of the triple law and inverse pairs."""
        g = self.group
        for a, b, c in transitive_triples(self.digraph):
            if g.op(self.value((a, b)), self.value((b, c))) != self.value((a, c)):
                return False
        for ab, ba in two_cycle_pairs(self.digraph):
            if g.op(self.value(ab), self.value(ba)) != g.identity:
                return False
        return True


def _constraints(d: Digraph):
    """Index triples and inverse pairs by the arrows they mention."""
    idx = d.nonloop_index
    triples = []
    for a, b, c in transitive_triples(d):
        triples.append((idx[(a, b)], idx[(b, c)], idx[(a, c)]))
    pairs = [(idx[ab], idx[ba]) for ab, ba in two_cycle_pairs(d)]
    by_arrow = [[] for _ in range(len(idx))]
    for t, triple in enumerate(triples):
        for col in triple:
            by_arrow[col].append(("t", t))
    for q, pair in enumerate(pairs):
        for col in pair:
            by_arrow[col].append(("p", q))
    return triples, pairs, by_arrow


def iter_homs(d: Digraph, group, budget: int = DEFAULT_BUDGET) -> Iterator[Homomorphism]:
    """Yield every homomorphism from d into group, deterministically.

    Backtracks over the non-loop arrows in lexicographic order; whenever a
    triple has two assigned arrows (or a pair one) the remaining value is
    forced and propagated immediately.  Each candidate value tried at a
    branch counts against the budget.
    """
    s = len(d.nonloop_arrows)
    triples, pairs, by_arrow = _constraints(d)
    element_list = list(group.elements())
    op = group.op
    inv = group.inverse
    assignment: list = [None] * s
    nodes = 0

    def propagate(start: int, trail: list[int]) -> bool:
        queue = [start]
        while queue:
            col = queue.pop()
            for kind, ref in by_arrow[col]:
                if kind == "t":
                    i_ab, i_bc, i_ac = triples[ref]
                    v_ab, v_bc, v_ac = assignment[i_ab], assignment[i_bc], assignment[i_ac]
                    known = (v_ab is not None) + (v_bc is not None) + (v_ac is not None)
                    if known < 2:
                        continue
                    if known == 3:
                        if op(v_ab, v_bc) != v_ac:
                            return False
                        continue
                    if v_ab is None:
                        target, forced = i_ab, op(v_ac, inv(v_bc))
                    elif v_bc is None:
                        target, forced = i_bc, op(inv(v_ab), v_ac)
                    else:
                        target, forced = i_ac, op(v_ab, v_bc)
                else:
                    i, j = pairs[ref]
                    if assignment[i] is None and assignment[j] is None:
                        continue
                    if assignment[i] is not None and assignment[j] is not None:
                        if op(assignment[i], assignment[j]) != group.identity:
                            return False
                        continue
                    if assignment[i] is None:
                        target, forced = i, inv(assignment[j])
                    else:
                        target, forced = j, inv(assignment[i])
                assignment[target] = forced
                trail.append(target)
                queue.append(target)
        return True

    def search(lowest: int) -> Iterator[Homomorphism]:
        nonlocal nodes
        col = lowest
        while col < s and assignment[col] is not None:
            col += 1
        if col == s:
            yield Homomorphism(d, group, tuple(assignment))
            return
        for value in element_list:
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(
                    f"enumeration exceeded the budget of {budget} nodes"
                )
            trail = [col]
            assignment[col] = value
            if propagate(col, trail):
                yield from search(col + 1)
            for t in trail:
                assignment[t] = None

    return search(0)


def enumerate_homs(d: Digraph, group, budget: int = DEFAULT_BUDGET) -> list[Homomorphism]:
    """All homomorphisms from d into group, in deterministic search order."""
    return list(iter_homs(d, group, budget))


def hom_from_vertex_labels(d: Digraph, group, labels: Sequence) -> Homomorphism:
    """The elementary homomorphism ab -> labels[a]^-1 * labels[b].

    Satisfies the triple law identically (the labels telescope), so no
    validation is needed.
    """
    if len(labels) != d.n:
        raise ValueError(f"need {d.n} labels, got {len(labels)}")
    values = tuple(
        group.op(group.inverse(labels[a - 1]), labels[b - 1])
        for a, b in d.nonloop_arrows
    )
    return Homomorphism(d, group, values)


def is_elementary(phi: Homomorphism):
    """Vertex labels witnessing phi(ab) = g_a^-1 * g_b, or None.

    The first vertex of each weakly connected component is labelled with
    the identity and labels propagate along arrows in both directions;
    elementarity of phi is equivalent to the propagated labels verifying
    on every arrow.
    """
    d = phi.digraph
    group = phi.group
    labels = [None] * (d.n + 1)
    neighbours = [[] for _ in range(d.n + 1)]
    for a, b in d.nonloop_arrows:
        neighbours[a].append((b, (a, b), True))   # forward: g_b = g_a * phi(ab)
        neighbours[b].append((a, (a, b), False))  # backward: g_a = g_b * phi(ab)^-1
    for base in range(1, d.n + 1):
        if labels[base] is not None:
            continue
        labels[base] = group.identity
        stack = [base]
        while stack:
            v = stack.pop()
            for w, arrow, forward in neighbours[v]:
                if labels[w] is not None:
                    continue
                if forward:
                    labels[w] = group.op(labels[v], phi.value(arrow))
                else:
                    labels[w] = group.op(labels[v], group.inverse(phi.value(arrow)))
                stack.append(w)
    for a, b in d.nonloop_arrows:
        if group.op(group.inverse(labels[a]), labels[b]) != phi.value((a, b)):
            return None
    return tuple(labels[1:])


def _arrow_column_permutation(d: Digraph, sigma: VertexPermutation) -> list[int]:
    """perm with (sigma.phi).values[i] = phi.values[perm[i]] for each column i."""
    inv = sigma.inverse()
    idx = d.nonloop_index
    return [idx[(inv(a), inv(b))] for a, b in d.nonloop_arrows]


def act(sigma: VertexPermutation, phi: Homomorphism) -> Homomorphism:
    """The automorphism action: (sigma . phi)(ab) = phi(sigma^-1(a) sigma^-1(b))."""
    if not is_automorphism(sigma, phi.digraph):
        raise ValueError("permutation is not an automorphism of the digraph")
    perm = _arrow_column_permutation(phi.digraph, sigma)
    return Homomorphism(
        phi.digraph, phi.group, tuple(phi.values[j] for j in perm)
    )


def fixed_hom_count(
    d: Digraph, group, sigma: VertexPermutation, budget: int = DEFAULT_BUDGET
) -> int:
    """Number of enumerated homomorphisms fixed by the action of sigma."""
    if not is_automorphism(sigma, d):
        raise ValueError("permutation is not an automorphism of the digraph")
    perm = _arrow_column_permutation(d, sigma)
    count = 0
    for phi in iter_homs(d, group, budget):
        values = phi.values
        if all(values[j] == values[perm[j]] for j in range(len(values))):
            count += 1
    return count


def orbit_count(
    d: Digraph, group, budget: int = DEFAULT_BUDGET, aut_bound: int = 10
) -> int:
    """Number of automorphism orbits on the homomorphism set (orbit counting).

    Averages the fixed-point counts over Aut(d); the average must come out
    an exact integer.
    """
    auts = automorphisms(d, bound=aut_bound)
    homs = enumerate_homs(d, group, budget)
    total = 0
    for sigma in auts:
        perm = _arrow_column_permutation(d, sigma)
        cols = range(len(d.nonloop_arrows))
        total += sum(
            1
            for phi in homs
            if all(phi.values[j] == phi.values[perm[j]] for j in cols)
        )
    count, remainder = divmod(total, len(auts))
    if remainder:
        raise ArithmeticError(
            f"orbit average {total}/{len(auts)} is not an integer; "
            "fixed-point counting is inconsistent"
        )
    return count


@dataclass(frozen=True)
class GradingSetVerdict:
    ok: bool
    reason: str


def verify_grading_set(
    d: Digraph, group, x: Iterable[Arrow], budget: int = DEFAULT_BUDGET
) -> GradingSetVerdict:
    """Decide whether every function x -> group extends to exactly one hom.

    Equivalent test: the number of homomorphisms equals |G|^|X| and no two
    homomorphisms agree on X.  For abelian groups a count mismatch is
    detected from the closed form without enumerating.
    """
    arrows = sorted(set(x))
    for arrow in arrows:
        if arrow not in d.arrows:
            raise ValueError(f"{arrow} is not an arrow of the digraph")
    expected = group.order ** len(arrows)
    if isinstance(group, AbelianGroup) and d.is_transitive():
        total = count_homs_abelian(d, group)
        if total != expected:
            return GradingSetVerdict(
                False,
                f"hom count {total} differs from |G|^|X| = {expected}",
            )
    if expected > budget:
        raise BudgetExceededError(
            f"|G|^|X| = {expected} exceeds the budget of {budget}"
        )
    restrictions = set()
    total = 0
    nonloop = [a for a in arrows if a[0] != a[1]]
    loops = [a for a in arrows if a[0] == a[1]]
    if loops and group.order > 1:
        return GradingSetVerdict(
            False, "X contains a loop, whose value is pinned to the identity"
        )
    cols = [d.nonloop_index[a] for a in nonloop]
    for phi in iter_homs(d, group, budget):
        total += 1
        restrictions.add(tuple(phi.values[j] for j in cols))
    if total != expected:
        return GradingSetVerdict(
            False, f"hom count {total} differs from |G|^|X| = {expected}"
        )
    if len(restrictions) != total:
        return GradingSetVerdict(
            False, "two homomorphisms agree on X (extension not unique)"
        )
    return GradingSetVerdict(True, "every assignment on X extends uniquely")


@dataclass(frozen=True)
class GradingReport:
    """Arrows grouped by image element; support lists the nonempty ones."""

    components: tuple[tuple[object, tuple[Arrow, ...]], ...]
    support: tuple

    def component(self, element) -> tuple[Arrow, ...]:
        for g, arrows in self.components:
            if g == element:
                return arrows
        return ()


def grading_report(phi: Homomorphism) -> GradingReport:
    """Partition the arrows of the digraph by their image under phi."""
    buckets: dict = {}
    for arrow in sorted(phi.digraph.arrows):
        buckets.setdefault(phi.value(arrow), []).append(arrow)
    components = tuple(
        (g, tuple(arrows)) for g, arrows in sorted(buckets.items())
    )
    return GradingReport(components, tuple(g for g, _ in components))


def format_hom(phi: Homomorphism) -> str:
    """One-line rendering: 'a->b=element' pairs over all arrows, lexicographic."""
    group = phi.group
    return " ".join(
        f"{a}->{b}={group.format_element(phi.value((a, b)))}"
        for a, b in sorted(phi.digraph.arrows)
    )
