"""Finite directed graphs with loops, preorder services, and built-in examples.

Vertices are the integers 1..n.  Arrows are ordered pairs (a, b); loops
(a, a) are allowed and arrow sets have set semantics (no duplicates).
Everything is immutable, so values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple


class GraphFormatError(ValueError):
    """Raised when graph-description text does not follow the file format."""


class GraphTooLargeError(ValueError):
    """Raised when an exhaustive search is asked to exceed its size bound."""


Arrow = tuple[int, int]


class TransitiveTriple(NamedTuple):
    """Ordered triple of distinct vertices (a, b, c) with ab, bc, ac all arrows."""

    a: int
    b: int
    c: int


@dataclass(frozen=True)
class Digraph:
    """A finite digraph on vertices 1..n with an arrow set (loops allowed)."""

    n: int
    arrows: frozenset[Arrow]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        for a, b in self.arrows:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"arrow ({a}, {b}) leaves vertex range 1..{self.n}")

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[Arrow]) -> "Digraph":
        return cls(n, frozenset((int(a), int(b)) for a, b in arrows))

    @cached_property
    def nonloop_arrows(self) -> tuple[Arrow, ...]:
        """The non-loop arrows in lexicographic order (the unknown columns)."""
        return tuple(sorted(ab for ab in self.arrows if ab[0] != ab[1]))

    @cached_property
    def nonloop_index(self) -> dict[Arrow, int]:
        return {ab: i for i, ab in enumerate(self.nonloop_arrows)}

    @cached_property
    def loops(self) -> frozenset[Arrow]:
        return frozenset(ab for ab in self.arrows if ab[0] == ab[1])

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        """successors[v-1] = sorted out-neighbours of v, loops excluded."""
        out = [[] for _ in range(self.n)]
        for a, b in self.arrows:
            if a != b:
                out[a - 1].append(b)
        return tuple(tuple(sorted(x)) for x in out)

    def has_arrow(self, a: int, b: int) -> bool:
        return (a, b) in self.arrows

    def is_reflexive(self) -> bool:
        return all((v, v) in self.arrows for v in range(1, self.n + 1))

    def is_transitive(self) -> bool:
        arrows = self.arrows
        for a, b in arrows:
            for c in range(1, self.n + 1):
                if (b, c) in arrows and (a, c) not in arrows:
                    return False
        return True

    def __repr__(self):
        return f"Digraph(n={self.n}, arrows={sorted(self.arrows)})"


@dataclass(frozen=True)
class VertexPermutation:
    """A bijection of 1..n, stored as the image tuple (image[v-1] = sigma(v))."""

    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.image)}: {self.image}")

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "VertexPermutation":
        """Build a permutation of 1..n from disjoint cycles, e.g. [(1, 2), (3, 4)]."""
        image = list(range(1, n + 1))
        seen = set()
        for cycle in cycles:
            cycle = list(cycle)
            for v in cycle:
                if v in seen or not 1 <= v <= n:
                    raise ValueError(f"bad cycle entry {v}")
                seen.add(v)
            for v, w in zip(cycle, cycle[1:] + cycle[:1]):
                image[v - 1] = w
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """self after other: (self.compose(other))(v) == self(other(v))."""
        return VertexPermutation(tuple(self.image[w - 1] for w in other.image))

    def inverse(self) -> "VertexPermutation":
        image = [0] * self.n
        for v, w in enumerate(self.image, start=1):
            image[w - 1] = v
        return VertexPermutation(tuple(image))

    def cycle_type(self) -> tuple[int, ...]:
        """Multiplicities (alpha_1, ..., alpha_n) of cycle lengths."""
        alpha = [0] * self.n
        seen = [False] * self.n
        for v in range(1, self.n + 1):
            if seen[v - 1]:
                continue
            length = 0
            w = v
            while not seen[w - 1]:
                seen[w - 1] = True
                w = self(w)
                length += 1
            alpha[length - 1] += 1
        return tuple(alpha)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of structural validation, with the first few violations listed."""

    transitive: bool
    reflexive: bool
    preordered: bool
    ok: bool
    transitivity_violations: tuple[tuple[int, int, int], ...]
    missing_loops: tuple[int, ...]


def parse_digraph(text: str) -> Digraph:
    """Parse the line-oriented graph format.

    Recognised lines: ``# comment``, ``vertices <n>``, ``arrow <a> <b>``.
    Blank lines are ignored.  The vertex count must come before any arrow.
    """
    n = None
    arrows = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate vertex count")
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                raise GraphFormatError(f"line {lineno}: expected 'vertices <n>'")
            n = int(parts[1])
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
        elif parts[0] == "arrow":
            if n is None:
                raise GraphFormatError(f"line {lineno}: arrow before vertex count header")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'arrow <a> <b>'")
            try:
                a, b = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: arrow endpoints must be integers") from None
            if not (1 <= a <= n and 1 <= b <= n):
                raise GraphFormatError(f"line {lineno}: vertex index out of range 1..{n}")
            arrows.add((a, b))
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'vertices <n>' header")
    return Digraph(n, frozenset(arrows))


def closure(d: Digraph) -> Digraph:
    """Reflexive-transitive closure: the smallest preorder containing d's arrows."""
    n = d.n
    reach = [[False] * (n + 1) for _ in range(n + 1)]
    for a, b in d.arrows:
        reach[a][b] = True
    for v in range(1, n + 1):
        reach[v][v] = True
    for k in range(1, n + 1):
        rk = reach[k]
        for i in range(1, n + 1):
            if reach[i][k]:
                ri = reach[i]
                for j in range(1, n + 1):
                    if rk[j]:
                        ri[j] = True
    arrows = frozenset(
        (a, b) for a in range(1, n + 1) for b in range(1, n + 1) if reach[a][b]
    )
    return Digraph(n, arrows)


def validate(d: Digraph, require_reflexive: bool = True) -> ValidationReport:
    """Check transitivity and reflexivity, reporting up to 10 violations of each."""
    violations = []
    arrows = d.arrows
    for a, b in sorted(arrows):
        for c in range(1, d.n + 1):
            if (b, c) in arrows and (a, c) not in arrows:
                violations.append((a, b, c))
    violations.sort()
    missing = tuple(v for v in range(1, d.n + 1) if (v, v) not in arrows)
    transitive = not violations
    reflexive = not missing
    ok = transitive and (reflexive or not require_reflexive)
    return ValidationReport(
        transitive=transitive,
        reflexive=reflexive,
        preordered=transitive and reflexive,
        ok=ok,
        transitivity_violations=tuple(violations[:10]),
        missing_loops=missing[:10],
    )


def transitive_triples(d: Digraph) -> tuple[TransitiveTriple, ...]:
    """All ordered triples of distinct vertices (a, b, c) with ab, bc, ac arrows.

    Returned in lexicographic order.
    """
    arrows = d.arrows
    succ = d.successors
    out = []
    for a in range(1, d.n + 1):
        for b in succ[a - 1]:
            for c in succ[b - 1]:
                if c != a and (a, c) in arrows:
                    out.append(TransitiveTriple(a, b, c))
    out.sort()
    return tuple(out)


def _degree_signature(d: Digraph):
    outdeg = [0] * (d.n + 1)
    indeg = [0] * (d.n + 1)
    for a, b in d.arrows:
        if a != b:
            outdeg[a] += 1
            indeg[b] += 1
    return tuple(
        (outdeg[v], indeg[v], (v, v) in d.arrows) for v in range(1, d.n + 1)
    )


def automorphisms(d: Digraph, bound: int = 10) -> tuple[VertexPermutation, ...]:
    """All arrow-preserving vertex bijections, by exhaustive search.

    Vertices are matched in order 1..n, pruning candidates whose
    (out-degree, in-degree, loop) signature differs and partial maps that
    already break an arrow.  Raises GraphTooLargeError above the bound.
    """
    if d.n > bound:
        raise GraphTooLargeError(
            f"automorphism search limited to {bound} vertices, digraph has {d.n}"
        )
    sig = _degree_signature(d)
    arrows = d.arrows
    n = d.n
    found = []
    image = [0] * n
    used = [False] * (n + 1)

    def extend(v):
        if v > n:
            found.append(VertexPermutation(tuple(image)))
            return
        for w in range(1, n + 1):
            if used[w] or sig[w - 1] != sig[v - 1]:
                continue
            ok = True
            for u in range(1, v):
                iu = image[u - 1]
                if ((u, v) in arrows) != ((iu, w) in arrows):
                    ok = False
                    break
                if ((v, u) in arrows) != ((w, iu) in arrows):
                    ok = False
                    break
            if ok:
                image[v - 1] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        return

    extend(1)
    found.sort(key=lambda s: s.image)
    return tuple(found)


def arrow_map(sigma: VertexPermutation, d: Digraph) -> dict[Arrow, Arrow]:
    """The arrow correspondence ab -> sigma(a)sigma(b) of an automorphism."""
    if not is_automorphism(sigma, d):
        raise ValueError("permutation is not an automorphism of the digraph")
    return {(a, b): (sigma(a), sigma(b)) for a, b in sorted(d.arrows)}


def is_automorphism(sigma: VertexPermutation, d: Digraph) -> bool:
    if sigma.n != d.n:
        return False
    return all((sigma(a), sigma(b)) in d.arrows for a, b in d.arrows)


# 6-vertex triangulation of the real projective plane: 10 triangles on
# vertices 1..6, every edge shared by exactly two of them, all vertex links
# pentagons, Euler characteristic 6 - 15 + 10 = 1.
_RP2_FACETS = (
    (1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
    (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6),
)


def _rp2_face_poset() -> Digraph:
    """Preorder on the 31 faces of the projective-plane triangulation.

    Elements 1..6 are the triangulation vertices, 7..21 its edges in
    lexicographic order, 22..31 its triangles; x < y iff x is a face of y.
    The strict incidence order is closed reflexively and transitively.
    """
    edges = sorted({e for f in _RP2_FACETS for e in combinations(f, 2)})
    edge_id = {e: 7 + i for i, e in enumerate(edges)}
    tri_id = {f: 22 + i for i, f in enumerate(sorted(_RP2_FACETS))}
    n = 6 + len(edges) + len(_RP2_FACETS)
    arrows = {(v, v) for v in range(1, n + 1)}
    for e in edges:
        for v in e:
            arrows.add((v, edge_id[e]))
    for f in sorted(_RP2_FACETS):
        for e in combinations(f, 2):
            arrows.add((edge_id[e], tri_id[f]))
        for v in f:
            arrows.add((v, tri_id[f]))
    return Digraph(n, frozenset(arrows))


def complete_graph(n: int) -> Digraph:
    """K_n: every ordered pair st with 1 <= s, t <= n, loops included."""
    return Digraph(
        n, frozenset((a, b) for a in range(1, n + 1) for b in range(1, n + 1))
    )


def chain_graph(n: int) -> Digraph:
    """The preorder closure of the path 1 -> 2 -> ... -> n (a total order)."""
    return Digraph(
        n, frozenset((a, b) for a in range(1, n + 1) for b in range(a, n + 1))
    )


def antichain_graph(n: int) -> Digraph:
    """n vertices with loops only."""
    return Digraph(n, frozenset((v, v) for v in range(1, n + 1)))


_CATALOG = {
    "complete": (complete_graph, "complete preorder K_n (takes n)"),
    "chain": (chain_graph, "total order on n vertices (takes n)"),
    "antichain": (antichain_graph, "loops only on n vertices (takes n)"),
    "rp2_surrogate": (
        _rp2_face_poset,
        "face poset of the 6-vertex projective-plane triangulation (31 elements)",
    ),
}


def catalog(name: str, param: int | None = None) -> Digraph:
    """Build a named digraph; 'complete', 'chain' and 'antichain' take a size."""
    if name not in _CATALOG:
        raise ValueError(f"unknown catalog graph {name!r}; known: {', '.join(sorted(_CATALOG))}")
    builder, _ = _CATALOG[name]
    if name == "rp2_surrogate":
        if param is not None:
            raise ValueError("rp2_surrogate takes no parameter")
        return builder()
    if param is None or param < 1:
        raise ValueError(f"catalog graph {name!r} needs a positive size parameter")
    return builder(param)


def catalog_entries() -> tuple[tuple[str, str], ...]:
    """(name, description) pairs of the built-in graphs."""
    return tuple((name, desc) for name, (_, desc) in sorted(_CATALOG.items()))
