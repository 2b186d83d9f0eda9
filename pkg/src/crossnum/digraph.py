"""Descending digraphs on {v, ..., 1}: same-class center swaps, the class D(v, m) and its extremal member."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .allowseq import HalfPeriod, rotate
from .decomp import ThreeDecomposition, block_of
from .errors import LabelingError

__all__ = [
    "Digraph",
    "build_Dk",
    "in_class",
    "build_D0",
    "max_edges_oracle",
    "top_block_complete",
    "class_indices",
    "hal",
    "format_digraph",
]


@dataclass(frozen=True)
class Digraph:
    v: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for i, j in self.edges:
            if not (self.v >= i > j >= 1):
                raise ValueError(f"edge {i}->{j} is not descending within 1..{self.v}")

    def __len__(self) -> int:
        return len(self.edges)

    def outdeg(self, i: int) -> int:
        return sum(1 for a, _ in self.edges if a == i)

    def indeg(self, j: int) -> int:
        return sum(1 for _, b in self.edges if b == j)

    def induced(self, vertices) -> "Digraph":
        """Subgraph on ``vertices``, relabeled to 1..len(vertices) preserving order."""
        vs = sorted(vertices)
        rank = {x: r for r, x in enumerate(vs, 1)}
        return Digraph(len(vs), frozenset((rank[i], rank[j]) for i, j in self.edges
                                          if i in rank and j in rank))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges, reverse=True)


def format_digraph(G: Digraph, m: int) -> str:
    return "\n".join([f"{G.v} {m}"] + [f"{i} {j}" for i, j in G.sorted_edges()]) + "\n"


def in_class(G: Digraph, m: int) -> bool:
    """Membership in D(v, m): outdeg(i) <= m + indeg(i) for every vertex."""
    out = [0] * (G.v + 1)
    inn = [0] * (G.v + 1)
    for i, j in G.edges:
        out[i] += 1
        inn[j] += 1
    return all(out[i] <= m + inn[i] for i in range(1, G.v + 1))


def build_D0(v: int, m: int) -> Digraph:
    """Greedy extremal digraph: vertex i sends min(indeg(i) + m, i - 1) edges
    to the vertices immediately below it."""
    if v < 1 or m < 0:
        raise ValueError(f"need v >= 1 and m >= 0, got v={v}, m={m}")
    indeg = [0] * (v + 1)
    edges = set()
    for i in range(v, 0, -1):
        out = min(indeg[i] + m, i - 1)
        for j in range(i - 1, i - 1 - out, -1):
            edges.add((i, j))
            indeg[j] += 1
    return Digraph(v, frozenset(edges))


def max_edges_oracle(v: int, m: int) -> int:
    """Maximum edge count over D(v, m), by exhaustive branch-and-prune search.

    Vertices are decided top-down; when vertex i is reached its indegree is
    final, so the admissible out-neighbourhoods are exactly the subsets of
    {1..i-1} of size at most m + indeg(i).
    """
    if not (1 <= v <= 6 and 0 <= m <= 3):
        raise ValueError("oracle range is v <= 6, m <= 3")
    best = 0
    pairs_below = [i * (i - 1) // 2 for i in range(v + 1)]

    def rec(i: int, indeg: list, count: int):
        nonlocal best
        if i == 0:
            best = max(best, count)
            return
        # every remaining descending pair, as an upper bound
        if count + pairs_below[i] <= best:
            return
        cap = min(m + indeg[i], i - 1)
        below = range(1, i)
        for size in range(cap, -1, -1):
            for heads in combinations(below, size):
                for j in heads:
                    indeg[j] += 1
                rec(i - 1, indeg, count + size)
                for j in heads:
                    indeg[j] -= 1

    rec(v, [0] * (v + 1), 0)
    return best


def top_block_complete(G: Digraph, blocksize: int) -> bool:
    if blocksize > G.v:
        raise ValueError(f"blocksize {blocksize} exceeds v={G.v}")
    top = range(G.v, G.v - blocksize, -1)
    return all((i, j) in G.edges for i, j in combinations(top, 2))


def class_indices(H: HalfPeriod, D: ThreeDecomposition, cls: str) -> dict:
    """Map each element of block ``cls`` to its depth index.

    An element whose most extreme position (1 or n, 2 or n-1, ...) is i gets
    index n/3 - i + 1, so the element reaching the ends of the permutation is
    the top vertex.
    """
    n = H.n
    v = n // 3
    members = {"a": D.A, "b": D.B, "c": D.C}[cls]
    R = rotate(H, D.rotation) if D.rotation else H
    depth = {x: n for x in members}
    for perm in R.permutations():
        for p, x in enumerate(perm, 1):
            if x in depth:
                depth[x] = min(depth[x], p, n + 1 - p)
    index = {x: v - d + 1 for x, d in depth.items()}
    if sorted(index.values()) != list(range(1, v + 1)):
        raise LabelingError(f"class {cls}: extreme positions {sorted(depth.values())} "
                            f"do not give a bijection onto 1..{v}")
    return index


def build_Dk(H: HalfPeriod, D: ThreeDecomposition, cls: str, k: int) -> Digraph:
    """Edge i -> j (i > j) iff x_i and x_j swap through a gate g with k < g < n - k."""
    n = H.n
    v = n // 3
    index = class_indices(H, D, cls)
    R = rotate(H, D.rotation) if D.rotation else H
    edges = set()
    for _, g, x, y in R.steps():
        if x in index and y in index and k < g < n - k:
            i, j = index[x], index[y]
            edges.add((max(i, j), min(i, j)))
    return Digraph(v, frozenset(edges))


def hal(H: HalfPeriod, D: ThreeDecomposition, cls: str, j: int) -> int:
    """Number of lower-indexed class members that x_j meets at the halving gate."""
    if H.n % 2:
        raise ValueError(f"hal needs even n, got {H.n}")
    return build_Dk(H, D, cls, H.n // 2 - 1).outdeg(j)
