"""3-decomposability of half-periods and point sets, plus the color statistics it implies."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .allowseq import HalfPeriod, from_point_set, rotate
from .errors import LabelingError
from .geom import Point, PointSet
from .kedges import edge_vector

__all__ = [
    "ThreeDecomposition",
    "Refusal",
    "PhaseStats",
    "GeometricWitness",
    "MainTheoremVerdict",
    "check_sequence_decomposition",
    "search_decomposition",
    "verify_geometric_witness",
    "main_theorem_check",
    "phase_stats",
    "bichromatic_closed_form",
    "middle_third_check",
    "block_of",
]


@dataclass(frozen=True)
class ThreeDecomposition:
    rotation: int
    A: tuple
    B: tuple
    C: tuple
    s: int
    t: int

    def block(self, label) -> str:
        if label in self.A:
            return "A"
        if label in self.B:
            return "B"
        if label in self.C:
            return "C"
        raise LabelingError(f"label {label!r} not in any block")

    def to_dict(self) -> dict:
        return {"rotation": self.rotation, "A": list(self.A), "B": list(self.B),
                "C": list(self.C), "s": self.s, "t": self.t}


@dataclass(frozen=True)
class Refusal:
    rotation: int
    step: int
    reason: str

    def __bool__(self) -> bool:
        return False


def block_of(D: ThreeDecomposition) -> dict:
    return {**{x: "A" for x in D.A}, **{x: "B" for x in D.B}, **{x: "C" for x in D.C}}


def _third(n: int) -> int:
    if n % 3:
        raise ValueError(f"n must be divisible by 3, got {n}")
    return n // 3


def check_sequence_decomposition(H: HalfPeriod, r: int = 0) -> ThreeDecomposition | Refusal:
    """Test the phase order AB -> AC -> BC on the half-period starting at step r.

    ``s`` and ``t`` are the earliest indices with pi_{s+1} showing blocks
    B, A, C and pi_{t+1} showing B, C, A.
    """
    v = _third(H.n)
    R = rotate(H, r) if r else H
    A, B, C = R.initial[:v], R.initial[v:2 * v], R.initial[2 * v:]
    blk = {**{x: "A" for x in A}, **{x: "B" for x in B}, **{x: "C" for x in C}}
    remaining = {"AB": v * v, "AC": v * v, "BC": v * v}
    last = {"AB": 0, "AC": 0}
    for step, _, x, y in R.steps():
        kind = "".join(sorted(blk[x] + blk[y]))
        if kind in ("AA", "BB", "CC"):
            continue
        if kind != "AB" and remaining["AB"]:
            return Refusal(r, step, f"{kind} swap before all AB swaps ({remaining['AB']} left)")
        if kind == "BC" and remaining["AC"]:
            return Refusal(r, step, f"BC swap before all AC swaps ({remaining['AC']} left)")
        remaining[kind] -= 1
        if kind in last:
            last[kind] = step
    return ThreeDecomposition(r, tuple(A), tuple(B), tuple(C), last["AB"] - 1, last["AC"] - 1)


def search_decomposition(H: HalfPeriod) -> ThreeDecomposition | None:
    """First rotation (lowest index) whose half-period is 3-decomposable."""
    _third(H.n)
    for r in range(max(1, 2 * H.length)):
        res = check_sequence_decomposition(H, r)
        if res:
            return res
    return None


@dataclass(frozen=True)
class GeometricWitness:
    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    directions: tuple[Point, Point, Point]

    def to_dict(self) -> dict:
        return {"A": list(self.A), "B": list(self.B), "C": list(self.C),
                "directions": [list(d) for d in self.directions]}


def _middle_ok(proj: dict, middle: Sequence[int], ends: tuple[Sequence[int], Sequence[int]]) -> bool:
    mid = [proj[i] for i in middle]
    lo, hi = min(mid), max(mid)
    x, y = ([proj[i] for i in e] for e in ends)
    return (max(x) < lo and hi < min(y)) or (max(y) < lo and hi < min(x))


def verify_geometric_witness(P: PointSet, W: GeometricWitness) -> bool:
    """Check the three projection orders: A in the middle along the first
    direction, B along the second, C along the third."""
    parts = (W.A, W.B, W.C)
    sizes = {len(p) for p in parts}
    if len(sizes) != 1 or 3 * len(W.A) != P.n or set(W.A) | set(W.B) | set(W.C) != set(range(P.n)):
        raise ValueError("witness parts must partition the point indices into equal thirds")
    d = [Point(*v) for v in W.directions]
    for i in range(3):
        for j in range(i + 1, 3):
            if d[i].cross(d[j]) == 0:
                raise ValueError(f"directions {i} and {j} are parallel")
    A, B, C = parts
    for direction, middle, ends in ((d[0], A, (B, C)), (d[1], B, (C, A)), (d[2], C, (A, B))):
        proj = {i: P[i].dot(direction) for i in range(P.n)}
        if not _middle_ok(proj, middle, ends):
            return False
    return True


@dataclass(frozen=True)
class MainTheoremVerdict:
    hypothesis: bool
    failing_k: int | None
    witness: ThreeDecomposition | None

    @property
    def holds(self) -> bool:
        return not self.hypothesis or self.witness is not None

    def summary(self) -> str:
        if not self.hypothesis:
            return f"hypothesis: NOT MET (k={self.failing_k}); decomposable: NO CLAIM"
        return f"hypothesis: TIGHT; decomposable: {'YES' if self.witness else 'NO'}"


def main_theorem_check(P: PointSet) -> MainTheoremVerdict:
    v = _third(P.n)
    cum = edge_vector(P).cumulative
    failing = next((k for k in range(v) if k < len(cum) and cum[k] != 3 * comb(k + 2, 2)), None)
    if failing is not None:
        return MainTheoremVerdict(False, failing, None)
    return MainTheoremVerdict(True, None, search_decomposition(from_point_set(P)))


@dataclass(frozen=True)
class PhaseStats:
    n: int
    bi: tuple[int, ...]  # bi[k-1] = N_k^bi for k = 1 .. n//2
    mono: tuple[int, ...]
    center: dict  # "aa" | "bb" | "cc" -> tuple indexed by k = 0 .. n//2 of N_{>k}^{xx}

    def bi_leq(self, k: int) -> int:
        return sum(self.bi[:k])

    def mono_leq(self, k: int) -> int:
        return sum(self.mono[:k])


def phase_stats(H: HalfPeriod, D: ThreeDecomposition) -> PhaseStats:
    """Mono/bichromatic counts per critical level, and same-class counts per k-center."""
    n = H.n
    R = rotate(H, D.rotation) if D.rotation else H
    blk = block_of(D)
    if set(blk) != set(R.initial) or len(blk) != n:
        raise LabelingError("decomposition blocks do not match the half-period labels")
    bi = [0] * (n // 2)
    mono = [0] * (n // 2)
    gates = {"aa": [], "bb": [], "cc": []}
    for _, g, x, y in R.steps():
        level = min(g, n - g) - 1
        if blk[x] == blk[y]:
            mono[level] += 1
            gates[blk[x].lower() * 2].append(g)
        else:
            bi[level] += 1
    center = {key: tuple(sum(1 for g in gs if k < g < n - k) for k in range(n // 2 + 1))
              for key, gs in gates.items()}
    return PhaseStats(n, tuple(bi), tuple(mono), center)


def bichromatic_closed_form(n: int, k: int) -> int:
    """Cumulative bichromatic (<=k)-critical count of a 3-decomposable half-period.

    Defined for 1 <= k <= n//2; at k = n//2 every bichromatic swap is counted,
    giving 3*(n/3)**2.
    """
    v = _third(n)
    if not 1 <= k <= n // 2:
        raise ValueError(f"k={k} out of range 1..{n // 2}")
    if k == n // 2:
        return 3 * v * v
    if k <= v:
        return 3 * comb(k + 1, 2)
    return 3 * comb(v + 1, 2) + (k - v) * n


def middle_third_check(H: HalfPeriod, D: ThreeDecomposition) -> bool:
    """True iff every monochromatic step uses a gate strictly between n/3 and 2n/3."""
    v = _third(H.n)
    R = rotate(H, D.rotation) if D.rotation else H
    blk = block_of(D)
    return all(v < g < 2 * v for _, g, x, y in R.steps() if blk[x] == blk[y])
