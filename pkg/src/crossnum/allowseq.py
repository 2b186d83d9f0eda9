"""Half-periods of allowable sequences.

A half-period is stored as its initial permutation plus the list of gates:
step ``t`` swaps the elements at (1-indexed) positions ``g_t`` and ``g_t + 1``.
Labels are arbitrary hashables; sequences built from a point set use the
point indices.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import comb
from typing import Hashable, Iterator

from .errors import DegenerateInputError
from .geom import Point, PointSet

__all__ = [
    "HalfPeriod",
    "CriticalProfile",
    "KLabeling",
    "StepTag",
    "LiberationSequence",
    "StepClassification",
    "Verdict",
    "PerfectnessReport",
    "from_point_set",
    "validate",
    "rotate",
    "reverse",
    "critical_profile",
    "k_labeling",
    "classify_steps",
    "has_confined_steps",
    "is_perfect",
    "center_entry_permutation",
    "reduced_words",
    "parse_half_period",
    "format_half_period",
]

Label = Hashable


@dataclass(frozen=True)
class HalfPeriod:
    initial: tuple
    gates: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.initial)

    @property
    def length(self) -> int:
        return comb(self.n, 2)

    def permutations(self) -> Iterator[tuple]:
        """Yield pi_0, pi_1, ..., pi_C."""
        perm = list(self.initial)
        yield tuple(perm)
        for g in self.gates:
            perm[g - 1], perm[g] = perm[g], perm[g - 1]
            yield tuple(perm)

    def steps(self) -> Iterator[tuple[int, int, Label, Label]]:
        """Yield (step, gate, left, right) with 1-indexed step numbers.

        ``left`` is the element at position ``gate`` before the swap; it moves right.
        """
        perm = list(self.initial)
        for t, g in enumerate(self.gates, 1):
            left, right = perm[g - 1], perm[g]
            perm[g - 1], perm[g] = right, left
            yield t, g, left, right

    @property
    def final(self) -> tuple:
        *_, last = self.permutations()
        return last


# ----------------------------------------------------------------------
# construction from a point set

def _event_direction(p: Point, q: Point) -> Point:
    # Normal to the line pq, normalized into the half-plane of angles [0, pi).
    e = Point(-(q.y - p.y), q.x - p.x)
    if e.y < 0 or (e.y == 0 and e.x < 0):
        e = Point(-e.x, -e.y)
    return e


def _angle_cmp(u: Point, v: Point) -> int:
    # Both vectors lie in the half-plane [0, pi), where the cross product orders them.
    c = u.cross(v)
    return (c < 0) - (c > 0)


def from_point_set(P: PointSet) -> HalfPeriod:
    """Circular sequence of P over half a turn of the sweep direction.

    The projection direction starts just before the smallest event angle in
    [0, pi); each pair swaps when the direction becomes normal to its line.
    """
    n = P.n
    pts = P.points
    if n < 2:
        return HalfPeriod(tuple(range(n)), ())
    events = []
    for i, j in itertools.combinations(range(n), 2):
        if pts[i] == pts[j]:
            raise DegenerateInputError(f"duplicate points {i} and {j}")
        events.append((_event_direction(pts[i], pts[j]), i, j))
    events.sort(key=functools.cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))
    first = events[0][0]
    # Just before the first event the projection onto `first` is ordered,
    # ties broken by the clockwise-rotated direction.
    perp = Point(-first.y, first.x)
    initial = sorted(range(n), key=lambda i: (pts[i].dot(first), -pts[i].dot(perp)))
    pos = {lab: idx for idx, lab in enumerate(initial)}
    perm = list(initial)
    gates: list[int] = []
    for _, group in itertools.groupby(
            events, key=functools.cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0]))):
        pending = []
        for _, i, j in group:
            a, b = sorted((pos[i], pos[j]))
            if b != a + 1:
                raise DegenerateInputError(
                    f"pair ({i}, {j}) not adjacent at its event; points not in general position")
            pending.append(a)
        # parallel lines give disjoint adjacent pairs; they commute
        for a in sorted(pending):
            perm[a], perm[a + 1] = perm[a + 1], perm[a]
            pos[perm[a]] = a
            pos[perm[a + 1]] = a + 1
            gates.append(a + 1)
    return HalfPeriod(tuple(initial), tuple(gates))


# ----------------------------------------------------------------------
# validation and period operations

@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(H: HalfPeriod) -> Verdict:
    n = H.n
    if len(set(H.initial)) != n:
        return Verdict(False, "initial permutation has repeated labels")
    if len(H.gates) != comb(n, 2):
        return Verdict(False, f"expected {comb(n, 2)} steps, got {len(H.gates)}")
    perm = list(H.initial)
    seen = set()
    for t, g in enumerate(H.gates, 1):
        if not 1 <= g <= n - 1:
            return Verdict(False, f"step {t}: gate {g} out of range 1..{n - 1}")
        pair = frozenset((perm[g - 1], perm[g]))
        if pair in seen:
            return Verdict(False, f"step {t}: pair {sorted(pair, key=repr)} swapped twice")
        seen.add(pair)
        perm[g - 1], perm[g] = perm[g], perm[g - 1]
    if tuple(perm) != tuple(reversed(H.initial)):
        return Verdict(False, "final permutation is not the reverse of the initial one")
    return Verdict(True)


def _full_gate(H: HalfPeriod, t: int) -> int:
    C = len(H.gates)
    t %= 2 * C
    return H.gates[t] if t < C else H.n - H.gates[t - C]


def rotate(H: HalfPeriod, t: int) -> HalfPeriod:
    """The half-period starting at pi_t of the periodic sequence generated by H."""
    C = len(H.gates)
    if not 0 <= t < max(1, 2 * C):
        raise ValueError(f"rotation {t} out of range 0..{2 * C - 1}")
    perm = list(H.initial)
    for s in range(t):
        g = _full_gate(H, s)
        perm[g - 1], perm[g] = perm[g], perm[g - 1]
    return HalfPeriod(tuple(perm), tuple(_full_gate(H, s) for s in range(t, t + C)))


def reverse(H: HalfPeriod) -> HalfPeriod:
    """Time-reversed half-period: starts at the final permutation, same gates backwards."""
    return HalfPeriod(H.final, tuple(reversed(H.gates)))


# ----------------------------------------------------------------------
# critical transpositions

@dataclass(frozen=True)
class CriticalProfile:
    n: int
    N: tuple[int, ...]  # N[k - 1] = N_k for k = 1 .. n//2

    def N_k(self, k: int) -> int:
        return self.N[k - 1]

    def N_leq(self, k: int) -> int:
        return sum(self.N[:k])

    @property
    def cumulative(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.N))

    @property
    def h(self) -> int | None:
        return self.N[-1] if self.n % 2 == 0 and self.N else None


def critical_profile(H: HalfPeriod) -> CriticalProfile:
    n = H.n
    N = [0] * (n // 2)
    for g in H.gates:
        N[min(g, n - g) - 1] += 1
    return CriticalProfile(n, tuple(N))


# ----------------------------------------------------------------------
# k-labeling, discovery and liberation

@dataclass(frozen=True)
class KLabeling:
    """Roles read off pi_0: a_k..a_1 | b_1..b_m | c_1..c_k."""

    k: int
    m: int
    role: dict  # label -> ("a" | "b" | "c", index)

    def name(self, label) -> str:
        kind, idx = self.role[label]
        return f"{kind}{idx}"

    def label_of(self, kind: str, idx: int):
        for lab, r in self.role.items():
            if r == (kind, idx):
                return lab
        raise KeyError(f"{kind}{idx}")


def k_labeling(H: HalfPeriod, k: int) -> KLabeling:
    n = H.n
    if not 1 <= k < n / 2:
        raise ValueError(f"k={k} out of range 1 <= k < n/2 for n={n}")
    m = n - 2 * k
    role = {}
    for p, lab in enumerate(H.initial, 1):
        if p <= k:
            role[lab] = ("a", k - p + 1)
        elif p <= k + m:
            role[lab] = ("b", p - k)
        else:
            role[lab] = ("c", p - k - m)
    return KLabeling(k, m, role)


@dataclass(frozen=True)
class StepTag:
    step: int
    gate: int
    zone: str  # "A", "B" or "C"
    discovery_for: frozenset
    confined: bool

    @property
    def double(self) -> bool:
        return len(self.discovery_for) == 2

    @property
    def critical(self) -> bool:
        return self.zone != "B"


@dataclass(frozen=True)
class LiberationSequence:
    order: tuple  # labels of the a's and c's in order of liberation
    T: dict  # label -> frozenset of opposite-class labels freed after it


@dataclass(frozen=True)
class StepClassification:
    labeling: KLabeling
    tags: tuple[StepTag, ...]
    liberation: LiberationSequence

    @property
    def confined_steps(self) -> list[int]:
        return [t.step for t in self.tags if t.confined]

    def discovery_count(self, kind: str) -> int:
        role = self.labeling.role
        return sum(1 for t in self.tags if any(role[x][0] == kind for x in t.discovery_for))

    @property
    def double_discovery_count(self) -> int:
        return sum(1 for t in self.tags if t.double)


def classify_steps(H: HalfPeriod, k: int) -> StepClassification:
    """Tag every step with zone, discovery and confinement information for parameter k.

    Gate arithmetic (1-indexed positions): the i-th A-gate is gate k-i+1, the
    i-th C-gate is gate m+k+i-1. For a_j the A-gates 1..j are compulsory
    exits (crossed rightwards) and the C-gates 1..j compulsory entries
    (rightwards); for c_j it is the mirror image, crossed leftwards.
    """
    L = k_labeling(H, k)
    n, m = H.n, L.m
    role = L.role
    free: set = set()
    liberated: list = []
    passed: set = set()  # (label, gate) pairs already discovered
    tags = []

    def compulsory(label, gate: int, rightward: bool) -> bool:
        kind, j = role[label]
        if kind == "a" and rightward:
            i_a = k - gate + 1  # A-gate number, if any
            i_c = gate - m - k + 1  # C-gate number, if any
            return (1 <= i_a <= j) or (1 <= i_c <= j)
        if kind == "c" and not rightward:
            i_a = k - gate + 1
            i_c = gate - m - k + 1
            return (1 <= i_a <= j) or (1 <= i_c <= j)
        return False

    def is_confined(label) -> bool:
        return role[label][0] in "ac" and label not in free

    for t, g, left, right in H.steps():
        zone = "A" if g <= k else ("C" if g >= k + m else "B")
        confined = is_confined(left) and is_confined(right)
        disc = set()
        for lab, rightward in ((left, True), (right, False)):
            if compulsory(lab, g, rightward) and (lab, g) not in passed:
                passed.add((lab, g))
                disc.add(lab)
        # liberation: a crosses gate k rightwards, c crosses gate m+k leftwards
        if role[left][0] == "a" and g == k and left not in free:
            free.add(left)
            liberated.append(left)
        if role[right][0] == "c" and g == m + k and right not in free:
            free.add(right)
            liberated.append(right)
        tags.append(StepTag(t, g, zone, frozenset(disc), confined))

    T = {}
    for idx, lab in enumerate(liberated):
        other = "c" if role[lab][0] == "a" else "a"
        T[lab] = frozenset(x for x in liberated[idx + 1:] if role[x][0] == other)
    return StepClassification(L, tuple(tags), LiberationSequence(tuple(liberated), T))


def has_confined_steps(H: HalfPeriod, k: int) -> bool:
    return bool(classify_steps(H, k).confined_steps)


@dataclass(frozen=True)
class PerfectnessReport:
    perfect: bool
    confined_steps: tuple[int, ...] = ()
    non_discovery_critical_steps: tuple[int, ...] = ()
    clause_b_failures: tuple[str, ...] = ()
    clause_c_failures: tuple[str, ...] = ()

    @property
    def decided(self) -> bool:
        return not self.confined_steps

    def __bool__(self) -> bool:
        return self.perfect


def is_perfect(H: HalfPeriod, k: int, classification: StepClassification | None = None
               ) -> PerfectnessReport:
    """Check the three perfectness clauses; refuse when confined steps exist.

    The refusal is reported through ``confined_steps`` (``decided`` is False);
    no attempt is made to transform the sequence.
    """
    cls = classification or classify_steps(H, k)
    if cls.confined_steps:
        return PerfectnessReport(False, confined_steps=tuple(cls.confined_steps))
    role = cls.labeling.role
    bad_a = tuple(t.step for t in cls.tags if t.critical and not t.discovery_for)

    def clause(kind: str, zone: str) -> tuple[str, ...]:
        fails = []
        for lab, (kd, i) in role.items():
            if kd != kind:
                continue
            got = sum(1 for t in cls.tags if t.double and t.zone == zone and lab in t.discovery_for)
            want = min(i, len(cls.liberation.T.get(lab, ())))
            if got != want:
                fails.append(f"{kind}{i}: {got} double-discovery steps in {zone}-zone, expected {want}")
        return tuple(sorted(fails))

    fb = clause("a", "C")
    fc = clause("c", "A")
    return PerfectnessReport(not (bad_a or fb or fc), (), bad_a, fb, fc)


def center_entry_permutation(H: HalfPeriod, x, k: int) -> tuple:
    """Permutation right after x first moves into positions k+1 .. n-k.

    If x already starts inside that window, pi_0 is returned.
    """
    n = H.n
    if x not in H.initial:
        raise KeyError(f"label {x!r} not in half-period")
    lo, hi = k + 1, n - k
    if lo <= H.initial.index(x) + 1 <= hi:
        return H.initial
    perm = list(H.initial)
    for g in H.gates:
        before = perm.index(x) + 1
        perm[g - 1], perm[g] = perm[g], perm[g - 1]
        after = perm.index(x) + 1
        if not lo <= before <= hi and lo <= after <= hi:
            return tuple(perm)
    raise ValueError(f"label {x!r} never enters the {k}-center")


# ----------------------------------------------------------------------
# enumeration for small n

def reduced_words(n: int) -> Iterator[HalfPeriod]:
    """Every simple half-period on labels 0..n-1 starting at the identity."""
    if n > 6:
        raise ValueError("enumeration is only intended for tiny n")
    target = tuple(reversed(range(n)))
    word: list[int] = []

    def rec(perm: list):
        if tuple(perm) == target:
            yield HalfPeriod(tuple(range(n)), tuple(word))
            return
        for g in range(1, n):
            if perm[g - 1] < perm[g]:  # each pair swaps once, from increasing to decreasing
                perm[g - 1], perm[g] = perm[g], perm[g - 1]
                word.append(g)
                yield from rec(perm)
                word.pop()
                perm[g - 1], perm[g] = perm[g], perm[g - 1]

    yield from rec(list(range(n)))


# ----------------------------------------------------------------------
# serialization

def format_half_period(H: HalfPeriod) -> str:
    lines = [str(H.n), " ".join(str(x) for x in H.initial)]
    lines.extend(str(g) for g in H.gates)
    return "\n".join(lines) + "\n"


def parse_half_period(text: str) -> HalfPeriod:
    from .errors import FormatError

    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) < 2:
        raise FormatError("half-period needs a count line and an initial permutation")
    try:
        n = int(lines[0])
        labels = lines[1].split()
        initial = tuple(int(x) for x in labels) if all(x.lstrip("-").isdigit() for x in labels) \
            else tuple(labels)
        gates = tuple(int(x) for x in lines[2:])
    except ValueError as exc:
        raise FormatError(f"malformed half-period: {exc}") from None
    if len(initial) != n:
        raise FormatError(f"initial permutation has {len(initial)} labels, expected {n}")
    H = HalfPeriod(initial, gates)
    verdict = validate(H)
    if not verdict:
        raise FormatError(f"invalid half-period: {verdict.message}")
    return H
