"""Halving bounds, crossing-number scenarios and the replay of the K_30 arithmetic."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .decomp import bichromatic_closed_form
from .digraph import build_D0
from .kedges import EdgeVector, crossing_from_cumulative, crossing_from_edges, lower_bound_leq_k

__all__ = [
    "Scenario",
    "ReportLine",
    "CertificationReport",
    "halving_upper_bound",
    "cumulative_lower_bound_nm1",
    "scenario_edges",
    "scenario_crossing",
    "optimal_remainder",
    "perturbed_scenarios",
    "k30_report",
    "ASSERTED_CLASS_CAPS",
]

# Per-class caps on N_15^{aa}, N_15^{bb}, N_15^{cc} from the two cases of the
# final case analysis. Taken as given, not re-derived.
ASSERTED_CLASS_CAPS = (
    ("case i2=4, cc=18", {"aa": 19, "cc": 18, "bb": 17}),
    ("case i2=4, cc<=17", {"aa": 19, "cc": 17, "bb": 18}),
    ("case i2=3, bb=18", {"aa": 19, "bb": 18, "cc": 17}),
    ("case i2=3, bb<=17", {"aa": 19, "bb": 17, "cc": 18}),
    ("no class at 19", {"aa": 18, "bb": 18, "cc": 18}),
)


def _floor(q: Fraction) -> int:
    return math.floor(q)


def halving_upper_bound(n: int, N_le_nm2: int) -> int:
    """Upper bound on N_{n//2} given N_{<= n//2 - 2}."""
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    c = comb(n, 2)
    if n % 2 == 0:
        return _floor(Fraction(c, 2) - Fraction(N_le_nm2, 2))
    return _floor(Fraction(2, 3) * c - Fraction(2, 3) * N_le_nm2 + Fraction(1, 3))


def cumulative_lower_bound_nm1(n: int) -> int:
    """Lower bound on N_{<= n//2 - 1}."""
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    c = comb(n, 2)
    if n % 2 == 0:
        return c - _floor(Fraction(n * (n + 30), 24) - 3)
    return c - _floor(Fraction((n - 3) * (n + 45), 18) + Fraction(1, 9))


@dataclass(frozen=True)
class Scenario:
    """A hypothetical critical profile.

    Levels ``1..tight_upto`` take the cumulative values forced by the
    (<=k)-edge lower bound (N_{<=j} = bound(n, j-1)); ``explicit`` holds N_j
    for the levels above, in order.
    """

    n: int
    tight_upto: int
    explicit: tuple[int, ...] = ()
    bumps: dict = field(default_factory=dict)  # level j -> extra units added to N_{<=j}

    def cumulative_N(self) -> list[int]:
        n = self.n
        if len(self.explicit) != n // 2 - self.tight_upto:
            raise ValueError(f"expected {n // 2 - self.tight_upto} explicit levels, "
                             f"got {len(self.explicit)}")
        cum = [lower_bound_leq_k(n, j - 1) + self.bumps.get(j, 0)
               for j in range(1, self.tight_upto + 1)]
        run = cum[-1] if cum else 0
        for Nj in self.explicit:
            run += Nj
            cum.append(run)
        return cum

    def N(self) -> list[int]:
        cum = self.cumulative_N()
        return [b - a for a, b in zip([0] + cum[:-1], cum)]


def scenario_edges(S: Scenario) -> EdgeVector:
    N = S.N()
    if any(x < 0 for x in N):
        raise ValueError(f"scenario has a negative level count: {N}")
    if sum(N) != comb(S.n, 2):
        raise ValueError(f"scenario levels sum to {sum(N)}, expected {comb(S.n, 2)}")
    return EdgeVector(S.n, tuple(N))


def scenario_crossing(S: Scenario) -> int:
    E = scenario_edges(S)
    value = crossing_from_edges(E)
    if value != crossing_from_cumulative(E):
        raise ArithmeticError("the two crossing identities disagree on this scenario")
    return value


def optimal_remainder(n: int, N_le_nm2: int) -> tuple[int, int]:
    """Cheapest (N_{n/2-1}, N_{n/2}) for even n allowed by both halving bounds.

    The crossing count grows with N_{<= n/2 - 1}, so it is pushed down to the
    larger of the two lower limits.
    """
    if n % 2:
        raise ValueError("only even n is supported")
    rest = comb(n, 2) - N_le_nm2
    N_le_nm1 = max(cumulative_lower_bound_nm1(n), comb(n, 2) - halving_upper_bound(n, N_le_nm2))
    return N_le_nm1 - N_le_nm2, rest - (N_le_nm1 - N_le_nm2)


def perturbed_scenarios(n: int = 30, k_max: int = 12):
    """Yield (k, scenario) with E_{<=k} one above the bound and the remainder re-optimized."""
    top = n // 2 - 2  # last level fixed by the bound, in N-indexing
    for k in range(k_max + 1):
        base = Scenario(n, top, (0, 0), {k + 1: 1})
        cum = base.cumulative_N()
        yield k, Scenario(n, top, optimal_remainder(n, cum[top - 1]), {k + 1: 1})


@dataclass(frozen=True)
class ReportLine:
    label: str
    computed: int
    stated: int | None
    source: str = "recomputed"

    @property
    def ok(self) -> bool:
        return self.stated is None or self.computed == self.stated


@dataclass
class CertificationReport:
    lines: list[ReportLine]
    final: int

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "final": self.final,
            "lines": [{"label": l.label, "computed": l.computed, "stated": l.stated,
                       "source": l.source, "ok": l.ok} for l in self.lines],
        }

    def render(self) -> str:
        width = max(len(l.label) for l in self.lines)
        out = [f"{'quantity':<{width}}  computed  stated  status"]
        for l in self.lines:
            stated = "-" if l.stated is None else str(l.stated)
            tag = "OK" if l.ok else "MISMATCH"
            if l.source != "recomputed":
                tag += f" ({l.source})"
            out.append(f"{l.label:<{width}}  {l.computed:>8}  {stated:>6}  {tag}")
        out.append(f"cr(K_30) = {self.final}")
        return "\n".join(out)


def k30_report() -> CertificationReport:
    """Recompute every number in the K_30 argument next to the value the argument states."""
    n = 30
    v = n // 3
    c2 = comb(n, 2)
    lines: list[ReportLine] = []
    add = lambda label, computed, stated, source="recomputed": lines.append(  # noqa: E731
        ReportLine(label, computed, stated, source))

    tight = [lower_bound_leq_k(n, k) for k in range(13)]
    for k in (0, 9, 10, 11, 12):
        add(f"E_<={k} tight value", tight[k], None)
    N_le13 = tight[12]
    add("N_<=13 = E_<=12", N_le13, 291)
    add("N_14 + h = C(30,2) - N_<=13", c2 - N_le13, 144)

    N15_max = halving_upper_bound(n, N_le13)
    add("N_15 upper bound (halving bound)", N15_max, 72)
    N_le14_min = cumulative_lower_bound_nm1(n)
    add("N_<=14 lower bound", N_le14_min, 363)
    add("N_14 lower bound = N_<=14 - N_<=13", N_le14_min - N_le13, 72)
    lower = scenario_crossing(Scenario(n, 13, (N_le14_min - N_le13, c2 - N_le14_min)))
    add("crossing lower bound with tight levels", lower, 9723)

    worst = min(scenario_crossing(S) for _, S in perturbed_scenarios(n, 12))
    add("min crossing with one non-tight level k<=12", worst, None)
    add("non-tight level forces crossings >= 9727", int(worst >= 9727), 1)

    bi = [bichromatic_closed_form(n, k) for k in range(1, 16)]
    add("N_<=10^bi", bi[9], 165)
    add("N_<=14^bi", bi[13], 285)
    add("N_<=15^bi = 3*(n/3)^2", bi[14], 300)
    add("N_15^bi", bi[14] - bi[13], 15)
    add("N_14^bi + N_15^bi", bi[14] - bi[12], 45)
    for k, stated in ((11, 6), (12, 12), (13, 18)):
        mono = (tight[k - 1] - tight[k - 2]) - (bi[k - 1] - bi[k - 2])
        add(f"N_{k}^mono", mono, stated)

    mono_center = (c2 - N_le13) - (bi[14] - bi[12])
    add("N_>13^mono = 144 - 45", mono_center, 99)
    add("N_>13^mono per class", mono_center // 3, 33)
    add("|D0(10,3)| ceiling on D_13", len(build_D0(v, n - 2 * 13 - 1)), 33)
    add("|D0(10,1)| ceiling on D_14", len(build_D0(v, n - 2 * 14 - 1)), 20)

    totals = {sum(caps.values()) for _, caps in ASSERTED_CLASS_CAPS}
    for name, caps in ASSERTED_CLASS_CAPS:
        add(f"N_15^mono cap, {name}", sum(caps.values()), 54, "asserted caps")
    add("all case assignments agree", int(len(totals) == 1), 1)
    mono15 = max(totals)
    N15 = mono15 + (bi[14] - bi[13])
    add("N_15 upper bound = 54 + 15", N15, 69)
    N14 = (c2 - N_le13) - N15
    add("N_14 = 144 - N_15", N14, 75)
    final = scenario_crossing(Scenario(n, 13, (N14, N15)))
    add("cr(K_30)", final, 9726)
    return CertificationReport(lines, final)
