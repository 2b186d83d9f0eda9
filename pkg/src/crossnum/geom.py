"""Exact integer planar primitives and point-set I/O.

Every predicate here works on Python ints, so there is no rounding anywhere.
Point sets are required to be in general position: duplicates and collinear
triples are rejected when a :class:`PointSet` is built.
"""
from __future__ import annotations

import itertools
import random
import struct
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateInputError, FormatError

__all__ = [
    "Point",
    "PointSet",
    "orientation",
    "validate_general_position",
    "convex_hull",
    "convex_hull_size",
    "generate",
    "read_point_file",
    "parse_point_text",
    "format_point_text",
    "read_order_type_db",
    "decode_order_type_db",
    "GENERATORS",
]

GENERATORS = ("convex", "random-disk", "three-ray")


class Point(NamedTuple):
    x: int
    y: int

    def __sub__(self, other):  # type: ignore[override]
        return Point(self.x - other.x, self.y - other.y)

    def cross(self, other: "Point") -> int:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Point") -> int:
        return self.x * other.x + self.y * other.y


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of det(q - p, r - p): +1 counterclockwise, -1 clockwise, 0 collinear."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def validate_general_position(points: Iterable[Sequence[int]]) -> bool:
    pts = [Point(int(p[0]), int(p[1])) for p in points]
    if len(set(pts)) != len(pts):
        return False
    return all(orientation(p, q, r) != 0 for p, q, r in itertools.combinations(pts, 3))


def _first_defect(pts: Sequence[Point]) -> str | None:
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            return f"duplicate point {tuple(p)} at indices {seen[p]} and {i}"
        seen[p] = i
    for (i, p), (j, q), (k, r) in itertools.combinations(enumerate(pts), 3):
        if orientation(p, q, r) == 0:
            return f"collinear triple at indices {i}, {j}, {k}"
    return None


class PointSet:
    """An ordered list of integer points in general position."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Sequence[int]], check: bool = True):
        pts = tuple(Point(int(p[0]), int(p[1])) for p in points)
        if check:
            defect = _first_defect(pts)
            if defect is not None:
                raise DegenerateInputError(f"general position violated: {defect}")
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({[tuple(p) for p in self.points]!r})"


def convex_hull(points: Sequence[Point]) -> list[int]:
    """Indices of the hull vertices in counterclockwise order (monotone chain)."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    if len(order) < 3:
        return order

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and orientation(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def convex_hull_size(P: PointSet | Sequence[Point]) -> int:
    pts = P.points if isinstance(P, PointSet) else tuple(Point(*p) for p in P)
    if len(pts) >= 3 and not validate_general_position(pts):
        raise DegenerateInputError("general position violated")
    return len(convex_hull(pts))


# ----------------------------------------------------------------------
# generators

# Integer directions of the three rays at 90, 210 and 330 degrees.
_RAYS = (Point(0, 1000), Point(-866, -500), Point(866, -500))
_MAX_RETRIES = 64


def _convex(n: int, rng: random.Random) -> list[Point]:
    # Points on the parabola y = x^2 are in convex position with no three collinear.
    xs = sorted(rng.sample(range(-4 * n, 4 * n + 1), n))
    pts = [Point(x, x * x) for x in xs]
    rng.shuffle(pts)
    return pts


def _random_disk(n: int, rng: random.Random, radius: int = 1 << 10) -> list[Point]:
    pts: list[Point] = []
    while len(pts) < n:
        x = rng.randint(-radius, radius)
        y = rng.randint(-radius, radius)
        if x * x + y * y > radius * radius:
            continue
        p = Point(x, y)
        if p in pts or any(orientation(a, b, p) == 0 for a, b in itertools.combinations(pts, 2)):
            continue
        pts.append(p)
    return pts


def _three_ray(n: int, rng: random.Random, growth: int) -> list[Point]:
    per = n // 3
    pts = []
    for ray in _RAYS:
        for j in range(per):
            r = growth ** j
            pts.append(Point(r * ray.x + rng.randint(-3, 3), r * ray.y + rng.randint(-3, 3)))
    return pts


def generate(kind: str, n: int, seed: int = 0, growth: int = 8) -> PointSet:
    """Deterministic fixture generator.

    ``three-ray`` puts n/3 points on each of three rays at 90, 210 and 330
    degrees with radii ``growth**j`` (times 1000) plus a seeded perturbation
    of at most 3 units per coordinate. It aims at the tight edge vector
    ``E_{<=k} = 3*C(k+2, 2)`` for ``k < n/3`` but does not guarantee it; use
    :func:`crossnum.kedges.tuned_three_ray` when tightness is required.
    """
    if kind not in GENERATORS:
        raise ValueError(f"unknown generator {kind!r}; expected one of {GENERATORS}")
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if kind == "three-ray" and n % 3:
        raise ValueError(f"three-ray needs n divisible by 3, got {n}")
    if growth < 2:
        raise ValueError(f"growth must be an integer >= 2, got {growth}")
    for attempt in range(_MAX_RETRIES):
        rng = random.Random(f"{kind}:{n}:{seed}:{growth}:{attempt}")
        if kind == "convex":
            pts = _convex(n, rng)
        elif kind == "random-disk":
            pts = _random_disk(n, rng)
        else:
            pts = _three_ray(n, rng, growth)
        if validate_general_position(pts):
            return PointSet(pts)
    raise DegenerateInputError(
        f"could not generate a {kind} set in general position after {_MAX_RETRIES} retries")


# ----------------------------------------------------------------------
# point file formats

def parse_point_text(text: str, source: str = "<text>") -> list[PointSet]:
    """Parse the text point format: a count line, then "x y" lines; sets separated by blank lines."""
    sets: list[PointSet] = []
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if not line or line.startswith("#"):
            i += 1
            continue
        try:
            n = int(line)
        except ValueError:
            raise FormatError(f"{source}:{i + 1}: expected point count, got {line!r}") from None
        if n < 0:
            raise FormatError(f"{source}:{i + 1}: negative point count {n}")
        header = i + 1
        i += 1
        pts = []
        while len(pts) < n:
            if i >= len(lines):
                raise FormatError(f"{source}: set starting at line {header} truncated: "
                                  f"expected {n} points, got {len(pts)}")
            raw = lines[i].strip()
            i += 1
            if raw.startswith("#"):
                continue
            if not raw:
                raise FormatError(f"{source}:{i}: blank line inside set starting at line {header}")
            fields = raw.split()
            if len(fields) != 2:
                raise FormatError(f"{source}:{i}: expected 'x y', got {raw!r}")
            try:
                pts.append((int(fields[0]), int(fields[1])))
            except ValueError:
                raise FormatError(f"{source}:{i}: non-integer coordinate in {raw!r}") from None
        try:
            sets.append(PointSet(pts))
        except DegenerateInputError as exc:
            raise DegenerateInputError(f"{source}: set #{len(sets)} (line {header}): {exc}") from None
    return sets


def format_point_text(sets: Iterable[PointSet]) -> str:
    blocks = []
    for P in sets:
        blocks.append("\n".join([str(P.n)] + [f"{p.x} {p.y}" for p in P]))
    return "\n\n".join(blocks) + "\n"


def read_point_file(path: str | Path) -> list[PointSet]:
    path = Path(path)
    return parse_point_text(path.read_text(), source=str(path))


def decode_order_type_db(data: bytes, n: int, bits: int) -> list[PointSet]:
    if bits not in (8, 16):
        raise ValueError(f"bits must be 8 or 16, got {bits}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    width = bits // 8
    record = 2 * n * width
    if len(data) % record:
        full = len(data) // record
        raise FormatError(f"truncated record at byte offset {full * record}: "
                          f"{len(data) - full * record} of {record} bytes present")
    fmt = f"<{2 * n}{'B' if bits == 8 else 'H'}"
    sets = []
    for s, coords in enumerate(struct.iter_unpack(fmt, data)):
        pts = list(zip(coords[0::2], coords[1::2]))
        try:
            sets.append(PointSet(pts))
        except DegenerateInputError as exc:
            raise DegenerateInputError(f"set #{s} at byte offset {s * record}: {exc}") from None
    return sets


def read_order_type_db(path: str | Path, n: int, bits: int) -> list[PointSet]:
    """Read a headerless binary order-type file of n-point sets."""
    return decode_order_type_db(Path(path).read_bytes(), n, bits)
