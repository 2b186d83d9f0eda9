import struct

import pytest
from hypothesis import given, strategies as st

from crossnum.errors import DegenerateInputError, FormatError
from crossnum.geom import (
    GENERATORS,
    Point,
    PointSet,
    convex_hull_size,
    decode_order_type_db,
    format_point_text,
    generate,
    orientation,
    parse_point_text,
    read_order_type_db,
    validate_general_position,
)

coord = st.integers(-(1 << 20), 1 << 20)
point = st.builds(Point, coord, coord)


@given(point, point, point)
def test_orientation_antisymmetric(p, q, r):
    assert orientation(p, q, r) == -orientation(q, p, r)
    assert orientation(p, q, r) == orientation(q, r, p)


@given(point, point, point, point)
def test_orientation_translation_invariant(p, q, r, t):
    shifted = [Point(a.x + t.x, a.y + t.y) for a in (p, q, r)]
    assert orientation(*shifted) == orientation(p, q, r)


def test_orientation_large_coordinates_exact():
    big = 1 << 80
    assert orientation(Point(0, 0), Point(big, big + 1), Point(2 * big, 2 * big + 1)) == -1
    assert orientation(Point(0, 0), Point(big, big), Point(2 * big, 2 * big)) == 0


def test_pointset_rejects_collinear_and_duplicates():
    with pytest.raises(DegenerateInputError, match="general position violated"):
        PointSet([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateInputError, match="duplicate"):
        PointSet([(0, 0), (1, 0), (0, 0)])
    assert not validate_general_position([(0, 0), (1, 1), (3, 3)])
    assert validate_general_position([(0, 0), (1, 0), (0, 1)])


def test_convex_hull_size():
    assert convex_hull_size(PointSet([(0, 0), (10, 0), (5, 9), (5, 3)])) == 3
    assert convex_hull_size(generate("convex", 8)) == 8


@pytest.mark.parametrize("kind", GENERATORS)
def test_generators_deterministic_and_general(kind):
    n = 9
    P = generate(kind, n, seed=3)
    assert P == generate(kind, n, seed=3)
    assert P.n == n
    assert validate_general_position(P.points)


def test_generator_errors():
    with pytest.raises(ValueError):
        generate("three-ray", 10)
    with pytest.raises(ValueError):
        generate("spiral", 10)
    with pytest.raises(ValueError):
        generate("convex", 2)
    with pytest.raises(ValueError):
        generate("three-ray", 9, growth=1)


def test_three_ray_large_n():
    P = generate("three-ray", 30, seed=0, growth=8)
    assert P.n == 30


def test_text_round_trip():
    sets = [generate("random-disk", 6, s) for s in range(3)]
    text = format_point_text(sets)
    assert parse_point_text(text) == sets


def test_text_parse_comments_and_errors():
    text = "# header\n3\n0 0\n# inner\n5 0\n0 5\n"
    (P,) = parse_point_text(text)
    assert P.points == (Point(0, 0), Point(5, 0), Point(0, 5))
    with pytest.raises(FormatError, match="truncated"):
        parse_point_text("4\n0 0\n1 0\n")
    with pytest.raises(FormatError, match="expected 'x y'"):
        parse_point_text("3\n0 0 0\n1 0\n0 1\n")
    with pytest.raises(FormatError, match="non-integer"):
        parse_point_text("3\n0 0\n1.5 0\n0 1\n")
    with pytest.raises(DegenerateInputError, match="line 1"):
        parse_point_text("3\n0 0\n1 1\n2 2\n")


@pytest.mark.parametrize("bits,code", [(8, "B"), (16, "H")])
def test_binary_decode(bits, code, tmp_path):
    coords = [(0, 0), (200, 0), (100, 150), (90, 40)]
    flat = [c for p in coords for c in p]
    data = struct.pack(f"<{len(flat)}{code}", *flat) * 2
    sets = decode_order_type_db(data, 4, bits)
    assert len(sets) == 2
    assert sets[0].points == tuple(Point(*p) for p in coords)
    path = tmp_path / "db.bin"
    path.write_bytes(data)
    assert read_order_type_db(path, 4, bits) == sets


def test_binary_truncated_reports_offset():
    data = bytes([0, 0, 9, 0, 4, 7]) * 2 + bytes([1, 2])
    with pytest.raises(FormatError, match="byte offset 12"):
        decode_order_type_db(data, 3, 8)
    with pytest.raises(ValueError):
        decode_order_type_db(data, 3, 32)
