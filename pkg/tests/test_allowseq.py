import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import assume, given, settings, strategies as st

from _corpus import TRIANGLE_PLUS_INTERIOR, tuned
from crossnum.allowseq import (
    HalfPeriod,
    center_entry_permutation,
    classify_steps,
    critical_profile,
    format_half_period,
    from_point_set,
    has_confined_steps,
    is_perfect,
    k_labeling,
    parse_half_period,
    reduced_words,
    reverse,
    rotate,
    validate,
)
from crossnum.errors import FormatError
from crossnum.geom import Point, PointSet, generate, validate_general_position
from crossnum.kedges import edge_vector


def _angle_key(e):
    # e lies in the upper half-plane, or on the positive x-axis; order by angle
    if e.y == 0:
        return (0, 0)
    return (1, Fraction(-e.x, e.y))


def _normal(p, q):
    e = Point(q.y - p.y, p.x - q.x)
    if e.y < 0 or (e.y == 0 and e.x < 0):
        e = Point(-e.x, -e.y)
    return e


def _sweep_oracle(P):
    """Permutations after each group of simultaneous events, by sorting projections."""
    pts = P.points
    dirs = sorted({_normal(pts[i], pts[j]) for i, j in itertools.combinations(range(P.n), 2)},
                  key=_angle_key)
    groups = []
    for d in dirs:
        if groups and _angle_key(groups[-1]) == _angle_key(d):
            continue
        groups.append(d)
    out = []
    for a, b in zip(groups, groups[1:]):
        u = Point(a.x + b.x, a.y + b.y)
        out.append(tuple(sorted(range(P.n), key=lambda i: pts[i].dot(u))))
    return out


def _group_ends(P):
    pts = P.points
    keys = sorted(_angle_key(_normal(pts[i], pts[j])) for i, j in itertools.combinations(range(P.n), 2))
    ends = []
    for t, key in enumerate(keys, 1):
        if t == len(keys) or keys[t] != key:
            ends.append(t)
    return ends


@pytest.mark.parametrize("kind,n,seed", [
    ("convex", 7, 0), ("random-disk", 8, 1), ("random-disk", 11, 2), ("three-ray", 9, 4),
])
def test_sweep_matches_projection_oracle(kind, n, seed):
    P = generate(kind, n, seed)
    H = from_point_set(P)
    perms = list(H.permutations())
    expected = _sweep_oracle(P)
    ends = _group_ends(P)
    for t, perm in zip(ends, expected):
        assert perms[t] == perm


point_sets = st.lists(
    st.tuples(st.integers(-50, 50), st.integers(-50, 50)), min_size=3, max_size=9, unique=True)


@settings(max_examples=80, deadline=None)
@given(point_sets)
def test_sequence_valid_and_profile_matches_edges(raw):
    assume(validate_general_position(raw))
    P = PointSet(raw)
    H = from_point_set(P)
    assert validate(H)
    cum = edge_vector(P).cumulative
    prof = critical_profile(H)
    assert prof.cumulative == cum


def test_convex_six_profile():
    prof = critical_profile(from_point_set(generate("convex", 6)))
    assert prof.N == (6, 6, 3)
    assert prof.h == 3


def test_tuned_nine_profile():
    prof = critical_profile(from_point_set(tuned(9)))
    assert [prof.N_leq(k) for k in (1, 2, 3)] == [3 * comb(k + 1, 2) for k in (1, 2, 3)]


def test_validate_messages():
    assert not validate(HalfPeriod((0, 1, 2), (1, 1, 2)))
    assert "swapped twice" in validate(HalfPeriod((0, 1, 2), (1, 1, 2))).message
    assert "expected 3 steps" in validate(HalfPeriod((0, 1, 2), (1,))).message
    assert "out of range" in validate(HalfPeriod((0, 1, 2), (0, 1, 2))).message


def test_rotate_and_reverse():
    H = from_point_set(generate("random-disk", 7, 5))
    C = H.length
    base = sorted(critical_profile(H).N)
    for t in range(2 * C):
        R = rotate(H, t)
        assert validate(R)
        assert sorted(critical_profile(R).N) == base
    half = rotate(H, C)
    assert half.initial == H.final
    assert half.gates == tuple(H.n - g for g in H.gates)
    back = reverse(H)
    assert validate(back)
    assert critical_profile(back) == critical_profile(H)
    assert reverse(HalfPeriod(("x", "y", "z"), (1, 2, 1))).initial == ("z", "y", "x")
    with pytest.raises(ValueError):
        rotate(H, 2 * C)


def test_reduced_words_counts():
    # numbers of reduced words of the longest permutation: 1, 2, 16, 768
    assert [sum(1 for _ in reduced_words(n)) for n in (2, 3, 4, 5)] == [1, 2, 16, 768]
    assert all(validate(H) for H in reduced_words(5))


def test_labeling():
    L = k_labeling(HalfPeriod(tuple("pqrstu"), ()), 2)
    assert [L.name(x) for x in "pqrstu"] == ["a2", "a1", "b1", "b2", "c1", "c2"]
    assert L.label_of("c", 2) == "u"
    with pytest.raises(ValueError):
        k_labeling(HalfPeriod(tuple("pqrs"), ()), 2)


def test_first_exit_is_discovery_and_liberates():
    H = HalfPeriod((0, 1, 2, 3), (1, 2, 3, 1, 2, 1))
    cls = classify_steps(H, 1)
    first = cls.tags[0]
    assert first.gate == 1 and first.zone == "A"
    assert 0 in first.discovery_for
    assert cls.liberation.order[0] == 0


def test_confined_steps_refused():
    # n=6, k=2: the first step swaps a2 and a1, both still confined
    H = next(h for h in reduced_words(6) if h.gates[0] == 1)
    assert has_confined_steps(H, 2)
    rep = is_perfect(H, 2)
    assert not rep.decided and not rep
    assert rep.confined_steps[0] == 1


def test_perfect_iff_exact_on_tight_three_ray():
    H = from_point_set(tuned(9))
    found = False
    for t in range(2 * H.length):
        R = rotate(H, t)
        cls = classify_steps(R, 2)
        if cls.confined_steps:
            continue
        rep = is_perfect(R, 2, cls)
        prof = critical_profile(R)
        assert bool(rep) == (prof.N_leq(1) == 3 and prof.N_leq(2) == 9)
        found = found or bool(rep)
    assert found


def test_liberation_consecutive_on_perfect_words():
    for n in (4, 5):
        for H in reduced_words(n):
            for k in range(1, (n + 1) // 2):
                rep = is_perfect(H, k)
                if not rep:
                    continue
                cls = classify_steps(H, k)
                kinds = "".join(cls.labeling.role[x][0] for x in cls.liberation.order)
                assert "a" * k in kinds or "c" * k in kinds


def test_center_entry():
    H = HalfPeriod(("a", "b", "c"), (1, 2, 1))
    assert center_entry_permutation(H, "a", 0) == H.initial
    with pytest.raises(KeyError):
        center_entry_permutation(H, "z", 0)
    G = HalfPeriod((0, 1, 2, 3, 4, 5), ())
    with pytest.raises(ValueError):
        center_entry_permutation(G, 0, 2)
    H6 = from_point_set(generate("convex", 6))
    x = H6.initial[0]
    perm = center_entry_permutation(H6, x, 2)
    assert perm.index(x) + 1 in (3, 4)


def test_half_period_round_trip():
    H = from_point_set(TRIANGLE_PLUS_INTERIOR[5])
    assert parse_half_period(format_half_period(H)) == H
    labelled = HalfPeriod(("x", "y", "z"), (1, 2, 1))
    assert parse_half_period(format_half_period(labelled)) == labelled
    with pytest.raises(FormatError):
        parse_half_period("3\n")
