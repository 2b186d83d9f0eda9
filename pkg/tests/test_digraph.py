from itertools import combinations

import pytest

from _corpus import tuned
from crossnum.allowseq import from_point_set, rotate
from crossnum.decomp import phase_stats, search_decomposition
from crossnum.digraph import (
    Digraph,
    build_D0,
    build_Dk,
    class_indices,
    format_digraph,
    hal,
    in_class,
    max_edges_oracle,
    top_block_complete,
)


def _brute_max(v, m):
    """Largest member of D(v, m) by scanning every subset of descending pairs."""
    pairs = [(i, j) for i in range(1, v + 1) for j in range(1, i)]
    best = 0
    for mask in range(1 << len(pairs)):
        size = bin(mask).count("1")
        if size <= best:
            continue
        out = [0] * (v + 1)
        inn = [0] * (v + 1)
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                out[i] += 1
                inn[j] += 1
        if all(out[i] <= m + inn[i] for i in range(1, v + 1)):
            best = size
    return best


@pytest.mark.parametrize("v", range(1, 6))
@pytest.mark.parametrize("m", range(4))
def test_oracle_against_bitmask_search(v, m):
    assert max_edges_oracle(v, m) == _brute_max(v, m) == len(build_D0(v, m))


def test_oracle_v6_m3_bitmask():
    assert _brute_max(6, 3) == max_edges_oracle(6, 3) == 13


def test_oracle_range():
    with pytest.raises(ValueError):
        max_edges_oracle(7, 1)


def test_in_class_examples():
    assert in_class(build_D0(10, 1), 1)
    tournament = Digraph(6, frozenset(combinations(range(6, 0, -1), 2)))
    assert len(tournament) == 15
    assert not in_class(tournament, 3)
    assert in_class(Digraph(6), 0)


def test_d0_complete_when_m_large():
    for v in range(1, 8):
        assert len(build_D0(v, v - 1)) == v * (v - 1) // 2


def test_d0_six_three_vs_induced_bottom_six():
    # the standalone recursion and the bottom six vertices of D0(10, 3) disagree
    assert len(build_D0(6, 3)) == 13
    assert len(build_D0(10, 3).induced(range(1, 7))) == 15


def test_top_block():
    assert top_block_complete(build_D0(10, 3), 4)
    G = build_D0(10, 1)
    assert (9, 7) in G.edges and (10, 8) not in G.edges
    assert not top_block_complete(G, 4)
    assert top_block_complete(G, 1)
    with pytest.raises(ValueError):
        top_block_complete(G, 11)


def test_digraph_validation_and_format():
    with pytest.raises(ValueError):
        Digraph(3, frozenset({(1, 2)}))
    with pytest.raises(ValueError):
        build_D0(0, 1)
    text = format_digraph(build_D0(3, 1), 1)
    assert text == "3 1\n3 2\n2 1\n"


def _decomposed(n, seed=0):
    H = from_point_set(tuned(n, seed))
    return H, search_decomposition(H)


@pytest.mark.parametrize("n", [6, 9, 12, 15])
def test_Dk_in_class_and_matches_center_counts(n):
    H, D = _decomposed(n)
    stats = phase_stats(H, D)
    for cls in "abc":
        prev = None
        for k in range(n // 2, -1, -1):
            G = build_Dk(H, D, cls, k)
            assert in_class(G, max(0, n - 2 * k - 1))
            assert len(G) == stats.center[cls * 2][k]
            if prev is not None:
                assert prev.edges <= G.edges
            prev = G
        assert len(build_Dk(H, D, cls, n // 2)) == 0


def test_class_indices_bijection():
    H, D = _decomposed(9)
    for cls in "abc":
        idx = class_indices(H, D, cls)
        assert sorted(idx.values()) == [1, 2, 3]


def test_hal_against_scan():
    n = 12
    H, D = _decomposed(n, 2)
    R = rotate(H, D.rotation) if D.rotation else H
    for cls in "abc":
        idx = class_indices(H, D, cls)
        scan = {j: 0 for j in idx.values()}
        for _, g, x, y in R.steps():
            if g == n // 2 and x in idx and y in idx:
                scan[max(idx[x], idx[y])] += 1
        assert {j: hal(H, D, cls, j) for j in idx.values()} == scan
        assert hal(H, D, cls, 1) == 0
    H9, D9 = _decomposed(9)
    with pytest.raises(ValueError):
        hal(H9, D9, "a", 1)
