import itertools
from math import factorial

import pytest

from fusedhecke.errors import HypothesisViolated
from fusedhecke.fused import fused_count
from fusedhecke.scalars import GENERIC, RatFunc, ScalarMode
from fusedhecke.tableaux import (
    BratteliFilter,
    Dominance,
    SemiStdTableau,
    StdBiTableau,
    axial_distance,
    bratteli,
    content,
    dim_std,
    dominance,
    enumerate_bipartitions,
    enumerate_sstab,
    enumerate_std,
    irr_fused,
    parse_bipartition,
    format_bipartition,
    partitions,
    phi_bijection,
    psi_bijection,
    semisimple,
)

K1, K2 = RatFunc.gens()


def brute_std(shape):
    """Standard fillings by trying every assignment of 1..n to the cells."""
    cells = [(l, r, c) for l, part in enumerate(shape) for r, length in enumerate(part) for c in range(length)]
    out = set()
    for perm in itertools.permutations(range(1, len(cells) + 1)):
        rows = [[[0] * length for length in part] for part in shape]
        for (l, r, c), v in zip(cells, perm):
            rows[l][r][c] = v
        t = StdBiTableau(tuple(tuple(tuple(row) for row in comp) for comp in rows))
        if t.is_standard():
            out.add(t)
    return out


@pytest.mark.parametrize("n", range(0, 5))
def test_standard_tableaux_match_brute_force(n):
    for lam in enumerate_bipartitions(n):
        found = enumerate_std(lam)
        assert set(found) == brute_std(lam)
        assert len(found) == dim_std(lam)


@pytest.mark.parametrize("n", range(0, 6))
def test_sum_of_squares(n):
    assert sum(dim_std(lam) ** 2 for lam in enumerate_bipartitions(n)) == 2**n * factorial(n)


def test_bipartition_counts():
    assert [len(enumerate_bipartitions(n)) for n in range(6)] == [1, 2, 5, 10, 20, 36]
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_contents_and_axial_distance():
    t = StdBiTableau((((1, 2),), ((3,),)))
    assert content(t, 1, GENERIC) == K1
    assert content(t, 2, GENERIC) == K1 + 1
    assert content(t, 3, GENERIC) == K2
    assert axial_distance(t, 1, GENERIC) == -1
    assert axial_distance(t, 2, GENERIC) == K1 + 1 - K2


def test_dominance_and_swap():
    a = StdBiTableau((((1, 2),), ()))
    assert a.swap(1) is None
    s = StdBiTableau((((1,),), ((2,),)))
    t = s.swap(1)
    assert t == StdBiTableau((((2,),), ((1,),)))
    assert dominance(s, t) in (Dominance.GREATER, Dominance.LESS)
    assert dominance(s, s) is Dominance.EQUAL


def test_restriction_order():
    for lam in enumerate_bipartitions(4):
        ts = enumerate_std(lam)
        keys = [tuple(t.restrict(m).shape for m in range(t.n, 0, -1)) for t in ts]
        assert len(set(keys)) == len(ts)


def test_semisimplicity_criterion():
    assert semisimple(5, GENERIC)
    assert not semisimple(2, ScalarMode.parse("k1=0,k2=1"))
    assert semisimple(3, ScalarMode.parse("k1=0,k2=4"))
    assert not semisimple(4, ScalarMode.parse("k1=0,k2=3"))
    assert semisimple(4, ScalarMode.parse("k1=0,k2=7/2"))


def test_bratteli_dimensions():
    assert bratteli(4, BratteliFilter("avoiding")).level_dims() == [1, 2, 7, 34, 209]
    assert bratteli(3).level_dims() == [1, 2, 8, 48]
    g = bratteli(3, BratteliFilter("avoiding"))
    dot = g.to_dot()
    assert dot.startswith("digraph") and "level dims: 1, 2, 7, 34" in dot
    for level, lam, mu in g.edges:
        assert sum(map(sum, mu)) == sum(map(sum, lam)) + 1


def test_bipartition_text_round_trip():
    for lam in enumerate_bipartitions(3):
        assert parse_bipartition(format_bipartition(lam)) == lam


def test_semistandard_tableaux_of_shape_four_one():
    found = enumerate_sstab((4, 1), 3)
    assert [T.rows for T in found] == [((1, 1, 1, 2), (3,)), ((1, 1, 1, 3), (2,))]
    assert all(T.is_semistandard() and T.weight() == (3, 1, 1) for T in found)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_semistandard_counts_give_fused_dimension(k, n):
    assert sum(len(enumerate_sstab(lam, k)) ** 2 for lam in irr_fused(k, n)) == fused_count(k, n)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_bijection_round_trip(n):
    k = 3
    for lam in irr_fused(k, n):
        image_shapes = set()
        tabs = enumerate_sstab(lam, k)
        for T in tabs:
            t = phi_bijection(T, k)
            assert t.is_standard()
            assert psi_bijection(t, k) == T
            image_shapes.add(t.shape)
        assert len(image_shapes) <= 1
        if tabs:
            assert len(tabs) == dim_std(image_shapes.pop())


def test_bijection_worked_example_beyond_hypothesis():
    T = SemiStdTableau(((1, 1, 1, 2, 3), (4, 5), (6,)))
    assert T.is_semistandard()
    with pytest.raises(HypothesisViolated):
        phi_bijection(T, 3)
    t = phi_bijection(T, 3, check_hypothesis=False)
    assert t == StdBiTableau((((3, 4), (5,)), ((1, 2),)))


def test_single_row_bijection():
    T = SemiStdTableau(((1, 1, 1, 2, 3),))
    assert phi_bijection(T, 3) == StdBiTableau(((), ((1, 2),)))
