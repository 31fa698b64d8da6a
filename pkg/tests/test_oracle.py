import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfold.cartan import Weight, named
from qfold.oracle import (
    CharacterTable,
    DepthExceeded,
    NotDominant,
    NotFiniteType,
    RootMultiplicities,
    char_convolve,
    freudenthal_multiplicity,
    full_character,
    real_positive_roots,
    weyl_dim,
)


def partitions(n):
    if n < 0:
        return 0
    p = [1] + [0] * n
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            p[m] += p[m - k]
    return p[n]


def test_positive_root_counts():
    assert len(real_positive_roots(named("A1"))) == 1
    assert len(real_positive_roots(named("C2"))) == 4
    assert len(real_positive_roots(named("G2"))) == 6
    assert len(real_positive_roots(named("B3"))) == 9
    assert len(real_positive_roots(named("D4"))) == 12
    with pytest.raises(NotFiniteType):
        real_positive_roots(named("A1~"))


def test_affine_root_multiplicities():
    rm = RootMultiplicities(named("A1~"), 6).positive_roots()
    # real roots (n+1, n), (n, n+1) and imaginary roots (n, n), all of multiplicity one
    expected = {}
    for n in range(4):
        for beta in ((n + 1, n), (n, n + 1)):
            if sum(beta) <= 6:
                expected[beta] = 1
        if 0 < 2 * n <= 6:
            expected[(n, n)] = 1
    assert rm == expected


def test_a1_string():
    cd = named("A1")
    lam = cd.weight((2,))
    assert freudenthal_multiplicity(cd, lam, (1,), 2) == 1
    assert freudenthal_multiplicity(cd, lam, (0,), 2) == 1
    assert freudenthal_multiplicity(cd, lam, (3,), 3) == 0


def test_c2_fundamental_multiplicities():
    cd = named("C2")
    for coords in ((1, 0), (0, 1)):
        lam = cd.weight(coords)
        ch = full_character(cd, lam)
        assert ch.window is None
        assert all(m == 1 for m in ch.table.values()) or coords == (1, 0)
        assert ch.total() == weyl_dim(cd, lam)
    # the 4-dimensional module has four weights of multiplicity one
    ch4 = full_character(cd, cd.weight((0, 1)))
    assert sorted(ch4.table.values()) == [1, 1, 1, 1]
    # the 5-dimensional one has a zero weight of multiplicity one
    ch5 = full_character(cd, cd.weight((1, 0)))
    assert sorted(ch5.table.values()) == [1] * 5


def test_weyl_dims():
    assert [weyl_dim(named("A1"), Weight((n,))) for n in range(6)] == [1, 2, 3, 4, 5, 6]
    cd = named("C2")
    assert weyl_dim(cd, cd.weight((0, 1))) == 4
    assert weyl_dim(cd, cd.weight((1, 0))) == 5
    assert weyl_dim(cd, cd.weight((1, 1))) == 16
    g2 = named("G2")
    # index 1 has the smaller symmetrizer, so beta_2 is the short fundamental weight
    assert weyl_dim(g2, g2.weight((0, 1))) == 7
    assert weyl_dim(g2, g2.weight((1, 0))) == 14
    assert weyl_dim(named("A2"), Weight((1, 1))) == 8


def test_weyl_dim_errors():
    with pytest.raises(NotFiniteType):
        weyl_dim(named("A1~"), Weight((1, 0)))
    with pytest.raises(NotDominant):
        weyl_dim(named("A2"), Weight((-1, 0)))
    with pytest.raises(NotDominant):
        freudenthal_multiplicity(named("A2"), Weight((-1, 0)), (0, 0), 1)


def test_g2_zero_weight():
    cd = named("G2")
    ch = full_character(cd, cd.weight((0, 1)))
    zero = [m for w, m in ch.table.items() if w.coords == (0, 0)]
    assert zero == [1]
    assert ch.total() == 7
    # the adjoint module has the rank as zero-weight multiplicity
    ch = full_character(cd, cd.weight((1, 0)))
    assert [m for w, m in ch.table.items() if w.coords == (0, 0)] == [2]


def test_depth_exceeded():
    with pytest.raises(DepthExceeded):
        freudenthal_multiplicity(named("A1~"), Weight((1, 0)), (3, 2), 4)


@pytest.mark.parametrize("depth", [2, 4, 6])
def test_affine_basic_module_against_partitions(depth):
    cd = named("A1~")
    lam = cd.weight((1, 0))
    ch = full_character(cd, lam, depth)
    assert ch.window == depth
    got = ch.by_depth()
    for a in range(depth + 1):
        for b in range(depth + 1 - a):
            assert got.get((a, b), 0) == partitions(a - (a - b) ** 2), (a, b)


def test_convolution_examples():
    cd = named("A1")
    one = full_character(cd, Weight((1,)))
    prod = char_convolve(one, one)
    assert {w.coords[0]: m for w, m in prod.table.items()} == {2: 1, 0: 2, -2: 1}
    point = CharacterTable({Weight((0, 0), (0, 0)): 1}, None)
    ch = full_character(named("C2"), Weight((1, 1)))
    assert char_convolve(ch, point).table == ch.table


def test_convolution_respects_window():
    cd = named("A1~")
    c = full_character(cd, Weight((1, 0)), 3)
    prod = char_convolve(c, c)
    assert prod.window == 3
    assert all(sum(w.depth) <= 3 for w in prod.table)


def _reflect(cd, coords, i):
    k = coords[i]
    return tuple(c - k * cd.C[j][i] for j, c in enumerate(coords))


FINITE_WEIGHTS = [("A2", (1, 1)), ("A2", (2, 0)), ("C2", (1, 1)), ("C2", (2, 1)), ("G2", (1, 1)), ("B3", (1, 0, 1))]


@pytest.mark.parametrize("name, coords", FINITE_WEIGHTS)
def test_character_is_weyl_invariant_and_sums_to_weyl_dim(name, coords):
    cd = named(name)
    lam = cd.weight(coords)
    ch = full_character(cd, lam)
    by_coords = {w.coords: m for w, m in ch.table.items()}
    assert len(by_coords) == len(ch.table)
    for c, m in by_coords.items():
        for i in cd.indices:
            assert by_coords.get(_reflect(cd, c, i)) == m
    assert ch.total() == weyl_dim(cd, lam)
    assert by_coords[lam.coords] == 1


@settings(max_examples=30)
@given(st.sampled_from(["A1", "A2", "C2", "G2"]), st.data())
def test_freudenthal_total_equals_weyl(name, data):
    cd = named(name)
    coords = tuple(data.draw(st.lists(st.integers(0, 2), min_size=cd.rank, max_size=cd.rank)))
    lam = cd.weight(coords)
    assert full_character(cd, lam).total() == weyl_dim(cd, lam)
