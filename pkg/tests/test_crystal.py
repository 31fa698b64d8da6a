from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfold.cartan import Weight, named
from qfold.crystal import (
    CartanMismatch,
    CrystalGraph,
    CrystalVertex,
    MonomialModel,
    NonInvariantHighestWeight,
    build_crystal,
    crystal_isomorphic,
    crystal_to_dot,
    decompose_by_highest_weight,
    fold_crystal,
    folded_cartan,
    string_data,
    tensor_crystal,
    tensor_e,
    verify_crystal_axioms,
)
from qfold.oracle import NotDominant, char_convolve, full_character
from qfold.quiver import fold_from_cartan, framing_vector
from qfold.suite import fold_check


def oracle_decomposition(cd, lams):
    """Highest weights of a tensor product by peeling Freudenthal characters."""
    ch = full_character(cd, cd.weight(lams[0]))
    for lam in lams[1:]:
        ch = char_convolve(ch, full_character(cd, cd.weight(lam)))
    rest = Counter({w.coords: m for w, m in ch.table.items()})
    out = Counter()
    while +rest:
        top = max((c for c in rest if rest[c] > 0), key=lambda c: _height_key(cd, c))
        k = rest[top]
        out[top] += k
        for w, m in full_character(cd, Weight(top)).table.items():
            rest[w.coords] -= k * m
        assert all(x >= 0 for x in rest.values())
        rest = +rest
    return out


def _height_key(cd, coords):
    # sym_form against rho orders weights compatibly with the dominance order
    from qfold.cartan import sym_form

    return sym_form(cd, Weight(coords), Weight((1,) * cd.rank))


def by_coords(counter):
    return Counter({w.coords: m for w, m in counter.items()})


def test_a1_string():
    cd = named("A1")
    B = build_crystal(cd, cd.weight((2,)))
    assert len(B) == 3
    assert B.edges() == [(0, 0, 1), (1, 0, 2)]
    assert [v.wt.coords for v in B.vertices] == [(2,), (0,), (-2,)]
    assert string_data(B, 0, 0) == (0, 2, 0)
    assert string_data(B, 2, 0) == (2, 0, 0)


@pytest.mark.parametrize(
    "name, coords, size", [("C2", (0, 1), 4), ("C2", (1, 0), 5), ("C2", (1, 1), 16), ("G2", (0, 1), 7), ("B3", (0, 0, 1), 8)]
)
def test_crystal_sizes_and_characters(name, coords, size):
    cd = named(name)
    lam = cd.weight(coords)
    B = build_crystal(cd, lam)
    assert len(B) == size
    assert B.counts_by_depth() == Counter(full_character(cd, lam).by_depth())
    assert verify_crystal_axioms(B)["ok"]
    assert decompose_by_highest_weight(B) == Counter({B.vertices[0].wt: 1})


def test_affine_window_matches_freudenthal():
    cd = named("A1~")
    lam = cd.weight((1, 0))
    B = build_crystal(cd, lam, depth=6)
    assert not B.complete
    assert B.counts_by_depth() == Counter(full_character(cd, lam, 6).by_depth())
    assert verify_crystal_axioms(B)["ok"]


def test_not_dominant():
    with pytest.raises(NotDominant):
        build_crystal(named("A2"), Weight((0, -1)))


def test_monomial_e_inverts_f():
    cd = named("G2")
    model = MonomialModel(cd)
    B = build_crystal(cd, cd.weight((1, 1)))
    for v in B.vertices:
        m = dict(v.payload)
        for i in cd.indices:
            t = model.f(m, i)
            if t is not None:
                assert model.e(t, i) == {k: x for k, x in m.items() if x}
            assert model.phi(m, i) - model.eps(m, i) == v.wt.coords[i]


def test_orientation_does_not_change_the_crystal_up_to_isomorphism():
    cd = named("A3")
    lam = cd.weight((1, 0, 1))
    B1 = build_crystal(cd, lam)
    B2 = build_crystal(cd, lam, orientation=[(1, 0), (2, 1)])
    assert crystal_isomorphic(B1, B2) is not None


def test_a1_tensor_square():
    cd = named("A1")
    B1 = build_crystal(cd, cd.weight((1,)))
    T = tensor_crystal(B1, B1)
    assert len(T) == 4
    assert by_coords(decompose_by_highest_weight(T)) == Counter({(2,): 1, (0,): 1})
    assert verify_crystal_axioms(T)["ok"]
    assert crystal_isomorphic(build_crystal(cd, cd.weight((2,))), T) is None


@pytest.mark.parametrize(
    "name, lams",
    [
        ("A1", [(1,), (2,)]),
        ("C2", [(1, 0), (1, 0)]),
        ("C2", [(0, 1), (0, 1)]),
        ("C2", [(1, 0), (0, 1)]),
        ("G2", [(0, 1), (0, 1)]),
        ("A2", [(1, 0), (1, 0), (0, 1)]),
    ],
)
def test_tensor_decomposition_against_characters(name, lams):
    cd = named(name)
    T = build_crystal(cd, cd.weight(lams[0]))
    for lam in lams[1:]:
        T = tensor_crystal(T, build_crystal(cd, cd.weight(lam)))
    assert verify_crystal_axioms(T)["ok"]
    assert by_coords(decompose_by_highest_weight(T)) == oracle_decomposition(cd, lams)


def test_tensor_e_inverts_tensor_f():
    cd = named("C2")
    B1 = build_crystal(cd, cd.weight((1, 0)))
    B2 = build_crystal(cd, cd.weight((0, 1)))
    T = tensor_crystal(B1, B2)
    n2 = len(B2)
    for (src, i), tgt in T.f.items():
        assert tensor_e(B1, B2, tgt // n2, tgt % n2, i) == (src // n2, src % n2)
    for v in T.vertices:
        for i in cd.indices:
            if T.e_op(v.id, i) is None:
                assert tensor_e(B1, B2, v.id // n2, v.id % n2, i) is None


def test_unit_object():
    cd = named("C2")
    B = build_crystal(cd, cd.weight((1, 1)))
    one = build_crystal(cd, cd.weight((0, 0)))
    assert crystal_isomorphic(tensor_crystal(B, one), B) is not None
    assert crystal_isomorphic(tensor_crystal(one, B), B) is not None
    assert decompose_by_highest_weight(tensor_crystal(one, B)) == Counter({B.vertices[0].wt: 1})


@pytest.mark.parametrize("name, lams", [("A1", [(1,), (1,), (2,)]), ("C2", [(0, 1), (1, 0), (0, 1)])])
def test_tensor_associativity(name, lams):
    cd = named(name)
    b1, b2, b3 = (build_crystal(cd, cd.weight(x)) for x in lams)
    left = tensor_crystal(tensor_crystal(b1, b2), b3)
    right = tensor_crystal(b1, tensor_crystal(b2, b3))
    assert crystal_isomorphic(left, right) is not None


def test_tensor_cartan_mismatch():
    a = build_crystal(named("A2"), Weight((1, 0)))
    b = build_crystal(named("C2"), Weight((1, 0)))
    with pytest.raises(CartanMismatch):
        tensor_crystal(a, b)


def _relabel(B, perm):
    inv = {old: new for new, old in enumerate(perm)}
    verts = [None] * len(B)
    for v in B.vertices:
        verts[inv[v.id]] = CrystalVertex(inv[v.id], v.wt, v.eps, v.phi, v.payload)
    f = {(inv[a], i): inv[b] for (a, i), b in B.f.items()}
    return CrystalGraph(B.cd, verts, f, [inv[h] for h in B.highest], B.complete, B.window)


def test_isomorphism_examples():
    cd = named("C2")
    B = build_crystal(cd, cd.weight((1, 1)))
    assert crystal_isomorphic(B, B) == {v.id: v.id for v in B.vertices}
    perm = list(reversed(range(len(B))))
    R = _relabel(B, perm)
    iso = crystal_isomorphic(B, R)
    assert iso == {old: new for new, old in enumerate(perm)}
    other = build_crystal(cd, cd.weight((2, 0)))
    assert crystal_isomorphic(B, other) is None
    a1 = named("A1")
    assert crystal_isomorphic(build_crystal(a1, Weight((3,))), tensor_crystal(*[build_crystal(a1, Weight((1,)))] * 2)) is None


def test_string_data_axiom():
    cd = named("G2")
    B = build_crystal(cd, cd.weight((1, 1)))
    for v in B.vertices:
        for i in cd.indices:
            eps, phi, top = string_data(B, v.id, i)
            assert phi - eps == v.wt.coords[i]
            assert B.vertices[top].eps[i] == 0
    assert all(e == 0 for e in B.vertices[0].eps)


def test_folded_cartan_of_a3_swap():
    q = fold_from_cartan(named("C2"))
    fcd, orbits = folded_cartan(q.unfolded_cartan(), q.vertex_permutation())
    assert fcd.C == ((2, -1), (-2, 2)) and fcd.s == (2, 1)
    assert orbits == [(0, 1), (2,)]


def test_fold_with_identity_is_identity():
    cd = named("A3")
    B = build_crystal(cd, cd.weight((1, 1, 0)))
    F = fold_crystal(B, (0, 1, 2))
    assert len(F) == len(B)
    assert crystal_isomorphic(F, B) is not None


@pytest.mark.parametrize("coords", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_fold_a3_swap_matches_c2(coords):
    r = fold_check(named("C2"), coords)
    assert r["isomorphic"], r
    assert r["folded"] == r["direct"]


def test_fold_d4_triality_matches_g2():
    for coords in ((0, 1), (1, 0)):
        r = fold_check(named("G2"), coords)
        assert r["isomorphic"], r


def test_fold_rejects_non_invariant_highest_weight():
    cd = named("C2")
    q = fold_from_cartan(cd)
    ucd = q.unfolded_cartan()
    B = build_crystal(ucd, ucd.weight((1, 0, 0)))
    with pytest.raises(NonInvariantHighestWeight):
        fold_crystal(B, q.vertex_permutation())
    assert framing_vector(q, (1, 0)) == (1, 1, 0)


def test_fold_rejects_non_automorphism():
    B = build_crystal(named("A3"), Weight((1, 0, 1)))
    with pytest.raises(ValueError):
        fold_crystal(B, (1, 0, 2))


def test_dot_export():
    cd = named("A1")
    dot = crystal_to_dot(build_crystal(cd, cd.weight((2,))))
    assert dot.count("->") == 2
    assert 'label="(2)"' in dot


@settings(max_examples=15)
@given(st.integers(0, 2), st.integers(0, 2))
def test_fold_property_c2(a, b):
    assert fold_check(named("C2"), (a, b))["isomorphic"]


@settings(max_examples=15)
@given(st.sampled_from(["A2", "C2", "G2"]), st.data())
def test_crystal_character_property(name, data):
    cd = named(name)
    coords = tuple(data.draw(st.lists(st.integers(0, 2), min_size=cd.rank, max_size=cd.rank)))
    lam = cd.weight(coords)
    B = build_crystal(cd, lam)
    assert B.counts_by_depth() == Counter(full_character(cd, lam).by_depth())
    assert verify_crystal_axioms(B)["ok"]
