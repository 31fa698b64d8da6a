import pytest
from hypothesis import given

from qfold.cartan import named
from qfold.quiver import (
    LAYOUT,
    NonIntegerEntry,
    NonInvariantFraming,
    NotAdmissible,
    QuiverWithAut,
    a2_swap,
    cartan_from_quiver,
    fold_from_cartan,
    frame,
    framing_vector,
    to_dot,
    validate_admissible,
)
from strategies import rank2_gcm

BATTERY = ["A1", "A2", "A3", "B3", "C2", "G2", "D4", "A1~"]


def _power(q, k, v):
    for _ in range(k):
        v = q.vertex_aut[v]
    return v


def test_a1_single_vertex():
    q = fold_from_cartan(named("A1"))
    assert q.vertices == ((0, 0),)
    assert q.arrows == ()
    assert q.order() == 1
    assert cartan_from_quiver(q).C == ((2,),)


def test_c2_is_a3_with_arm_swap():
    q = fold_from_cartan(named("C2"))
    assert len(q.vertices) == 3
    assert sorted(len(o) for o in q.orbits()) == [1, 2]
    assert len(q.arrows) == 2
    assert q.order() == 2
    assert q.vertex_aut[(0, 0)] == (0, 1)
    unfolded = q.unfolded_cartan()
    # path graph: the fixed vertex is the middle of A3
    degrees = sorted(-sum(r) + 2 for r in unfolded.C)
    assert degrees == [1, 1, 2]
    back = cartan_from_quiver(q)
    assert back.C == ((2, -1), (-2, 2)) and back.s == (2, 1)


def test_g2_is_d4_with_triality():
    q = fold_from_cartan(named("G2"))
    assert len(q.vertices) == 4
    assert sorted(len(o) for o in q.orbits()) == [1, 3]
    assert len(q.arrows) == 3
    assert q.order() == 3
    centre = [v for v in q.vertices if q.vertex_aut[v] == v]
    assert len(centre) == 1
    assert all(centre[0] in arrow for arrow in q.arrows)
    assert cartan_from_quiver(q) == named("G2")


def test_unfolded_a3_identity_automorphism():
    verts = ("a", "b", "c")
    q = QuiverWithAut(verts, (("a", "b"), ("b", "c")), {v: v for v in verts}, (0, 1, 2, 3))
    assert validate_admissible(q)["ok"]
    assert cartan_from_quiver(q).C == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))


def test_a2_swap_rejected():
    rep = validate_admissible(a2_swap())
    assert not rep["ok"]
    assert "ends_in_distinct_orbits" in rep["violations"]
    with pytest.raises(NotAdmissible):
        cartan_from_quiver(a2_swap())


def test_automorphism_not_commuting_with_source_target():
    verts = ("a", "b", "c")
    # a swaps a and c but fixes the arrow a -> b, so a(s(h)) != s(a(h))
    q = QuiverWithAut(verts, (("a", "b"),), {"a": "c", "c": "a", "b": "b"}, (0, 1))
    rep = validate_admissible(q)
    assert "compatible_with_source_target" in rep["violations"]


def test_orientation_not_preserved():
    verts = ("a", "b")
    q = QuiverWithAut(verts, (("a", "b"),), {"a": "a", "b": "b"}, (1, 0))
    rep = validate_admissible(q)
    assert "preserves_orientation" in rep["violations"]


def test_mixed_orbit_sizes_read_back():
    # orbits of sizes 2 and 2 joined by one a-orbit of two arrows
    verts = ("x1", "x2", "y1", "y2")
    aut = {"x1": "x2", "x2": "x1", "y1": "y2", "y2": "y1"}
    q = QuiverWithAut(verts, (("x1", "y1"), ("x2", "y2")), aut, (2, 3, 0, 1))
    assert cartan_from_quiver(q).C == ((2, -1), (-1, 2))
    # orbits of sizes 3 and 2 joined by one a-orbit of six arrows
    verts = ("x1", "x2", "x3", "y1", "y2")
    aut = {"x1": "x2", "x2": "x3", "x3": "x1", "y1": "y2", "y2": "y1"}
    arrows = tuple(("x%d" % (r % 3 + 1), "y%d" % (r % 2 + 1)) for r in range(6))
    arrow_aut = []
    for r in range(6):
        arrow_aut += [2 * ((r + 1) % 6), 2 * ((r + 1) % 6) + 1]
    q = QuiverWithAut(verts, arrows, aut, tuple(arrow_aut))
    assert validate_admissible(q)["ok"]
    cd = cartan_from_quiver(q)
    assert cd.C == ((2, -2), (-3, 2)) and cd.s == (3, 2)


def test_arrow_count_not_divisible_is_caught():
    # three arrows into a size-2 orbit: no compatible arrow permutation exists,
    # so admissibility fails before any division by the orbit size
    verts = ("x1", "x2", "x3", "y1", "y2")
    aut = {"x1": "x2", "x2": "x3", "x3": "x1", "y1": "y2", "y2": "y1"}
    q = QuiverWithAut(verts, (("x1", "y1"), ("x2", "y1"), ("x3", "y1")), aut, (2, 3, 4, 5, 0, 1))
    assert "compatible_with_source_target" in validate_admissible(q)["violations"]
    with pytest.raises(NotAdmissible):
        cartan_from_quiver(q)
    assert issubclass(NonIntegerEntry, ValueError)


@pytest.mark.parametrize("name", BATTERY)
def test_round_trip_battery(name):
    cd = named(name)
    q = fold_from_cartan(cd)
    assert q.layout == LAYOUT
    assert validate_admissible(q)["ok"]
    assert cartan_from_quiver(q) == cd


@given(rank2_gcm())
def test_round_trip_rank2(cd):
    q = fold_from_cartan(cd)
    rep = validate_admissible(q)
    assert rep["ok"], rep
    assert cartan_from_quiver(q) == cd
    o = q.order()
    for orb in q.orbits():
        assert o % len(orb) == 0
    for v in q.vertices:
        assert _power(q, o, v) == v
    orb = q.orbit_index()
    assert all(orb[a] != orb[b] for a, b in q.arrows)


@pytest.mark.parametrize("name", BATTERY)
def test_orbit_sizes_and_arrow_counts(name):
    cd = named(name)
    q = fold_from_cartan(cd)
    orbits = q.orbits()
    assert [len(o) for o in orbits] == list(cd.s)
    orb = q.orbit_index()
    for i in cd.indices:
        for j in cd.indices:
            if i != j:
                n = sum(1 for a, b in q.arrows if {orb[a], orb[b]} == {i, j})
                assert n == -cd.C[i][j] * cd.s[i]


def test_frame_a1():
    q = fold_from_cartan(named("A1"))
    fq = frame(q, 1, [(3,)])
    assert [w.coords for w in fq.weights()] == [(3,)]
    assert len(fq.vertices) == 2 and len(fq.arrows) == 1


def test_frame_c2_two_framings():
    q = fold_from_cartan(named("C2"))
    w1 = framing_vector(q, (1, 0))
    w2 = framing_vector(q, (0, 1))
    fq = frame(q, 2, [w1, w2])
    assert [w.coords for w in fq.weights()] == [(1, 0), (0, 1)]
    # one framing arrow per vertex per copy
    assert len(fq.arrows) == len(q.arrows) + 2 * len(q.vertices)


def test_frame_non_invariant():
    q = fold_from_cartan(named("C2"))
    with pytest.raises(NonInvariantFraming):
        frame(q, 1, [{(0, 0): 1, (0, 1): 0, (1, 0): 0}])


def test_frame_argument_errors():
    q = fold_from_cartan(named("C2"))
    with pytest.raises(ValueError):
        frame(q, 2, [(1, 1, 0)])
    with pytest.raises(ValueError):
        frame(q, 1, [(1, 1)])


def test_dot_output_lists_everything():
    q = fold_from_cartan(named("G2"))
    dot = to_dot(q, "g2")
    assert dot.startswith("digraph g2 {")
    assert LAYOUT in dot
    assert dot.count("->") == len(q.arrows) + 3  # three dashed automorphism edges
    fq = frame(q, 1, [framing_vector(q, (1, 0))])
    assert to_dot(q, framed=fq).count("shape=box") == len(q.vertices)


def test_loop_rejected():
    q = QuiverWithAut(("a",), (("a", "a"),), {"a": "a"}, (0, 1))
    with pytest.raises(NotAdmissible):
        q.unfolded_cartan()
    assert not validate_admissible(q)["ok"]
    with pytest.raises(NotAdmissible):
        cartan_from_quiver(q)
