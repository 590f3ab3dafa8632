from fractions import Fraction as F

import pytest

from oracles import all_wall_pairs, interior_hyperplanes, mesh_chamber_classes
from wallcross import chambers as ch
from wallcross.group import normalize

SECTORS = [(n, k) for n in range(2, 5) for k in range(1, n)]


@pytest.fixture(scope="module")
def su4():
    arr = ch.enumerate_hyperplanes(4, 2)
    return arr, ch.enumerate_chambers(4, 2, arr)


def wall_of(arr):
    (w,) = ch.good_walls(arr)
    return w


def test_hyperplane_examples(su4):
    assert ch.good_walls(ch.enumerate_hyperplanes(2, 1)) == []
    for k in (1, 2):
        assert ch.good_walls(ch.enumerate_hyperplanes(3, k)) == []
    w = wall_of(su4[0])
    assert (w.subset, w.level) == ((1, 4), 1)
    assert w.complement == (2, 3)
    assert w.label == "S=1,4;d=1"


@pytest.mark.parametrize("n, k", SECTORS + [(5, 1), (5, 2)])
def test_good_hyperplanes_match_mesh(n, k):
    q = 60 if n <= 4 else 30
    found = {(h.subset, h.level) for h in ch.good_walls(ch.enumerate_hyperplanes(n, k))}
    assert found == interior_hyperplanes(n, k, q)


@pytest.mark.parametrize("n, k", SECTORS)
def test_bad_hyperplanes_lie_on_glued_faces(n, k):
    for h in ch.enumerate_hyperplanes(n, k):
        if h.bad:
            # on a glued face the singleton {1} at level 0 or the subset
            # containing a_n at full level is forced
            assert (h.subset == (1,) and h.level == 0) or (
                h.subset == tuple(range(1, n)) and h.level == k - 1
            ), h.label


def test_sector_errors():
    for n, k in [(4, 0), (4, 4), (4, 5), (1, 0)]:
        with pytest.raises(ValueError):
            ch.enumerate_hyperplanes(n, k)


@pytest.mark.parametrize("n, k", SECTORS)
def test_chambers_match_mesh_oracle(n, k):
    arr = ch.enumerate_hyperplanes(n, k)
    chambers = ch.enumerate_chambers(n, k, arr)
    classes = mesh_chamber_classes(n, k)
    assert len(chambers) == len(classes)
    ids = {c.signs: c.id for c in chambers}
    seen = {}
    for sv, points in classes.items():
        located = {ids[ch.locate_chamber(p, arr).signs] for p in points}
        assert len(located) == 1
        seen[sv] = located.pop()
    assert sorted(seen.values()) == sorted(ids.values())


def test_expected_counts():
    assert len(ch.enumerate_chambers(2, 1)) == 1
    assert len(ch.enumerate_chambers(3, 1)) == 1
    assert len(ch.enumerate_chambers(3, 2)) == 1
    assert len(ch.enumerate_chambers(4, 2)) == 2


@pytest.mark.parametrize("n, k", SECTORS + [(5, 2)])
def test_representatives_round_trip(n, k):
    arr = ch.enumerate_hyperplanes(n, k)
    for c in ch.enumerate_chambers(n, k, arr):
        assert len(set(c.representative)) == n
        assert ch.locate_chamber(c.representative, arr).signs == c.signs
        assert c.representative[0] > 0 and c.representative[-1] < 1


@pytest.mark.parametrize("n, k", SECTORS + [(5, 2)])
def test_complement_duality(n, k):
    arr = ch.enumerate_hyperplanes(n, k)
    loci = [(h.subset, h.level) for h in arr]
    assert len(loci) == len(set(loci))
    for h in arr:
        assert ch.canonical(n, k, h.complement, k - h.level) == (h.subset, h.level)
        if not h.bad:
            p = ch.generic_wall_point(h).angles
            assert sum(p[i - 1] for i in h.subset) == h.level
            assert sum(p[i - 1] for i in h.complement) == k - h.level


def test_locate_chamber_examples(su4):
    arr, _ = su4
    with pytest.raises(ch.OnWallError):
        ch.locate_chamber(["1/10", "2/5", "3/5", "9/10"], arr)
    # 1/10 + 9/10 = 1 puts this point on the wall too
    with pytest.raises(ch.OnWallError):
        ch.locate_chamber(["1/10", "9/20", "11/20", "9/10"], arr)
    assert ch.locate_chamber(["1/10", "1/2", "11/20", "17/20"], arr).signs == (-1,)
    c = ch.locate_chamber(["1/4", "3/4"], ch.enumerate_hyperplanes(2, 1))
    assert c.signs == ()
    with pytest.raises(ch.NotInteriorError):
        ch.locate_chamber(["0", "1/2", "1/2", "1"], arr)
    with pytest.raises(ch.NotInteriorError):
        ch.locate_chamber(["1/4", "1/4", "1/4", "1/4"], arr)


def test_adjacency(su4):
    arr, (c0, c1) = su4
    assert ch.adjacent_chambers(c0, c1) == wall_of(arr)
    assert ch.adjacent_chambers(c0, c0) is None
    other = ch.enumerate_chambers(4, 1)[0]
    with pytest.raises(ch.ChamberError):
        ch.adjacent_chambers(c0, other)


def exhaustive_hits(point, n, k):
    return {(s, d) for s, d in all_wall_pairs(n, k) if sum(point[i - 1] for i in s) == d}


@pytest.mark.parametrize("n, k", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_generic_wall_point_lies_on_exactly_one_locus(n, k):
    for w in ch.good_walls(ch.enumerate_hyperplanes(n, k)):
        gamma = ch.generic_wall_point(w)
        assert gamma.k == k
        assert len(set(gamma.angles)) == n
        assert exhaustive_hits(gamma.angles, n, k) == {
            (w.subset, w.level),
            (w.complement, k - w.level),
        }


def test_generic_wall_point_preconditions():
    bad = next(h for h in ch.enumerate_hyperplanes(4, 2) if h.bad)
    with pytest.raises(ch.ChamberError):
        ch.generic_wall_point(bad)
    assert ch.good_walls(ch.enumerate_hyperplanes(2, 1)) == []


def test_wall_splitting_example(su4):
    w = wall_of(su4[0])
    datum = ch.wall_splitting(normalize(["1/10", "2/5", "3/5", "9/10"]), w)
    g1, g2 = datum.split
    assert g1.angles == (F(1, 10), F(9, 10)) and g2.angles == (F(2, 5), F(3, 5))
    assert (g1.n, g2.n) == (2, 2)
    with pytest.raises(ch.ChamberError):
        ch.wall_splitting(normalize(["1/10", "1/2", "11/20", "17/20"]), w)
    # on {1,4} and also on {1,2}: not generic
    with pytest.raises(ch.NonGenericError):
        ch.wall_splitting(normalize(["1/4", "3/4", "1/4", "3/4"]), w)


@pytest.mark.parametrize("n, k", SECTORS)
def test_singleton_walls_are_bad(n, k):
    # a singleton with integer angle sum forces a_1 = 0 (or a_n = 1)
    for h in ch.enumerate_hyperplanes(n, k):
        if len(h.subset) == 1 or len(h.complement) == 1:
            assert h.bad, h.label


def make_datum(n, k, first, second):
    wall = ch.make_hyperplane(n, k, range(1, len(first) + 1), int(sum(F(a) for a in first)))
    gamma = normalize(first + second)
    return ch.WallDatum(wall, gamma, (normalize(first), normalize(second)))


@pytest.mark.parametrize(
    "n, k, first, second, g, codim",
    [
        (3, 1, ["0"], ["1/3", "2/3"], 1, 1),
        (4, 2, ["1/10", "9/10"], ["2/5", "3/5"], 2, 11),
        (4, 2, ["1/10", "9/10"], ["2/5", "3/5"], 1, 3),
        (5, 2, ["1/5", "4/5"], ["1/7", "2/7", "4/7"], 1, 5),
    ],
)
def test_wall_codimension(n, k, first, second, g, codim):
    datum = make_datum(n, k, first, second)
    assert ch.wall_codimension(datum, g) == codim
    assert datum.codim == codim


def test_codimension_zero_for_su2_is_rejected():
    # 1 + 1 split of SU(2) at genus 1: the drop is 4 - 2 - 2 = 0
    datum = make_datum(2, 1, ["0"], ["0"])
    with pytest.raises(ch.CodimensionError):
        ch.wall_codimension(datum, 1)


def test_real_wall_codimension(su4):
    w = wall_of(su4[0])
    datum = ch.wall_splitting(ch.generic_wall_point(w), w)
    assert ch.wall_codimension(datum, 2) == 11
    ch.set_fiber_dims(datum, 10, 0)
    assert datum.fiber_dims == (10, 0)
    with pytest.raises(ch.FiberDimensionError):
        ch.set_fiber_dims(datum, 5, 4)
    with pytest.raises(ch.FiberDimensionError):
        ch.set_fiber_dims(datum, -1, 11)


def test_json_shapes(su4):
    arr, chambers = su4
    w = wall_of(arr)
    assert w.to_json() == {"S": [1, 4], "d": 1, "bad": False}
    assert set(chambers[0].to_json()) == {"id", "signs", "representative"}
    datum = ch.wall_splitting(ch.generic_wall_point(w), w)
    ch.wall_codimension(datum, 2)
    js = datum.to_json()
    assert js["codim"] == 11 and js["fiber_dims"] is None
    assert js["split"] == [[str(a) for a in datum.split[0].angles], [str(a) for a in datum.split[1].angles]]


def test_sector_transition():
    assert ch.sector_transition([F(0), F(1, 3), F(2, 3)]) == (F(1, 3), F(2, 3), F(1))
    with pytest.raises(ch.ChamberError):
        ch.sector_transition([F(1, 3), F(1, 3), F(1, 3)])
    table = ch.sector_transition_table(4)
    assert [(r["from_sector"], r["to_sector"]) for r in table] == [(1, 2), (2, 3)]


def test_deterministic():
    a = ch.enumerate_chambers(5, 2)
    b = ch.enumerate_chambers(5, 2)
    assert [c.to_json() for c in a] == [c.to_json() for c in b]
