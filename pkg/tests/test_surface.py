import itertools

import pytest

from twistsub.linalg import AbelianInvariants
from twistsub.surface import (
    SurfaceSpec,
    build_polygon,
    cycle_class,
    edges_of,
    expected_h1,
    glue,
    h1,
    is_orientable,
    orientable_word,
    polygon_from_word,
    relabel,
    side_counts,
    surface_h1,
)


def complex_of(g, s=0, n=0):
    return glue(build_polygon(SurfaceSpec(g, s, n)))


def test_polygon_punctured_genus_three():
    model = build_polygon(SurfaceSpec(3, 0, 1))
    assert model.word == "a_1 a_2 a_3 a_2 a_1 v_1 v_1^-1 a_1 a_2 a_3 a_2^-1 a_1^-1"
    counts = side_counts(model)
    assert counts["a_3"] == 2 and counts["v_1"] == 2 and counts["a_1"] == 4


def test_polygon_genus_four_has_a4_twice():
    counts = side_counts(build_polygon(SurfaceSpec(4, 0, 1)))
    assert counts["a_4"] == 2


def test_polygon_boundary_block():
    model = build_polygon(SurfaceSpec(3, 1, 0))
    assert "v_1 u_1 v_1^-1" in model.word
    assert side_counts(model)["u_1"] == 1
    assert model.boundary_edges == ("u_1",)


@pytest.mark.parametrize("g,s,n", [(g, s, n) for g in range(1, 8) for s in range(4) for n in range(4)])
def test_polygon_length(g, s, n):
    assert len(build_polygon(SurfaceSpec(g, s, n))) == 4 * g - 2 + 2 * n + 3 * s


@pytest.mark.parametrize("g,s,chi", [(3, 0, -1), (3, 1, -2), (5, 0, -3)])
def test_euler_characteristic_examples(g, s, chi):
    assert complex_of(g, s).euler_characteristic == chi


@pytest.mark.parametrize("g,s,n", [(g, s, n) for g in range(1, 13) for s in range(5) for n in range(5)])
def test_euler_characteristic_sweep(g, s, n):
    assert complex_of(g, s, n).euler_characteristic == 2 - g - s


def test_h1_examples():
    assert str(h1(complex_of(3))) == "Z^2 x Z/2"
    assert str(h1(complex_of(5))) == "Z^4 x Z/2"
    assert h1(complex_of(3, 1)) == AbelianInvariants(3)


@pytest.mark.parametrize("g", range(1, 11))
@pytest.mark.parametrize("s", range(5))
def test_h1_matches_classification(g, s):
    spec = SurfaceSpec(g, s, 1)
    assert surface_h1(spec) == expected_h1(spec)


def test_projective_plane_and_klein_bottle():
    assert h1(complex_of(1)) == AbelianInvariants(0, (2,))
    assert h1(complex_of(2)) == AbelianInvariants(1, (2,))


@pytest.mark.parametrize("g,s,n", [(1, 0, 0), (3, 0, 0), (4, 2, 1), (9, 1, 3)])
def test_generated_polygons_are_nonorientable(g, s, n):
    assert not is_orientable(build_polygon(SurfaceSpec(g, s, n)))


@pytest.mark.parametrize("h", range(1, 6))
def test_orientable_words(h):
    model = orientable_word(h)
    assert is_orientable(model)
    cx = glue(model)
    assert cx.euler_characteristic == 2 - 2 * h
    assert h1(cx) == AbelianInvariants(2 * h)


def test_small_words():
    assert is_orientable(polygon_from_word("a b a^-1 b^-1"))
    pp = polygon_from_word("a a")
    assert not is_orientable(pp)
    assert h1(glue(pp)) == AbelianInvariants(0, (2,))
    with pytest.raises(ValueError):
        polygon_from_word("a a a")


@pytest.mark.parametrize("n", [2, 3])
def test_permuting_v_labels(n):
    spec = SurfaceSpec(4, 1, n)
    base = glue(build_polygon(spec))
    labels = [f"v_{i}" for i in range(1, n + 2)]
    for perm in itertools.permutations(labels):
        cx = glue(relabel(build_polygon(spec), dict(zip(labels, perm))))
        assert cx.euler_characteristic == base.euler_characteristic
        assert h1(cx) == h1(base)
        assert cx.num_vertices == base.num_vertices


def test_cycle_class_zero_and_boundary():
    cx = complex_of(3)
    assert cycle_class(cx, {}) == (0, 0, 0)
    # boundary of the single 2-cell
    boundary = {name: cx.d2()[i, 0] for i, name in enumerate(e[0] for e in cx.edges)}
    assert any(boundary.values())
    assert cycle_class(cx, boundary) == (0, 0, 0)


def test_cycle_class_of_loop_edges_in_n3():
    cx = complex_of(3)
    loops = [name for name, tail, head in cx.edges if tail == head]
    assert loops
    classes = [cycle_class(cx, {e: 1}) for e in loops]
    assert all(any(c) for c in classes)
    # the chain running through the edges a_g is a closed loop after gluing
    chain = {"a_1": 1, "a_2": 1, "a_3": 1}
    assert any(cycle_class(cx, chain))


def test_cycle_class_is_linear():
    cx = complex_of(4, 1)
    loops = [name for name, tail, head in cx.edges if tail == head]
    a, b = loops[0], loops[-1]
    ca, cb = cycle_class(cx, {a: 1}), cycle_class(cx, {b: 1})
    assert cycle_class(cx, {a: 2, b: -3}) == tuple(2 * x - 3 * y for x, y in zip(ca, cb))


def test_cycle_class_rejects_non_cycles():
    cx = complex_of(3)
    non_loop = next(name for name, tail, head in cx.edges if tail != head)
    with pytest.raises(ValueError):
        cycle_class(cx, {non_loop: 1})
    with pytest.raises(ValueError):
        cycle_class(cx, {"nope": 1})


def test_summary_line():
    assert complex_of(3, 1).summary() == "V=4 E=7 F=1 chi=-2 H1=Z^3"
    assert edges_of(build_polygon(SurfaceSpec(3)))[:3] == ["a_1", "a_2", "a_3"]


def test_spec_validation():
    with pytest.raises(ValueError):
        SurfaceSpec(0)
    with pytest.raises(ValueError):
        SurfaceSpec(3, -1)
    assert str(SurfaceSpec(3, 2, 1)) == "N_{3,2}^1"
