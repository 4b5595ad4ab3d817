import math
import random
import xml.etree.ElementTree as ET
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from coxlat.coxeter_rep import DUAL, PRIMAL, ReducedWord, apply_word, count_words
from coxlat.errors import DegenerateCloud, InvalidInput, InvalidRank
from coxlat.exact_linalg import ucn_pairing
from coxlat.limit_set import (PointCloud, Tangency, box_counting_dimension, build_chart, canonical_normal,
                              circles_to_csv, circles_to_svg, distance_to_sphere, gasket_circles,
                              gasket_cloud, make_circle, orbit_points, parent_normal, projector,
                              tangency, to_alpha)
from coxlat.tits_cone import Basis, LatticeClass, u_vector, vertex


@pytest.fixture(scope="module")
def circles4():
    return gasket_circles(4)


def isotropic_images(rng, N, count, max_len=8):
    for _ in range(count):
        i, j = rng.sample(range(N), 2)
        w = ReducedWord(N, [rng.randint(1, N) for _ in range(rng.randint(0, max_len))])
        yield apply_word(w, tuple(int(k in (i, j)) for k in range(N)), PRIMAL)


@pytest.mark.parametrize("N", range(3, 9))
def test_chart_basis(N):
    ch = build_chart(N)
    assert len(ch.beta) == N - 1
    assert ch.beta[0] == (1, -1) + (0,) * (N - 2)
    for i, b in enumerate(ch.beta):
        assert ucn_pairing(b, ch.u) == 0
        assert ch.norms[i] == ucn_pairing(b, b) == -2 * sum(x * x for x in b)
        for c in ch.beta[i + 1:]:
            assert ucn_pairing(b, c) == 0
    with pytest.raises(InvalidRank):
        build_chart(2)


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_chart_sphere_equation(N):
    ch = build_chart(N)
    rng = random.Random(N)
    for v in isotropic_images(rng, N, 200):
        assert ch.sphere_defect(v) == 0
        z = ch.chart(v)
        assert abs(sum(x * x for x in z) - N * (N - 2) / 2) <= 1e-12 * max(1.0, N * (N - 2) / 2)
    # time-like classes chart inside, space-like outside
    assert ch.sphere_defect(u_vector(N).coords) > 0
    assert ch.chart(u_vector(N).coords) == (0.0,) * (N - 1)
    if N >= 4:
        assert ch.sphere_defect(vertex(N, 1).coords) < 0


def test_chart_undefined_points():
    ch = build_chart(4)
    assert ch.affine((1, -1, 0, 0)) is None and ch.chart((1, -1, 0, 0)) is None
    cloud = orbit_points(4, LatticeClass.alpha((1, -1, 0, 0)), 0)
    assert len(cloud) == 0 and cloud.skipped == 1


def test_orbit_counts():
    seed = LatticeClass.alpha((1, 1, 0))
    assert len(orbit_points(3, seed, 0)) == 1
    cloud = orbit_points(3, seed, 2)
    assert len(cloud) + cloud.skipped == 1 + 3 + 6
    cloud = orbit_points(5, LatticeClass.alpha((1, 1, 0, 0, 0)), 3)
    assert len(cloud.words) == sum(count_words(5, k) for k in range(4))
    assert [w.sort_key() for w in cloud.words] == sorted(w.sort_key() for w in cloud.words)


def test_orbit_dual_seed_matches_primal():
    ch = build_chart(4)
    c1_dual = LatticeClass(4, (1, 0, 0, 0), Basis.CHAMBER)
    assert to_alpha(c1_dual) == vertex(4, 1).coords
    cloud = orbit_points(4, c1_dual, 1)
    for w, z in zip(cloud.words, cloud.points):
        dual_img = apply_word(w, (1, 0, 0, 0), DUAL)
        assert z == ch.chart(apply_word(w, vertex(4, 1).coords, PRIMAL))
        assert z == ch.chart(to_alpha(LatticeClass(4, dual_img, Basis.CHAMBER)))
    moved = {w.letters for w in cloud.words if apply_word(w, (1, 0, 0, 0), DUAL) != (1, 0, 0, 0)}
    assert moved == {(1,)}
    assert apply_word(ReducedWord(4, (1,)), (1, 0, 0, 0), DUAL) == (-1, 2, 2, 2)


def test_orbit_rejects_bad_input():
    with pytest.raises(InvalidInput):
        orbit_points(4, LatticeClass.alpha((0, 0, 0, 0)), 1)
    with pytest.raises(InvalidInput):
        orbit_points(4, LatticeClass.alpha((1, 1, 0, 0)), -1)
    with pytest.raises(InvalidInput):
        orbit_points(4, LatticeClass.alpha((1, 1, 0)), 1)


@pytest.mark.parametrize("N,seed", [(4, (-1, 1, 1, 1)), (5, (1, 1, 1, 1, -2)), (5, (3, 1, 0, 0, 0))])
def test_orbit_approaches_sphere(N, seed):
    ch = build_chart(N)
    cloud = orbit_points(N, LatticeClass.alpha(seed), 6)
    d1 = 1
    mins = []
    for d2 in range(2, 7):
        new = [z for w, z in zip(cloud.words, cloud.points) if d1 < len(w) <= d2]
        mins.append(min(distance_to_sphere(ch, z) for z in new))
    assert all(a >= b for a, b in zip(mins, mins[1:]))
    assert mins[-1] < mins[0]


def test_csv_deterministic():
    a = orbit_points(4, LatticeClass.alpha((1, 1, 0, 0)), 4).to_csv()
    b = orbit_points(4, LatticeClass.alpha((1, 1, 0, 0)), 4).to_csv()
    assert a == b and a.splitlines()[0] == "word,x1,x2,x3"
    assert circles_to_csv(gasket_circles(3)) == circles_to_csv(gasket_circles(3))


def test_root_circles():
    roots = gasket_circles(0)
    assert len(roots) == 4
    for i, a in enumerate(roots):
        assert ucn_pairing(a.normal, a.normal) == -4
        for b in roots[i + 1:]:
            assert ucn_pairing(a.normal, b.normal) == 4
            assert tangency(a, b) is Tangency.TANGENT
    outer = roots[3]
    assert outer.center == pytest.approx((0.0, 0.0), abs=1e-12) and outer.radius == pytest.approx(1.0)
    for c in roots[:3]:
        assert c.radius == pytest.approx(2 * math.sqrt(3) - 3, abs=1e-12)


def test_gasket_counts():
    assert [len(gasket_circles(d)) for d in range(5)] == [4, 8, 20, 56, 164]


def test_tangency_classes(circles4):
    c1, c2 = vertex(4, 1).coords, vertex(4, 2).coords
    assert tangency(c1, c2) is Tangency.TANGENT
    assert tangency(c1, c1) is Tangency.IDENTICAL
    assert tangency(c1, tuple(-3 * x for x in c1)) is Tangency.IDENTICAL
    # t_2 t_1 c_1 sits in the gap cut off by c_1's replacement
    far = apply_word(ReducedWord(4, (2, 1)), c1, PRIMAL)
    assert tangency(c1, far) is Tangency.DISJOINT
    # t_3 fixes c_1, so t_3 t_2 c_2 stays tangent to it
    assert tangency(c1, apply_word(ReducedWord(4, (3, 2)), c2, PRIMAL)) is Tangency.TANGENT
    # space-like normals with b(x,y)^2 = 1 < b(x,x) b(y,y) = 20
    assert tangency((1, 1, -1, 0), (-1, -1, -1, 1)) is Tangency.CROSSING
    assert tangency((1, 0, 0, 0), (0, 1, 0, 0)) is Tangency.TANGENT


def test_gasket_soundness(circles4):
    for c in circles4[4:]:
        assert tangency(c.normal, parent_normal(c)) is Tangency.TANGENT
        assert c.word.letters[-1] == c.root
    assert all(tangency(a, b) is not Tangency.CROSSING for a, b in combinations(circles4, 2))
    keys = [canonical_normal(c.normal) for c in circles4]
    assert len(set(keys)) == len(keys)


def test_circle_geometry_consistent_with_normals(circles4):
    proj = projector()
    assert max(proj.residual(c) for c in circles4) < 1e-9
    outer = circles4[3]
    for c in circles4[:3] + circles4[4:]:
        # every circle sits inside the outer one
        assert math.hypot(*c.center) + c.radius <= outer.radius + 1e-9


def test_descartes_oracle(circles4):
    k = [1 / c.radius for c in circles4[:3]] + [-1 / circles4[3].radius]
    assert sum(k) ** 2 == pytest.approx(2 * sum(x * x for x in k))
    for c in circles4[4:8]:
        j = c.root - 1
        expected = 2 * (sum(k) - k[j]) - k[j]
        assert 1 / c.radius == pytest.approx(abs(expected), rel=1e-9)


def test_tangent_circles_touch_in_the_plane(circles4):
    for c in circles4[4:]:
        p = next(x for x in circles4 if canonical_normal(x.normal) == canonical_normal(parent_normal(c)))
        d = math.dist(c.center, p.center)
        assert min(abs(d - (c.radius + p.radius)), abs(d - abs(c.radius - p.radius))) < 1e-9


def test_make_circle_rejects_time_like():
    with pytest.raises(InvalidInput):
        make_circle((1, 1, 1, 1), ReducedWord(4, ()), 1)
    with pytest.raises(InvalidInput):
        gasket_circles(-1)


def test_csv_and_svg_formats():
    circles = gasket_circles(3)
    rows = circles_to_csv(circles).splitlines()
    assert rows[0] == "word,cx,cy,r"
    assert len(rows) - 1 == len(circles) == 56
    assert rows[1].startswith(",") and rows[5].split(",")[0] in {"1", "2", "3", "4"}
    assert any(r.startswith("1-2-3,") for r in rows)
    root = ET.fromstring(circles_to_svg(circles))
    assert root.tag.endswith("svg")
    drawn = [el for el in root if el.tag.endswith("circle")]
    assert len(drawn) == len(circles)
    assert all(el.get("fill") == "none" and el.get("stroke") for el in drawn)
    x, y, w, h = map(float, root.get("viewBox").split())
    assert (x, y, w, h) == pytest.approx((-1.1, -1.1, 2.2, 2.2), abs=1e-9)


def test_box_counting_segment():
    t = np.linspace(0.0, 1.0, 200_000)
    seg = np.column_stack([t, 0.5 * t])
    bc = box_counting_dimension(seg, [2.0 ** -k for k in range(3, 8)])
    assert abs(bc.dimension - 1.0) <= 0.05
    flat = np.column_stack([t, np.zeros_like(t)])
    assert box_counting_dimension(flat, [2.0 ** -k for k in range(3, 8)]).counts == (8, 16, 32, 64, 128)


def test_box_counting_square():
    g = np.linspace(0.0, 1.0, 400)
    xs, ys = np.meshgrid(g, g)
    sq = np.column_stack([xs.ravel(), ys.ravel()])
    assert box_counting_dimension(sq, [2.0 ** -k for k in range(2, 6)]).dimension == pytest.approx(2.0, abs=0.05)


def test_box_counting_errors():
    with pytest.raises(DegenerateCloud):
        box_counting_dimension(PointCloud([(0.3, 0.3)] * 5), [0.5, 0.25])
    with pytest.raises(InvalidInput):
        box_counting_dimension(PointCloud([(0.0, 0.0), (1.0, 1.0)]), [0.5])
    with pytest.raises(InvalidInput):
        box_counting_dimension(PointCloud([]), [0.5, 0.25])


def test_gasket_cloud_density():
    circles = gasket_circles(2)
    cloud = gasket_cloud(circles, spacing=1 / 256)
    assert len(cloud) >= sum(max(8, math.ceil(2 * math.pi * c.radius * 256)) for c in circles) - 1
    for (x, y) in cloud.points[:50]:
        c = circles[0]
        assert math.hypot(x - c.center[0], y - c.center[1]) == pytest.approx(c.radius)
