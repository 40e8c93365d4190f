"""Lattice partitions, section gaps, covering radii, and box spectra."""

import itertools
import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from rieszforge import BoxSet, LatticeWindow, TWO_PI, build_gram, \
    covering_radius, cube_partition, cycling_partition, extreme_eigs, \
    indicator_fourier_d, section_gaps


def test_window_basics():
    w = LatticeWindow(lo=(0, 0), hi=(5, 11))
    assert w.dim == 2 and w.side_lengths == (6, 12)
    assert w.contains((3, 7)) and not w.contains((3, 12))
    assert len(list(w.points())) == 72
    w.require_aligned(3)
    with pytest.raises(ValueError):
        w.require_aligned(4)  # 6 % 4 != 0
    with pytest.raises(ValueError):
        LatticeWindow(lo=(0,), hi=(0, 1))
    with pytest.raises(ValueError):
        LatticeWindow(lo=(3,), hi=(1,))


def test_cycling_partition_small_square():
    # d=2, r=2 on [0,3]^2: 4 cubes, 2 segments each
    w = LatticeWindow(lo=(0, 0), hi=(3, 3))
    segs = cycling_partition(2, 2, w)
    assert len(segs) == 8
    cells = [c for s in segs for c in s.cells]
    assert sorted(cells) == sorted(w.points())        # exact cover
    assert len(set(cells)) == 16                      # disjoint
    # axis cycles with (k1+k2)/r mod 2: base (0,0) -> residue 0 -> axis 2
    by_base = {s.base: s.axis for s in segs}
    assert by_base[(0, 0)] == 2
    assert by_base[(2, 0)] == 1
    assert by_base[(0, 2)] == 1
    assert by_base[(2, 2)] == 2


def test_cycling_partition_criterion_size():
    w = LatticeWindow(lo=(0, 0), hi=(17, 17))
    segs = cycling_partition(2, 3, w)
    assert len(segs) == 108
    assert all(len(s.cells) == 3 for s in segs)
    cells = [c for s in segs for c in s.cells]
    assert len(set(cells)) == 324 == 18 * 18


def test_cycling_partition_1d():
    w = LatticeWindow(lo=(0,), hi=(8,))
    segs = cycling_partition(1, 3, w)
    assert len(segs) == 3
    assert all(s.axis == 1 for s in segs)
    assert segs[0].cells == ((0,), (1,), (2,))


def test_cycling_partition_validation():
    w = LatticeWindow(lo=(0, 0), hi=(4, 4))  # side 5 not divisible by 3
    with pytest.raises(ValueError):
        cycling_partition(2, 3, w)
    with pytest.raises(ValueError):
        cycling_partition(3, 3, LatticeWindow(lo=(0, 0), hi=(5, 5)))
    # negative but aligned bases are fine
    segs = cycling_partition(2, 3, LatticeWindow(lo=(-3, -3), hi=(2, 2)))
    assert len(segs) == 12


def test_segment_axis_period():
    # along any straight line of cubes, the axis pattern has period d
    w = LatticeWindow(lo=(0, 0), hi=(17, 17))
    segs = cycling_partition(2, 3, w)
    axis_at = {}
    for s in segs:
        axis_at[s.base] = s.axis
    for k2 in range(0, 18, 3):
        row = [axis_at[(k1, k2)] for k1 in range(0, 18, 3)]
        assert all(row[i] != row[i + 1] for i in range(5)), row


def test_cube_partition():
    w = LatticeWindow(lo=(0, 0), hi=(5, 5))
    cubes = cube_partition(2, 3, w)
    assert len(cubes) == 4
    assert all(len(c.cells) == 9 for c in cubes)
    cells = [c for cube in cubes for c in cube.cells]
    assert sorted(cells) == sorted(w.points())


def test_covering_radius_lattice():
    # every third point in each axis: worst case is one diagonal step away
    w = LatticeWindow(lo=(0, 0), hi=(6, 6))
    pts = [(x, y) for x in range(0, 7, 3) for y in range(0, 7, 3)]
    assert covering_radius(pts, w) == pytest.approx(math.sqrt(2))
    # margin trims the boundary
    assert covering_radius([(4, 4)], w, margin=3.0) == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        covering_radius([], w)
    with pytest.raises(ValueError):
        covering_radius([(0, 0)], w, margin=10.0)


def test_covering_radius_1d():
    w = LatticeWindow(lo=(0,), hi=(10,))
    assert covering_radius([0, 5, 10], w) == pytest.approx(2.0)


def test_one_per_cube_covering_bound():
    # any one-per-cube selector has covering radius <= s*sqrt(d)
    w = LatticeWindow(lo=(0, 0), hi=(17, 17))
    cubes = cube_partition(2, 3, w)
    rng = np.random.default_rng(4)
    for _ in range(10):
        sel = [cube.cells[int(rng.integers(9))] for cube in cubes]
        assert covering_radius(sel, w) <= 3 * math.sqrt(2) + 1e-12


def test_section_gaps():
    w = LatticeWindow(lo=(0, 0), hi=(9, 9))
    pts = [(0, 2), (3, 2), (9, 2), (4, 7)]
    st = section_gaps(pts, 1, (2,), w)      # row y=2, gaps in x
    assert st.gaps == (3, 6) and st.gamma == 6
    st = section_gaps(pts, 2, (4,), w)      # column x=4
    assert st.gamma == math.inf             # single point
    with pytest.raises(ValueError):
        section_gaps(pts, 3, (2,), w)
    with pytest.raises(ValueError):
        section_gaps(pts, 1, (2, 2), w)


def test_selector_section_gap_bound():
    # one-per-segment selectors stay syndetic on every 1-D section
    w = LatticeWindow(lo=(0, 0), hi=(17, 17))
    segs = cycling_partition(2, 3, w)
    rng = np.random.default_rng(12)
    selectors = [[s.cells[0] for s in segs], [s.cells[-1] for s in segs]]
    selectors += [[s.cells[int(rng.integers(3))] for s in segs] for _ in range(10)]
    for sel in selectors:
        for axis in (1, 2):
            for fixed in range(18):
                st = section_gaps(sel, axis, (fixed,), w)
                assert st.gaps, "section lost all points"
                assert st.gamma <= 12  # 2*d*r


def test_box_set_basics():
    b = BoxSet(boxes=(((0.0, 1.0), (0.0, 2.0)),))
    assert b.dim == 2
    assert b.measure == pytest.approx(2.0)
    assert b.total_volume == pytest.approx(TWO_PI ** 2)
    with pytest.raises(ValueError):
        BoxSet(boxes=())
    with pytest.raises(ValueError):
        BoxSet(boxes=(((0.0, 1.0),), ((0.0, 1.0), (0.0, 1.0))))  # mixed dims
    with pytest.raises(ValueError):
        BoxSet(boxes=(((0.0, 7.0),),))  # outside [0, 2*pi]
    with pytest.raises(ValueError):
        BoxSet(boxes=(((0.0, 2.0), (0.0, 2.0)), ((1.0, 3.0), (1.0, 3.0))))  # overlap


def test_box_fourier_against_quadrature():
    b = BoxSet(boxes=(((0.2, 1.4), (0.5, 2.0)), ((3.0, 4.0), (2.5, 3.1))))
    for m in [(0, 0), (1, 0), (0, 2), (3, -1), (-2, -2), (5, 4)]:
        def integrand_re(y, x, mx=m[0], my=m[1]):
            return math.cos(mx * x + my * y)

        def integrand_im(y, x, mx=m[0], my=m[1]):
            return -math.sin(mx * x + my * y)

        want = 0j
        for (x0, x1), (y0, y1) in b.boxes:
            re, _ = dblquad(integrand_re, x0, x1, y0, y1)
            im, _ = dblquad(integrand_im, x0, x1, y0, y1)
            want += re + 1j * im
        got = indicator_fourier_d(b, m)
        assert abs(got - want) < 1e-9, m


def test_box_fourier_conjugate_symmetry():
    b = BoxSet(boxes=(((0.2, 1.4), (0.5, 2.0)),))
    for m in itertools.product(range(-3, 4), repeat=2):
        got = indicator_fourier_d(b, m)
        neg = indicator_fourier_d(b, tuple(-x for x in m))
        assert neg == got.conjugate(), m
    with pytest.raises(ValueError):
        indicator_fourier_d(b, (1,))


def test_box_gram_2d():
    # Gram over tuple frequencies is Hermitian PSD; full torus gives identity
    full = BoxSet(boxes=(((0.0, TWO_PI), (0.0, TWO_PI)),))
    pts = [(0, 0), (1, 0), (0, 1), (2, 2)]
    g = build_gram(pts, full, normalized=True)
    assert np.abs(g - np.eye(4)).max() < 1e-12
    b = BoxSet(boxes=(((0.0, 3.0), (0.0, 2.0)),))
    g = build_gram(pts, b)
    assert np.array_equal(g, g.conj().T)
    assert np.linalg.eigvalsh(g)[0] > -1e-10
    be = extreme_eigs(g)
    assert be.lambda_max <= b.total_volume + 1e-8


def test_box_json_round_trip():
    b = BoxSet(boxes=(((0.2, 1.4), (0.5, 2.0)),))
    obj = b.to_json()
    assert "boxes_rad" in obj
    back = BoxSet.from_json(obj)
    assert back == b
    scaled = BoxSet.from_json({"boxes_2pi": [[[0.0, 0.5], [0.0, 0.25]]]})
    assert scaled.measure == pytest.approx(math.pi * math.pi / 2)
    with pytest.raises(ValueError):
        BoxSet.from_json({"nope": []})
