"""Projective charts of the isotropic sphere, orbit clouds and the UC(4) gasket.

The chart puts the hyperplane [u_N^perp] at infinity. A class v (alpha
coordinates) is written v = a u_N + sum_i y_i beta_i with beta_i a rational
b_N-orthogonal basis of u_N^perp, and sent to z_i = (y_i / a) sqrt(-q_i / 2),
q_i = b_N(beta_i, beta_i). The isotropic cone becomes the round sphere
sum z_i^2 = N(N-2)/2.

Gasket circles are the sections [c^perp] of the sphere by space-like normals
c in the orbit of the chamber vertices c_1..c_4. The three-dimensional chart
is stereographically projected from the centre of the free cap of c_4, so
c_4 becomes the outer unit circle and the other circles fall inside it.
"""
from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .coxeter_rep import DUAL, PRIMAL, ReducedWord, apply_generator, enumerate_words
from .errors import DegenerateCloud, InvalidInput, InvalidRank
from .exact_linalg import primitive, ucn_pairing
from .tits_cone import Basis, LatticeClass, vertex


@dataclass(frozen=True)
class ProjectiveChart:
    N: int
    beta: tuple[tuple[int, ...], ...]
    norms: tuple[int, ...]  # b_N(beta_i, beta_i), all negative
    u: tuple[int, ...]

    @property
    def radius_squared(self) -> Fraction:
        return Fraction(self.N * (self.N - 2), 2)

    def affine(self, v: Sequence[int]) -> tuple[Fraction, ...] | None:
        """Exact (y_i / a) for v, or None when b_N(v, u_N) = 0."""
        bu = ucn_pairing(v, self.u)
        if bu == 0:
            return None
        a = Fraction(bu, ucn_pairing(self.u, self.u))
        return tuple(Fraction(ucn_pairing(v, b), q) / a for b, q in zip(self.beta, self.norms))

    def scales(self) -> tuple[float, ...]:
        return tuple(math.sqrt(-q / 2) for q in self.norms)

    def chart(self, v: Sequence[int]) -> tuple[float, ...] | None:
        y = self.affine(v)
        if y is None:
            return None
        return tuple(float(t) * s for t, s in zip(y, self.scales()))

    def sphere_defect(self, v: Sequence[int]) -> Fraction | None:
        """N(N-2)/2 - sum (y_i/a)^2 (-q_i/2), zero exactly on the sphere."""
        y = self.affine(v)
        if y is None:
            return None
        return self.radius_squared - sum(t * t * Fraction(-q, 2) for t, q in zip(y, self.norms))


def build_chart(N: int) -> ProjectiveChart:
    """Gram-Schmidt of alpha_i - alpha_{i+1} under b_N, scaled to primitive
    integer vectors. On u_N^perp, b_N = -2 (euclidean), so b_N-orthogonality
    is ordinary orthogonality."""
    if N < 3:
        raise InvalidRank(f"charts need N >= 3, got {N}")
    u = (1,) * N
    basis: list[tuple[int, ...]] = []
    for i in range(N - 1):
        w = [Fraction(int(k == i) - int(k == i + 1)) for k in range(N)]
        for b in basis:
            coef = Fraction(ucn_pairing(w, b)) / ucn_pairing(b, b)
            w = [x - coef * y for x, y in zip(w, b)]
        den = math.lcm(*(x.denominator for x in w))
        basis.append(primitive(tuple(int(x * den) for x in w)))
    return ProjectiveChart(N, tuple(basis), tuple(ucn_pairing(b, b) for b in basis), u)


@dataclass
class PointCloud:
    points: list[tuple[float, ...]]
    words: list[ReducedWord] | None = None
    skipped: int = 0

    def __len__(self):
        return len(self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        dim = len(self.points[0]) if self.points else 0
        cols = [f"x{i}" for i in range(1, dim + 1)]
        buf.write(",".join((["word"] if self.words is not None else []) + cols) + "\n")
        for k, p in enumerate(self.points):
            row = [_fmt(x) for x in p]
            if self.words is not None:
                row.insert(0, str(self.words[k]))
            buf.write(",".join(row) + "\n")
        return buf.getvalue()


def _fmt(x: float) -> str:
    return format(x, ".17g")


def to_alpha(seed: LatticeClass) -> tuple[int, ...]:
    """Alpha coordinates of a class, scaling chamber coordinates by 2(N-2).

    Chamber coordinates phi are the values b_N(v, alpha_i); 2(N-2) B_N^{-1}
    is J - (N-2) I.
    """
    if seed.basis is Basis.ALPHA:
        return seed.coords
    s, N = sum(seed.coords), seed.n
    return tuple(s - (N - 2) * x for x in seed.coords)


def orbit_points(N: int, seed: LatticeClass, depth: int, chart: ProjectiveChart | None = None) -> PointCloud:
    """Chart images of the seed under every reduced word of length <= depth.

    Alpha-basis seeds are moved by the primal matrices and chamber-basis
    seeds by the dual ones; both describe the same projective action.
    """
    if seed.n != N:
        raise InvalidInput(f"seed of rank {seed.n} for N = {N}")
    if seed.is_zero():
        raise InvalidInput("zero seed")
    if depth < 0:
        raise InvalidInput("depth must be >= 0")
    chart = chart or build_chart(N)
    side = PRIMAL if seed.basis is Basis.ALPHA else DUAL
    images = {(): seed.coords}
    pts, words, skipped = [], [], 0
    for w in enumerate_words(N, depth):
        if w.letters:
            # image(w) = t_{w_1} image(w_2 ... w_l); the suffix was enumerated earlier
            images[w.letters] = apply_generator(w.letters[0], images[w.letters[1:]], side)
        img = images[w.letters]
        alpha = to_alpha(LatticeClass(N, img, seed.basis))
        z = chart.chart(alpha)
        if z is None:
            skipped += 1
            continue
        pts.append(z)
        words.append(w)
    return PointCloud(pts, words, skipped)


def distance_to_sphere(chart: ProjectiveChart, z: Sequence[float]) -> float:
    return abs(math.sqrt(sum(x * x for x in z)) - math.sqrt(float(chart.radius_squared)))


# -- gasket ---------------------------------------------------------------

class Tangency(enum.Enum):
    TANGENT = "Tangent"
    DISJOINT = "Disjoint"
    CROSSING = "Crossing"
    IDENTICAL = "Identical"


@dataclass(frozen=True)
class GasketCircle:
    """Circle [normal^perp] on the sphere; ``normal = rho(word) c_root``.

    Non-root circles have ``word`` ending in ``root``; roots have an empty word.
    """

    normal: tuple[int, ...]
    word: ReducedWord
    root: int
    center: tuple[float, float] = field(compare=False)
    radius: float = field(compare=False)

    @property
    def depth(self) -> int:
        return len(self.word)

    @property
    def label(self) -> str:
        return str(self.word)


def canonical_normal(c: Sequence[int]) -> tuple[int, ...]:
    p = primitive(c)
    first = next(x for x in p if x)
    return p if first > 0 else tuple(-x for x in p)


def tangency(a, b) -> Tangency:
    """Exact relative position of two circles with space-like normals."""
    x = a.normal if isinstance(a, GasketCircle) else tuple(a)
    y = b.normal if isinstance(b, GasketCircle) else tuple(b)
    if canonical_normal(x) == canonical_normal(y):
        return Tangency.IDENTICAL
    lhs = ucn_pairing(x, y) ** 2
    rhs = ucn_pairing(x, x) * ucn_pairing(y, y)
    if lhs == rhs:
        return Tangency.TANGENT
    return Tangency.DISJOINT if lhs > rhs else Tangency.CROSSING


class _Projector:
    """Chart + stereographic projection used for every gasket circle."""

    def __init__(self):
        self.chart = build_chart(4)
        self.R = math.sqrt(float(self.chart.radius_squared))
        n, d = self._plane(vertex(4, 4).coords)
        self.p = -n / np.linalg.norm(n)  # centre of the free cap of c_4
        helper = np.eye(3)[int(np.argmin(np.abs(self.p)))]
        e1 = helper - helper.dot(self.p) * self.p
        self.e1 = e1 / np.linalg.norm(e1)
        self.e2 = np.cross(self.p, self.e1)
        self.unit = 1.0
        _, r = self.circle(vertex(4, 4).coords)
        self.unit = r

    def _plane(self, c):
        # b(c, x) = d + n . z on the slice a = 1
        n = np.array([ucn_pairing(c, b) / si for b, si in
                      zip(self.chart.beta, self.chart.scales())], dtype=float)
        d = float(ucn_pairing(c, self.chart.u))
        return n, d

    def project(self, z):
        t = z.dot(self.p)
        w = self.R * (z - t * self.p) / (self.R - t)
        return np.array([w.dot(self.e1), w.dot(self.e2)]) / self.unit

    def sphere_circle(self, c):
        """Centre, unit axis and radius of [c^perp] on the 3-d sphere."""
        n, d = self._plane(c)
        nn = np.linalg.norm(n)
        axis = n / nn
        centre = -d / nn * axis
        rho = math.sqrt(max(self.R ** 2 - (d / nn) ** 2, 0.0))
        return centre, axis, rho

    def circle(self, c):
        centre, axis, rho = self.sphere_circle(c)
        m = self.p - self.p.dot(axis) * axis
        if np.linalg.norm(m) < 1e-12:
            m = self.e1 - self.e1.dot(axis) * axis
        m /= np.linalg.norm(m)
        a, b = self.project(centre + rho * m), self.project(centre - rho * m)
        mid = (a + b) / 2
        return (float(mid[0]), float(mid[1])), float(np.linalg.norm(a - b) / 2)

    def lift(self, xy):
        """Inverse stereographic projection of a plane point to the sphere."""
        w = (xy[0] * self.e1 + xy[1] * self.e2) * self.unit
        r2 = w.dot(w)
        R = self.R
        t = R * (r2 - R * R) / (r2 + R * R)
        return w * (R - t) / R + t * self.p

    def residual(self, circle: "GasketCircle", samples: int = 8) -> float:
        """Max |b(c, x)| / (|c| |x|) over points x lifted from the planar circle."""
        c = np.array(circle.normal, dtype=float)
        worst = 0.0
        beta = np.array(self.chart.beta, dtype=float)
        s = np.array(self.chart.scales())
        u = np.array(self.chart.u, dtype=float)
        for k in range(samples):
            th = 2 * math.pi * k / samples
            xy = (circle.center[0] + circle.radius * math.cos(th),
                  circle.center[1] + circle.radius * math.sin(th))
            z = self.lift(xy)
            x = u + (z / s) @ beta
            val = c.sum() * x.sum() - 2 * c.dot(x)
            worst = max(worst, abs(val) / (np.linalg.norm(c) * np.linalg.norm(x)))
        return worst


_PROJECTOR: _Projector | None = None


def projector() -> _Projector:
    global _PROJECTOR
    if _PROJECTOR is None:
        _PROJECTOR = _Projector()
    return _PROJECTOR


def make_circle(normal, word: ReducedWord, root: int) -> GasketCircle:
    if ucn_pairing(normal, normal) >= 0:
        raise InvalidInput(f"normal {list(normal)} is not space-like")
    centre, r = projector().circle(normal)
    return GasketCircle(tuple(normal), word, root, centre, r)


def gasket_circles(depth: int) -> list[GasketCircle]:
    """Circles rho(w) c_j, w empty or a reduced word ending in j, |w| <= depth.

    A letter k != j fixes c_j, so these words list every circle once; the
    result is still deduplicated on canonical normals as a guard. Order:
    roots 1..4, then by word length and lexicographic word.
    """
    if depth < 0:
        raise InvalidInput("depth must be >= 0")
    roots = {j: vertex(4, j).coords for j in range(1, 5)}
    normals: dict[tuple[int, ...], tuple[int, ...]] = {}
    frontier = {(j,): apply_generator(j, roots[j], PRIMAL) for j in roots}
    for length in range(1, depth + 1):
        normals.update(frontier)
        if length == depth:
            break
        # prepending x keeps the last letter, so the root index is unchanged
        frontier = {
            (x,) + letters: apply_generator(x, c, PRIMAL)
            for letters, c in frontier.items()
            for x in range(1, 5) if x != letters[0]
        }
    out = [make_circle(roots[j], ReducedWord(4, ()), j) for j in range(1, 5)]
    seen = {canonical_normal(c.normal) for c in out}
    for letters in sorted(normals, key=lambda w: (len(w), w)):
        c = normals[letters]
        key = canonical_normal(c)
        if key in seen:
            continue
        seen.add(key)
        out.append(make_circle(c, ReducedWord(4, letters), letters[-1]))
    return out


def parent_normal(circle: GasketCircle) -> tuple[int, ...] | None:
    """Normal of the earlier circle that ``circle`` was built tangent to.

    For w = w' j the parent is rho(w') c_k with k the last letter of w'
    (k != j); for a one-letter word [j] it is the root c_k with the smallest
    k != j. Roots have no parent.
    """
    w = circle.word.letters
    if not w:
        return None
    if len(w) == 1:
        k = 1 if w[0] != 1 else 2
        return vertex(4, k).coords
    prefix = ReducedWord(4, w[:-1])
    c = vertex(4, w[-2]).coords
    for x in reversed(prefix.letters):
        c = apply_generator(x, c, PRIMAL)
    return c


def circles_to_csv(circles: Sequence[GasketCircle]) -> str:
    lines = ["word,cx,cy,r"]
    for c in circles:
        lines.append(",".join([c.label, _fmt(c.center[0]), _fmt(c.center[1]), _fmt(c.radius)]))
    return "\n".join(lines) + "\n"


def circles_to_svg(circles: Sequence[GasketCircle]) -> str:
    roots = [c for c in circles if not c.word.letters] or list(circles[:4])
    xmin = min(c.center[0] - c.radius for c in roots)
    xmax = max(c.center[0] + c.radius for c in roots)
    ymin = min(c.center[1] - c.radius for c in roots)
    ymax = max(c.center[1] + c.radius for c in roots)
    w, h = xmax - xmin, ymax - ymin
    mx, my = 0.05 * w, 0.05 * h
    stroke = max(w, h) / 1000
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(xmin - mx)} {_fmt(ymin - my)} '
        f'{_fmt(w + 2 * mx)} {_fmt(h + 2 * my)}">'
    ]
    for c in circles:
        parts.append(
            f'<circle cx="{_fmt(c.center[0])}" cy="{_fmt(c.center[1])}" r="{_fmt(c.radius)}" '
            f'fill="none" stroke="black" stroke-width="{_fmt(stroke)}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def gasket_cloud(circles: Iterable[GasketCircle], spacing: float = 1 / 4096, min_points: int = 8) -> PointCloud:
    """Points spread along each circle at roughly uniform arc spacing."""
    pts = []
    for c in circles:
        k = max(min_points, int(math.ceil(2 * math.pi * c.radius / spacing)))
        th = np.linspace(0.0, 2 * math.pi, k, endpoint=False)
        xs = c.center[0] + c.radius * np.cos(th)
        ys = c.center[1] + c.radius * np.sin(th)
        pts.extend(zip(xs.tolist(), ys.tolist()))
    return PointCloud(pts)


@dataclass(frozen=True)
class BoxCount:
    dimension: float
    scales: tuple[float, ...]
    counts: tuple[int, ...]

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "scales": list(self.scales), "counts": list(self.counts)}


def box_counting_dimension(cloud, scales: Sequence[float]) -> BoxCount:
    """Least-squares slope of log(count) against log(1/scale).

    The cloud is translated and scaled so its bounding box has largest side 1;
    ``scales`` are box sides in those units.
    """
    pts = np.asarray(cloud.points if isinstance(cloud, PointCloud) else cloud, dtype=float)
    if len(scales) < 2:
        raise InvalidInput("need at least two scales")
    if pts.size == 0:
        raise InvalidInput("empty cloud")
    if pts.ndim == 1:
        pts = pts[:, None]
    lo = pts.min(axis=0)
    extent = float((pts.max(axis=0) - lo).max())
    if extent == 0.0:
        raise DegenerateCloud("all points coincide")
    unit = (pts - lo) / extent
    counts = []
    for s in scales:
        if s <= 0:
            raise InvalidInput("scales must be positive")
        # the far edge (coordinate exactly 1) belongs to the last box, not a new one
        last = max(int(math.ceil(1.0 / s)) - 1, 0)
        cells = np.minimum(np.floor(unit / s).astype(np.int64), last)
        counts.append(int(len(np.unique(cells, axis=0))))
    x = np.log(1.0 / np.asarray(scales, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    slope = float(np.polyfit(x, y, 1)[0])
    return BoxCount(slope, tuple(float(s) for s in scales), tuple(counts))
