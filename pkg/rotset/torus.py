"""
Orbit averaging for lifts of torus maps homotopic to the identity.

Points are numpy arrays of shape (..., 2) in lifted (unwrapped) coordinates.
Nothing here is exact: every result is an estimate with a stated tolerance.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import ItineraryTooShort, NonFinite, NotInChart, ValidationError
from .polygon import convex_hull
from .rational import to_fraction

log = logging.getLogger(__name__)

TWOPI = 2 * np.pi

# shear_pair profiles, all positions taken mod 1
PLATEAU_RISE = (0.45, 0.55)
PLATEAU_FALL = (0.85, 0.95)
BUMP_SUPPORT = (0.5, 0.9)
BUMP_RAMP = 0.1
BUMP_HEIGHT = 0.2


@dataclass(frozen=True)
class TorusLift:
    family: str
    params: dict
    bound: Optional[float]
    apply: Callable = field(repr=False, compare=False)

    def __call__(self, pts):
        return self.apply(np.asarray(pts, dtype=float))


@dataclass(frozen=True)
class Rect:
    lo: Tuple[float, float]
    hi: Tuple[float, float]
    s: Tuple[int, int]

    @property
    def diameter(self):
        return float(np.hypot(self.hi[0] - self.lo[0], self.hi[1] - self.lo[1]))

    def contains(self, pts):
        pts = np.asarray(pts, dtype=float)
        return (
            (pts[..., 0] >= self.lo[0])
            & (pts[..., 0] <= self.hi[0])
            & (pts[..., 1] >= self.lo[1])
            & (pts[..., 1] <= self.hi[1])
        )


@dataclass(frozen=True)
class RectangleChart:
    domain: Tuple[Tuple[float, float], Tuple[float, float]]
    rectangles: Tuple[Rect, ...]

    @property
    def d_s(self):
        return max(r.diameter for r in self.rectangles)

    def in_domain(self, pts):
        (x0, y0), (x1, y1) = self.domain
        pts = np.asarray(pts, dtype=float)
        return (
            (pts[..., 0] > x0)
            & (pts[..., 0] < x1)
            & (pts[..., 1] > y0)
            & (pts[..., 1] < y1)
        )

    def representative(self, pts):
        """Shift by an integer vector into [lo, lo + 1)^2; returns the vector too."""
        pts = np.asarray(pts, dtype=float)
        shift = np.floor(pts - np.asarray(self.domain[0]))
        return pts - shift, shift

    def locate(self, pts):
        """Index of the rectangle holding each point's representative, -1 if none."""
        rep, _ = self.representative(pts)
        found = np.full(rep.shape[:-1], -1, dtype=np.int64)
        for k, r in enumerate(self.rectangles):
            found[(found < 0) & r.contains(rep)] = k
        return found


@dataclass
class OrbitRecord:
    x: np.ndarray
    iterates: np.ndarray

    @property
    def means(self):
        """phi_k for k = 1..n."""
        k = np.arange(1, len(self.iterates))[:, None]
        return (self.iterates[1:] - self.x) / k


def validate_chart(chart):
    report = []
    (x0, y0), (x1, y1) = chart.domain
    if not (0 < x1 - x0 < 1 and 0 < y1 - y0 < 1):
        report.append("domain sides must lie strictly between 0 and 1")
    if not chart.rectangles:
        report.append("chart has no rectangles")
    for k, r in enumerate(chart.rectangles):
        if not (r.lo[0] < r.hi[0] and r.lo[1] < r.hi[1]):
            report.append("rectangle %d is empty" % k)
        if not (x0 < r.lo[0] and r.hi[0] < x1 and y0 < r.lo[1] and r.hi[1] < y1):
            report.append("rectangle %d is not inside the domain" % k)
    for a in range(len(chart.rectangles)):
        for b in range(a + 1, len(chart.rectangles)):
            p, q = chart.rectangles[a], chart.rectangles[b]
            if (
                p.lo[0] <= q.hi[0]
                and q.lo[0] <= p.hi[0]
                and p.lo[1] <= q.hi[1]
                and q.lo[1] <= p.hi[1]
            ):
                report.append("rectangles %d and %d overlap" % (a, b))
    return report


def require_chart(chart):
    violations = validate_chart(chart)
    if violations:
        raise ValidationError("invalid chart", violations)
    return chart


# Lift families


def _smoothstep(u):
    """C-infinity step: 0 for u <= 0, 1 for u >= 1."""
    u = np.clip(u, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)
        b = np.where(u < 1, np.exp(-1.0 / np.where(u < 1, 1.0 - u, 1.0)), 0.0)
    return a / (a + b)


def plateau(y):
    """1 on [0.55, 0.85] and 0 on [0.95, 1.45], mod 1."""
    r = np.mod(y, 1.0)
    rise = _smoothstep((r - PLATEAU_RISE[0]) / (PLATEAU_RISE[1] - PLATEAU_RISE[0]))
    fall = _smoothstep((PLATEAU_FALL[1] - r) / (PLATEAU_FALL[1] - PLATEAU_FALL[0]))
    return rise * fall


def bump(x):
    """Height 1, supported on (0.5, 0.9) mod 1."""
    r = np.mod(x, 1.0)
    return _smoothstep((r - BUMP_SUPPORT[0]) / BUMP_RAMP) * _smoothstep(
        (BUMP_SUPPORT[1] - r) / BUMP_RAMP
    )


def _translation(params):
    v = np.array([float(to_fraction(c)) for c in params.get("v", [0, 0])])
    return (lambda p: p + v), float(np.hypot(*v))


def _standard(params):
    a = float(to_fraction(params.get("a", 0)))
    b = float(to_fraction(params.get("b", 0)))

    def apply(p):
        out = np.empty_like(p)
        out[..., 0] = p[..., 0] + a * np.sin(TWOPI * p[..., 1])
        out[..., 1] = p[..., 1] + b * np.sin(TWOPI * p[..., 0])
        return out

    return apply, float(np.hypot(a, b))


def _shear_pair(params):
    h = float(to_fraction(params.get("h", BUMP_HEIGHT)))

    def apply(p):
        out = np.empty_like(p)
        out[..., 0] = p[..., 0] + plateau(p[..., 1])
        out[..., 1] = p[..., 1] + h * bump(out[..., 0])
        return out

    return apply, float(np.hypot(1.0, h))


FAMILIES = {
    "translation": _translation,
    "standard": _standard,
    "shear_pair": _shear_pair,
}


def make_lift(family, params=None):
    params = dict(params or {})
    try:
        build = FAMILIES[family]
    except KeyError:
        raise ValidationError(
            "unknown lift family %r, expected one of %s" % (family, ", ".join(FAMILIES))
        )
    apply, bound = build(params)
    return TorusLift(family=family, params=params, bound=bound, apply=apply)


def identity_lift():
    return make_lift("translation", {"v": [0, 0]})


def demo_chart():
    """Two rectangles: one fixed by the shear_pair lift, one moved by (1, 0)."""
    return RectangleChart(
        domain=((0.05, 0.05), (0.95, 0.95)),
        rectangles=(
            Rect(lo=(0.15, 0.15), hi=(0.35, 0.35), s=(0, 0)),
            Rect(lo=(0.15, 0.6), hi=(0.35, 0.8), s=(1, 0)),
        ),
    )


def grid_points(grid, lo=(0.0, 0.0), hi=(1.0, 1.0), endpoint=False):
    if grid < 1:
        raise ValidationError("grid must be positive, got %s" % grid)
    xs = np.linspace(lo[0], hi[0], grid, endpoint=endpoint)
    ys = np.linspace(lo[1], hi[1], grid, endpoint=endpoint)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return np.stack([gx.ravel(), gy.ravel()], axis=-1)


# Orbits


def _step(lift, pts, k):
    nxt = lift(pts)
    if not np.all(np.isfinite(nxt)):
        raise NonFinite("orbit left the finite range at step %d" % k)
    return nxt


def orbit(lift, x, n):
    x = np.asarray(x, dtype=float)
    iterates = np.empty((n + 1,) + x.shape)
    iterates[0] = x
    for k in range(1, n + 1):
        iterates[k] = _step(lift, iterates[k - 1], k)
    return OrbitRecord(x=x, iterates=iterates)


def phi_n(lift, x, n):
    """(F^n(x) - x)/n in unwrapped coordinates; x may hold many points."""
    if n < 1:
        raise ValidationError("phi_n needs n >= 1, got %s" % n)
    x = np.asarray(x, dtype=float)
    p = x
    for k in range(1, n + 1):
        p = _step(lift, p, k)
    return (p - x) / n


def estimate_displacement_bound(lift, grid=128, margin=0.1):
    pts = grid_points(grid)
    disp = np.linalg.norm(lift(pts) - pts, axis=-1)
    return float(disp.max()) * (1 + margin)


def cauchy_check(lift, samples, n_max, bound=None):
    """Worst n*|phi_{n+1} - phi_n| / K over samples and n < n_max, with K = 2D."""
    d = bound if bound is not None else lift.bound
    if d is None:
        d = estimate_displacement_bound(lift)
    k_const = 2 * d
    x = np.atleast_2d(np.asarray(samples, dtype=float))
    p = _step(lift, x, 1)
    prev = p - x
    worst = 0.0
    for n in range(1, n_max):
        p = _step(lift, p, n + 1)
        cur = (p - x) / (n + 1)
        diff = np.linalg.norm(cur - prev, axis=-1).max() * n
        if k_const > 0:
            worst = max(worst, diff / k_const)
        elif diff > 0:
            worst = float("inf")
        prev = cur
    ok = worst <= 1 + 1e-9
    if not ok:
        log.warning("cauchy bound broken: ratio %.6g", worst)
    return {
        "D": d,
        "K": k_const,
        "n_max": n_max,
        "samples": len(x),
        "max_ratio": worst,
        "pass": ok,
    }


def estimate_rotation_set(lift, grid, n, decimals=12):
    """phi_n over a grid of the fundamental domain and its hull, tagged "estimate".

    The cloud is rounded to 10**-decimals and the hull is taken exactly on the
    rounded values.
    """
    if grid < 2 or n < 1:
        raise ValidationError("need grid >= 2 and n >= 1")
    pts = grid_points(grid)
    cloud = phi_n(lift, pts, n)
    rounded = np.unique(np.round(cloud, decimals), axis=0)
    hull = convex_hull((Fraction(float(a)), Fraction(float(b))) for a, b in rounded)
    spread = cloud.max(axis=0) - cloud.min(axis=0)
    log.debug("cloud of %d points, %d distinct", len(cloud), len(rounded))
    return {
        "points": pts,
        "cloud": cloud,
        "hull": hull,
        "tag": "estimate",
        "diameter": float(np.hypot(*spread)),
        "n": n,
        "grid": grid,
    }


def periodicity_check(lift, rng, samples=256):
    """Largest |F(x + m) - F(x) - m| over random x and integer m with |m| <= 2."""
    x = rng.uniform(-2.0, 2.0, size=(samples, 2))
    m = rng.integers(-2, 3, size=(samples, 2))
    far = np.hypot(m[:, 0], m[:, 1]) > 2
    m[far] = np.sign(m[far])
    err = np.linalg.norm(lift(x + m) - lift(x) - m, axis=-1)
    return float(err.max())


def accumulation_check(lift, x, n):
    """|phi_n - mean of the per-step displacements taken on the torus|."""
    rec = orbit(lift, x, n)
    base = np.mod(rec.iterates[:-1], 1.0)
    steps = lift(base) - base
    return float(np.abs(rec.means[-1] - steps.mean(axis=0)).max())


# Charts


def verify_rotational_chart(lift, chart, samples_per_rect=16):
    """Sample each rectangle (edges included) and check F(p) - s lies in the domain."""
    require_chart(chart)
    rows = []
    for k, r in enumerate(chart.rectangles):
        pts = grid_points(samples_per_rect, r.lo, r.hi, endpoint=True)
        moved = lift(pts) - np.asarray(r.s, dtype=float)
        bad = ~chart.in_domain(moved)
        rows.append(
            {
                "rect": k,
                "s": r.s,
                "samples": len(pts),
                "violations": int(bad.sum()),
                "first": pts[bad][0].tolist() if bad.any() else None,
            }
        )
    ok = all(r["violations"] == 0 for r in rows)
    if not ok:
        log.warning("chart is not rotational for %s", lift.family)
    return {"rects": rows, "d_S": chart.d_s, "pass": ok}


def itineraries(lift, chart, pts, n):
    """Symbols of the first n points of each orbit, -1 after the first exit.

    Returns (symbols of shape (N, n), steps_valid of shape (N,)).
    """
    p = np.atleast_2d(np.asarray(pts, dtype=float))
    symbols = np.full((len(p), n), -1, dtype=np.int64)
    alive = np.ones(len(p), dtype=bool)
    for k in range(n):
        here = chart.locate(p)
        alive &= here >= 0
        symbols[alive, k] = here[alive]
        if not alive.any() or k == n - 1:
            break
        p = _step(lift, p, k + 1)
    steps = (symbols >= 0).sum(axis=1)
    return symbols, steps


def itinerary(lift, chart, x, n):
    """Symbols visited from x until the first exit, at most n of them."""
    if chart.locate(np.asarray(x, dtype=float)[None])[0] < 0:
        raise NotInChart("starting point %s is in no rectangle" % (list(x),))
    symbols, steps = itineraries(lift, chart, [x], n)
    steps = int(steps[0])
    return tuple(int(s) for s in symbols[0, :steps]), steps


def check_displacement_bound(lift, chart, x, n):
    """Residual |F^k(x) - x - sum(s_i_j, j < k)| for k <= n against 2*d_S."""
    word, steps = itinerary(lift, chart, x, n)
    if steps < n:
        raise ItineraryTooShort(
            "orbit leaves the chart after %d of %d steps" % (steps, n)
        )
    rec = orbit(lift, x, n)
    s = np.array([chart.rectangles[i].s for i in word], dtype=float)
    sums = np.vstack([np.zeros(2), np.cumsum(s, axis=0)])
    residual = np.linalg.norm(rec.iterates - rec.x - sums, axis=-1)[1:]
    bound = 2 * chart.d_s
    worst = float(residual.max())
    return {
        "n": n,
        "word": word,
        "max_residual": worst,
        "bound": bound,
        "pass": worst < bound,
    }


def in_chart_orbit_segments(lift, chart, grid, n):
    """Grid points of the domain whose first n orbit points stay in the chart."""
    (x0, y0), (x1, y1) = chart.domain
    pts = grid_points(grid, (x0, y0), (x1, y1), endpoint=True)
    _, steps = itineraries(lift, chart, pts, n)
    return pts[steps >= n]
