"""
Exact rotation polygons of displacement-weighted subshifts.

The polygon of a system is the convex hull of the means of its simple
cycles. Everything here runs on fractions.Fraction; there is no floating
point in this module.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import networkx as nx

from .config import CAP_WORDS
from .errors import CapExceeded, NoCycles, ValidationError
from .rational import Rational2, apply_matrix, cross
from .sft import (
    Cycle,
    Word,
    canonical_rotation,
    check_word,
    mean,
    psi,
    require_valid,
    trim_to_biextendable,
)

log = logging.getLogger(__name__)

POINT = "point"
SEGMENT = "segment"
POLYGON = "polygon"


@dataclass(frozen=True)
class RationalPolygon:
    """Vertices in counterclockwise order, starting at the lexicographic minimum."""

    vertices: Tuple[Rational2, ...]
    tag: str

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        n = len(self.vertices)
        if n < 2:
            return []
        if n == 2:
            return [(self.vertices[0], self.vertices[1])]
        return [(self.vertices[k], self.vertices[(k + 1) % n]) for k in range(n)]


@dataclass(frozen=True)
class Decomposition:
    cycles: Tuple[Cycle, ...]
    remainder: Word
    source_length: int

    def psi_total(self, sys):
        x, y = psi(sys, self.remainder, check=False)
        for c in self.cycles:
            cx, cy = psi(sys, c.word, check=False)
            x += cx
            y += cy
        return (x, y)

    def length_total(self):
        return len(self.remainder) + sum(len(c) for c in self.cycles)


def convex_hull(points):
    """Exact monotone-chain hull; collinear points are dropped."""
    pts = sorted(set(Rational2.of(p) for p in points))
    if not pts:
        raise ValidationError("cannot take the hull of no points")
    if len(pts) == 1:
        return RationalPolygon((pts[0],), POINT)

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)

    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        return RationalPolygon(tuple(hull), SEGMENT)
    return RationalPolygon(tuple(hull), POLYGON)


def _graph(sys):
    g = nx.DiGraph()
    g.add_nodes_from(sys.symbols())
    g.add_edges_from(sys.edges())
    return g


def simple_cycles(sys):
    """Every simple cycle once, as its smallest rotation, sorted by (length, word)."""
    require_valid(sys)
    words = set()
    for c in nx.simple_cycles(_graph(sys)):
        words.add(canonical_rotation(tuple(c)))
    log.debug("%d simple cycles over %d symbols", len(words), sys.alphabet_size)
    return [
        Cycle(word=w, simple=True) for w in sorted(words, key=lambda w: (len(w), w))
    ]


def rotation_polygon(sys):
    """Hull of the simple cycle means, built from support queries.

    Starting from the extremes along the axes, every edge of the current hull
    is checked against support_max in its outward normal; a cycle mean beyond
    the edge joins the point set. When no edge moves, every cycle mean lies
    inside, and every vertex is the mean of a simple cycle.
    """
    require_valid(sys)
    points = set()
    for w in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        _, c = support_max(sys, w)
        points.add(mean(sys, c))

    settled = set()
    while True:
        hull = convex_hull(points)
        if hull.tag == POINT:
            return hull
        grown = False
        for a, b in _directed_edges(hull):
            if (a, b) in settled:
                continue
            normal = Rational2(b.y - a.y, a.x - b.x)
            value, c = support_max(sys, normal)
            if value > normal.dot(a):
                points.add(mean(sys, c))
                grown = True
            else:
                settled.add((a, b))
        if not grown:
            log.debug(
                "polygon with %d vertices after %d settled edges",
                len(hull),
                len(settled),
            )
            return hull


def _directed_edges(poly):
    """Edges with the interior on the left; a segment is walked both ways."""
    if poly.tag == SEGMENT:
        a, b = poly.vertices
        return [(a, b), (b, a)]
    return poly.edges()


def _cycles_on_walk(walk):
    """Simple cycles cut out of a closed-up vertex walk, earliest repeat first."""
    found = []
    current = list(walk)
    while True:
        seen = {}
        cut = None
        for j, v in enumerate(current):
            if v in seen:
                cut = (seen[v], j)
                break
            seen[v] = j
        if cut is None:
            return found
        j1, j2 = cut
        found.append(tuple(current[j1:j2]))
        current = current[:j1] + current[j2:]


def support_max(sys, w):
    """Maximum of <w, psi(c)>/len(c) over all cycles, with a cycle attaining it.

    Karp's maximum mean cycle recursion on the scalar weights <w, s_i>, each
    weight sitting on the edge that leaves symbol i.
    """
    require_valid(sys)
    w = Rational2.of(w)
    if w.x == 0 and w.y == 0:
        raise ValidationError("zero direction")

    n = sys.alphabet_size
    weight = [w.dot(s) for s in sys.displacements]
    preds = defaultdict(list)
    for u, v in sys.edges():
        preds[v].append(u)

    # table[k][v]: best weight of a walk with k edges ending at v, None if none
    table = [[Fraction(0)] * n]
    parent = [[None] * n]
    for k in range(1, n + 1):
        row = [None] * n
        back = [None] * n
        prev = table[k - 1]
        for v in range(n):
            for u in preds[v]:
                if prev[u] is None:
                    continue
                cand = prev[u] + weight[u]
                if row[v] is None or cand > row[v]:
                    row[v] = cand
                    back[v] = u
        table.append(row)
        parent.append(back)
    log.debug("karp table %dx%d", n + 1, n)

    best = None
    best_v = None
    for v in range(n):
        if table[n][v] is None:
            continue
        worst = None
        for k in range(n):
            if table[k][v] is None:
                continue
            r = (table[n][v] - table[k][v]) / (n - k)
            if worst is None or r < worst:
                worst = r
        if worst is not None and (best is None or worst > best):
            best = worst
            best_v = v
    if best is None:
        raise NoCycles("the system has no cycles")

    walk = [best_v]
    for k in range(n, 0, -1):
        walk.append(parent[k][walk[-1]])
    walk.reverse()

    candidates = [
        canonical_rotation(c)
        for c in _cycles_on_walk(walk)
        if sum(weight[i] for i in c) / len(c) == best
    ]
    if not candidates:
        log.debug("no optimal cycle on the karp walk, searching tight edges")
        candidates = [_tight_cycle(sys, weight, best)]
    witness = min(candidates, key=lambda c: (len(c), c))
    return best, Cycle(word=witness, simple=True)


def _tight_cycle(sys, weight, value):
    """A simple cycle of mean value among the edges tight for longest-walk potentials.

    With weights shifted by -value no cycle is positive, so the potentials
    settle within A rounds, and every cycle of mean value is made of tight edges.
    """
    shifted = [wt - value for wt in weight]
    pot = [Fraction(0)] * sys.alphabet_size
    for _ in range(sys.alphabet_size):
        changed = False
        for u, v in sys.edges():
            cand = pot[u] + shifted[u]
            if cand > pot[v]:
                pot[v] = cand
                changed = True
        if not changed:
            break
    tight = nx.DiGraph()
    tight.add_edges_from(
        (u, v) for u, v in sys.edges() if pot[u] + shifted[u] == pot[v]
    )
    return canonical_rotation(tuple(u for u, _ in nx.find_cycle(tight)))


def _cap_guard(size, n, cap):
    """Refuse A**n > cap without building huge powers for absurd n."""
    if size <= 1:
        return
    if n * math.log(size) > math.log(cap) + 1 or size ** n > cap:
        raise CapExceeded(
            "word enumeration of length %d" % n, "%d^%d" % (size, n), cap
        )


def oracle_layers(sys, n_max, periodic=True):
    """(n, means) for n = 1..n_max from one pass over the words.

    Words are grouped by (first symbol, last symbol) with the set of their
    psi values, so the work grows with the number of distinct sums rather
    than with the number of words. sys must be trimmed.
    """
    disp = sys.displacements
    frontier = defaultdict(set)
    for i in sys.symbols():
        frontier[(i if periodic else None, i)].add(disp[i])
    for n in range(1, n_max + 1):
        if n > 1:
            nxt = defaultdict(set)
            for (first, last), sums in frontier.items():
                for j in sys.transitions[last]:
                    dx, dy = disp[j]
                    nxt[(first, j)].update((x + dx, y + dy) for x, y in sums)
            frontier = nxt
        means = set()
        for (first, last), sums in frontier.items():
            if periodic and not sys.allows(last, first):
                continue
            means.update(Rational2(Fraction(x, n), Fraction(y, n)) for x, y in sums)
        log.debug("oracle length %d: %d states, %d means", n, len(frontier), len(means))
        yield n, means


def oracle_means(sys, n, periodic=True, cap=CAP_WORDS):
    """Exact set of psi(w)/n over admissible words w of length n.

    periodic=True keeps only words whose wrap-around step is admissible.
    """
    if n < 1:
        raise ValidationError("word length must be positive, got %s" % n)
    sys, _ = trim_to_biextendable(sys)
    _cap_guard(sys.alphabet_size, n, cap)
    means = set()
    for _, means in oracle_layers(sys, n, periodic):
        pass
    return means


def oracle_hull(sys, n_max, cap=CAP_WORDS):
    """Hull of the periodic-word means of every length up to n_max."""
    if n_max < 1:
        raise ValidationError("word length must be positive, got %s" % n_max)
    trimmed, _ = trim_to_biextendable(sys)
    _cap_guard(trimmed.alphabet_size, n_max, cap)
    points = set()
    for _, means in oracle_layers(trimmed, n_max, periodic=True):
        points |= means
    return convex_hull(points)


def decompose(sys, w):
    """Cut cycles out of w until at most A-1 symbols remain.

    The cut is always at the earliest second occurrence of a symbol. A
    remainder of A distinct symbols that closes up into a cycle is taken
    as a final cycle; one that does not close up is returned as it is.
    """
    w = check_word(sys, w)
    a = sys.alphabet_size
    current = list(w)
    cycles = []
    while len(current) > a - 1:
        seen = {}
        cut = None
        for j, v in enumerate(current):
            if v in seen:
                cut = (seen[v], j)
                break
            seen[v] = j
        if cut is None:
            if sys.allows(current[-1], current[0]):
                cycles.append(Cycle(word=tuple(current), simple=True))
                current = []
            break
        j1, j2 = cut
        cycles.append(Cycle(word=tuple(current[j1:j2]), simple=True))
        current = current[:j1] + current[j2:]
    return Decomposition(tuple(cycles), tuple(current), len(w))


def polygon_contains(poly, p):
    """Exact membership test, boundary included."""
    p = Rational2.of(p)
    v = poly.vertices
    if poly.tag == POINT:
        return p == v[0]
    if poly.tag == SEGMENT:
        a, b = v
        if cross(a, b, p) != 0:
            return False
        return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(
            a.y, b.y
        )
    return all(cross(a, b, p) >= 0 for a, b in poly.edges())


def _segment_distance2(a, b, p):
    d = b - a
    t = (p - a).dot(d) / d.norm2()
    t = min(max(t, Fraction(0)), Fraction(1))
    return (p - (a + d.scaled(t))).norm2()


def squared_distance(poly, p):
    p = Rational2.of(p)
    if polygon_contains(poly, p):
        return Fraction(0)
    if poly.tag == POINT:
        return (p - poly.vertices[0]).norm2()
    return min(_segment_distance2(a, b, p) for a, b in poly.edges())


def support(poly, w):
    return max(v.dot(w) for v in poly.vertices)


def scale_polygon(poly, k):
    return convex_hull(v.scaled(k) for v in poly.vertices)


def transform_polygon(poly, L):
    return convex_hull(apply_matrix(L, v) for v in poly.vertices)


def vertex_witnesses(sys):
    """Each vertex of the polygon with the shortest simple cycle realizing it."""
    cycles = simple_cycles(sys)
    if not cycles:
        raise NoCycles("the system has no cycles")
    poly = convex_hull(mean(sys, c) for c in cycles)
    witnesses = []
    for v in poly.vertices:
        # cycles are already sorted by (length, word)
        witnesses.append((v, next(c for c in cycles if mean(sys, c) == v)))
    return witnesses


def oracle_report(sys, n_max, cap=CAP_WORDS):
    """Compare the cycle polygon with the brute-force oracle up to n_max."""
    if n_max < 1:
        raise ValidationError("word length must be positive, got %s" % n_max)
    require_valid(sys)
    trimmed, _ = trim_to_biextendable(sys)
    _cap_guard(trimmed.alphabet_size, n_max, cap)

    witnesses = vertex_witnesses(trimmed)
    poly = convex_hull(v for v, _ in witnesses)
    a = trimmed.alphabet_size
    s_max2 = trimmed.s_max2()

    rows = []
    seen = set()
    equal_at = None
    periodic_by_n = {}
    for (n, periodic), (_, opened) in zip(
        oracle_layers(trimmed, n_max, periodic=True),
        oracle_layers(trimmed, n_max, periodic=False),
    ):
        periodic_by_n[n] = periodic
        contained = all(polygon_contains(poly, p) for p in periodic)
        dist2 = max(squared_distance(poly, p) for p in opened)
        bound2 = Fraction(4 * a * a * s_max2, n * n)
        seen |= periodic
        if equal_at is None and seen and convex_hull(seen) == poly:
            equal_at = n
        rows.append(
            {
                "n": n,
                "contained": contained,
                "max_distance2": dist2,
                "bound2": bound2,
                "within": dist2 <= bound2,
            }
        )

    realized = []
    for v, c in witnesses:
        lengths = range(len(c), n_max + 1, len(c))
        realized.append(
            {
                "vertex": v,
                "witness": c.word,
                "lengths": list(lengths),
                "ok": all(v in periodic_by_n[n] for n in lengths),
            }
        )

    needed = math.lcm(*(len(c) for _, c in witnesses))
    ok = (
        all(r["contained"] and r["within"] for r in rows)
        and all(r["ok"] for r in realized)
        and (equal_at is not None or n_max < needed)
    )
    if not ok:
        log.warning("oracle disagrees with the cycle polygon up to n=%d", n_max)
    return {
        "polygon": poly,
        "rows": rows,
        "realized": realized,
        "equal_at": equal_at,
        "lcm_witness_lengths": needed,
        "longest_witness": max(len(c) for _, c in witnesses),
        "alphabet_size": a,
        "pass": ok,
    }
