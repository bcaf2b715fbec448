"""
The two-letter sequence xi built from a fast-growing schedule a_n.

Position i gets a level: 0 when |i| <= a_0, otherwise the least n >= 1 with
|i| mod a_{n+1} <= a_n. xi(i) is the parity of that level, so the partial
means S_n swing towards 0 at even checkpoints a_n and towards 1 at odd ones.

The "toeplitz" variant also zeroes the positions |i| >= a_2 with
|i| mod a_2 in {0, 1}, which makes every block k*a_{n+1} + [0, a_n] a copy of
xi[0..a_n], so the variant recurs with bounded gaps.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np

from .config import CAP_SUM, DEPTH
from .errors import CapExceeded, DepthExceeded, ValidationError
from .rational import Rational2, to_fraction

log = logging.getLogger(__name__)

LITERAL = "literal"
TOEPLITZ = "toeplitz"
VARIANTS = (LITERAL, TOEPLITZ)


@dataclass(frozen=True)
class ApParams:
    delta: Fraction
    t: int
    schedule: Tuple[int, ...]
    variant: str = LITERAL

    @property
    def depth(self):
        return len(self.schedule) - 1

    def a(self, n):
        """a_n, computed past the materialized depth when needed."""
        if n < len(self.schedule):
            return self.schedule[n]
        value = self.schedule[-1]
        for k in range(len(self.schedule) - 1, n):
            value <<= self.t + k
        return value

    @property
    def limit(self):
        """Largest |i| whose level is known."""
        return self.schedule[-1]


def ap_params(delta, depth=DEPTH, variant=LITERAL):
    delta = to_fraction(delta)
    if not 0 < delta <= 1:
        raise ValidationError("delta must lie in (0, 1], got %s" % delta)
    if depth < 2:
        raise ValidationError("schedule depth must be at least 2, got %s" % depth)
    if variant not in VARIANTS:
        raise ValidationError(
            "unknown variant %r, expected one of %s" % (variant, ", ".join(VARIANTS))
        )
    t = 1
    while Fraction(1, 2 ** t) >= delta:
        t += 1
    schedule = [1]
    for n in range(depth):
        schedule.append(schedule[-1] << (t + n))
    log.debug("delta=%s gives t=%d, a_%d=%d", delta, t, depth, schedule[-1])
    return ApParams(delta=delta, t=t, schedule=tuple(schedule), variant=variant)


def level(params, i):
    m = abs(i)
    if m > params.limit:
        raise DepthExceeded(i, params.limit)
    if m <= params.schedule[0]:
        return 0
    n = 1
    while m % params.a(n + 1) > params.a(n):
        n += 1
    return n


def xi(params, i):
    m = abs(i)
    if params.variant == TOEPLITZ and m >= params.a(2) and m % params.a(2) <= 1:
        if m > params.limit:
            raise DepthExceeded(i, params.limit)
        return 0
    return level(params, i) & 1


def xi_prefix(params, n, cap=CAP_SUM):
    """xi(0), ..., xi(n-1) as a uint8 array."""
    if n > cap:
        raise CapExceeded("xi prefix", n, cap)
    if n - 1 > params.limit:
        raise DepthExceeded(n - 1, params.limit)
    m = np.arange(n, dtype=np.int64)
    levels = np.full(n, -1, dtype=np.int64)
    levels[m <= params.schedule[0]] = 0
    k = 1
    while (levels < 0).any():
        a_k = params.a(k)
        a_next = params.a(k + 1)
        open_ = levels < 0
        if a_next > n:
            hit = m <= a_k
        else:
            hit = (m % a_next) <= a_k
        levels[open_ & hit] = k
        k += 1
    bits = (levels & 1).astype(np.uint8)
    if params.variant == TOEPLITZ:
        a2 = params.a(2)
        bits[(m >= a2) & ((m % a2) <= 1)] = 0
    return bits


def prefix_counts(params, horizon, cap=CAP_SUM):
    """counts[n] = xi(0) + ... + xi(n-1) for n = 0..horizon, exact integers."""
    counts = np.zeros(horizon + 1, dtype=np.int64)
    np.cumsum(xi_prefix(params, horizon, cap=cap), dtype=np.int64, out=counts[1:])
    return counts


def partial_mean(params, n, cap=CAP_SUM):
    if n < 1:
        raise ValidationError("partial mean needs n >= 1, got %s" % n)
    if n > cap:
        raise CapExceeded("partial sum", n, cap)
    return Fraction(int(xi_prefix(params, n, cap=cap).sum(dtype=np.int64)), n)


def checkpoint_bounds(params, n_max, cap=CAP_SUM):
    """S at every checkpoint a_0..a_{n_max}, compared with both bounds.

    Each row carries the a_{n-1}/a_n comparison as "bound"/"tight" and the
    delta comparison as "delta_bound"/"pass". Rows with n >= 2 are the ones
    that gate a verdict.
    """
    if n_max > params.depth:
        raise DepthExceeded(params.a(n_max), params.limit)
    top = params.a(n_max)
    if top > cap:
        raise CapExceeded("checkpoint a_%d" % n_max, top, cap)
    counts = prefix_counts(params, top, cap=cap)
    delta = params.delta
    rows = []
    for n in range(n_max + 1):
        a_n = params.a(n)
        s = Fraction(int(counts[a_n]), a_n)
        even = n % 2 == 0
        if n == 0:
            bound = delta
        elif even:
            bound = Fraction(params.a(n - 1), a_n)
        else:
            bound = 1 - Fraction(params.a(n - 1), a_n)
        if even:
            tight = s < bound
            delta_bound = delta
            ok = s < delta
        else:
            tight = s > bound
            delta_bound = 1 - delta
            ok = s > 1 - delta
        rows.append(
            {
                "n": n,
                "a_n": a_n,
                "S": s,
                "parity": "even" if even else "odd",
                "bound": bound,
                "tight": tight,
                "delta_bound": delta_bound,
                "pass": ok,
                "gating": n >= 2,
            }
        )
        if n >= 2 and not ok:
            log.warning("checkpoint n=%d fails: S=%s", n, s)
    return rows


def checkpoints_pass(rows):
    return all(r["pass"] for r in rows if r["gating"])


def window_length(params, n0):
    if params.variant == TOEPLITZ:
        return params.a(n0) + params.a(max(n0, 1) + 1)
    return params.a(n0) + params.a(n0 + 1)


def window_check(seq, word, window):
    """First start s whose window seq[s:s+window] misses word, or None."""
    seq = np.asarray(seq)
    word = np.asarray(word, dtype=seq.dtype)
    lw = len(word)
    if window < lw:
        raise ValidationError("window %d is shorter than the word (%d)" % (window, lw))
    if len(seq) < window:
        raise ValidationError("sequence shorter than one window")
    views = np.lib.stride_tricks.sliding_window_view(seq, lw)
    occ = np.flatnonzero((views == word).all(axis=1))
    starts = np.arange(len(seq) - window + 1)
    idx = np.searchsorted(occ, starts)
    nxt = np.full(len(starts), np.iinfo(np.int64).max, dtype=np.int64)
    found = idx < len(occ)
    nxt[found] = occ[idx[found]]
    bad = np.flatnonzero(nxt > starts + window - lw)
    if len(bad) == 0:
        return None
    return int(bad[0])


def recurrence_window_check(params, n0, scan_len, cap=CAP_SUM):
    """Does xi[0..a_n0] occur in every window of the recurrence length?"""
    window = window_length(params, n0)
    if scan_len < 2 * window:
        raise ValidationError(
            "scan length %d is below twice the window %d" % (scan_len, window)
        )
    seq = xi_prefix(params, scan_len, cap=cap)
    word = seq[: params.a(n0) + 1]
    first_bad = window_check(seq, word, window)
    if first_bad is not None:
        log.warning(
            "%s xi: window at %d misses xi[0..a_%d]", params.variant, first_bad, n0
        )
    return {
        "variant": params.variant,
        "n0": n0,
        "word": "".join(str(int(b)) for b in word),
        "window": window,
        "scan_len": scan_len,
        "first_failure": first_bad,
        "pass": first_bad is None,
    }


def _require_two_symbol_shift(sys):
    if sys.alphabet_size != 2 or any(set(succ) != {0, 1} for succ in sys.transitions):
        raise ValidationError("rotation points need the full shift on two symbols")


def default_burn_in(params, horizon):
    """a_{N-2} for the last checkpoint a_N <= horizon, and at least a_1."""
    top = 0
    while params.a(top + 1) <= horizon:
        top += 1
    return min(params.a(max(top - 2, 1)), horizon)


def symbolic_rotation_points(
    params, sys, horizon, stride=1, burn_in=None, c=4, cap=CAP_SUM
):
    """Means p_n = sum(s_xi(i), i < n)/n of the coded orbit, with a density check.

    Points are taken at the multiples of stride from burn_in up to horizon.
    The set counts as dense when its largest gap along the segment, scaled by
    |s_1 - s_0|_inf, satisfies gap**2 * horizon <= c**2.
    """
    _require_two_symbol_shift(sys)
    if stride < 1 or horizon < 1:
        raise ValidationError("horizon and stride must be positive")
    if horizon > cap:
        raise CapExceeded("rotation points", horizon, cap)
    if burn_in is None:
        burn_in = default_burn_in(params, horizon)
    counts = prefix_counts(params, horizon, cap=cap)

    first = max(stride, -(-burn_in // stride) * stride)
    ns = np.arange(first, horizon + 1, stride, dtype=np.int64)
    if len(ns) == 0:
        raise ValidationError(
            "no sample between burn-in %d and %d" % (burn_in, horizon)
        )
    ones = counts[ns]

    # float order is exact here: distinct means differ by at least 1/horizon**2
    order = np.lexsort((ns, ones / ns))
    ns_sorted = ns[order]
    ones_sorted = ones[order]
    values = ones_sorted / ns_sorted
    k_min, k_max = 0, len(ns_sorted) - 1
    s_min = Fraction(int(ones_sorted[k_min]), int(ns_sorted[k_min]))
    s_max = Fraction(int(ones_sorted[k_max]), int(ns_sorted[k_max]))

    gap = Fraction(0)
    if len(values) > 1 and values[-1] > values[0]:
        diffs = np.diff(values)
        top = diffs.max()
        for k in np.flatnonzero(diffs >= top * (1 - 1e-9)):
            exact = Fraction(int(ones_sorted[k + 1]), int(ns_sorted[k + 1])) - Fraction(
                int(ones_sorted[k]), int(ns_sorted[k])
            )
            gap = max(gap, exact)

    s0 = Rational2.of(sys.displacements[0])
    s1 = Rational2.of(sys.displacements[1])
    step = s1 - s0
    scale = max(abs(step.x), abs(step.y))
    epsilon = gap * scale
    c = to_fraction(c)
    dense = epsilon * epsilon * horizon <= c * c
    log.debug("%d rotation points, largest gap %s", len(ns), epsilon)
    return {
        "count": len(ns),
        "burn_in": burn_in,
        "stride": stride,
        "horizon": horizon,
        "min": s_min,
        "max": s_max,
        "min_point": s0 + step.scaled(s_min),
        "max_point": s0 + step.scaled(s_max),
        "epsilon": epsilon,
        "tolerance_c": c,
        "dense": dense,
    }


def rotation_point(sys, counts, n):
    """p_n from the prefix counts; exact."""
    ones = int(counts[n])
    s0 = Rational2.of(sys.displacements[0])
    s1 = Rational2.of(sys.displacements[1])
    return s0.scaled(Fraction(n - ones, n)) + s1.scaled(Fraction(ones, n))


def rotation_points(params, sys, horizon, stride=1, burn_in=None, cap=CAP_SUM):
    """(n, p_n) for the same sample as symbolic_rotation_points."""
    _require_two_symbol_shift(sys)
    if burn_in is None:
        burn_in = default_burn_in(params, horizon)
    counts = prefix_counts(params, horizon, cap=cap)
    first = max(stride, -(-burn_in // stride) * stride)
    for n in range(first, horizon + 1, stride):
        yield n, rotation_point(sys, counts, n)


def step_bound_check(params, horizon, cap=CAP_SUM):
    """Largest (n+1)*|S_{n+1} - S_n| for 1 <= n < horizon; the step bound says <= 2."""
    if horizon < 2:
        raise ValidationError("step check needs horizon >= 2")
    bits = xi_prefix(params, horizon, cap=cap)
    counts = prefix_counts(params, horizon, cap=cap)
    n = np.arange(1, horizon, dtype=np.int64)
    # (n+1)(S_{n+1} - S_n) = xi(n) - S_n
    ratio = np.abs(bits[1:horizon] - counts[1:horizon] / n)
    k = int(np.argmax(ratio))
    at = int(n[k])
    worst = abs(Fraction(int(bits[at]) * at - int(counts[at]), at))
    return {"horizon": horizon, "max_ratio": worst, "at": at, "pass": worst <= 2}
