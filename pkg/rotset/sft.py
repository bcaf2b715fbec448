"""
Displacement-weighted subshifts of finite type and the algebra of their words.

A system has symbols 0..A-1, a successor set tau(i) for every symbol and an
integer displacement s_i attached to every symbol. Words are plain tuples of
symbols; the empty tuple is the trivial word.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .config import CAP_WORDS
from .errors import (
    CapExceeded,
    EmptySystem,
    Inadmissible,
    JunctionInadmissible,
    ValidationError,
)
from .rational import Rational2

log = logging.getLogger(__name__)

Word = Tuple[int, ...]
IntVec2 = Tuple[int, int]

EMPTY_WORD: Word = ()


@dataclass(frozen=True)
class SftSystem:
    alphabet_size: int
    transitions: Tuple[Tuple[int, ...], ...]
    displacements: Tuple[IntVec2, ...]
    labels: Optional[Tuple[str, ...]] = None

    @classmethod
    def build(cls, alphabet_size, transitions, displacements, labels=None):
        """Normalise nested lists into the immutable form.

        Nothing is checked here so that broken systems can still be reported
        on by validate_system.
        """
        return cls(
            alphabet_size=int(alphabet_size),
            transitions=tuple(
                tuple(sorted(set(int(j) for j in succ))) for succ in transitions
            ),
            displacements=tuple((int(s[0]), int(s[1])) for s in displacements),
            labels=None if labels is None else tuple(str(x) for x in labels),
        )

    def successors(self, i):
        return self.transitions[i]

    def allows(self, i, j):
        return j in self.transitions[i]

    def symbols(self):
        return range(self.alphabet_size)

    def s_max2(self):
        """Largest squared Euclidean norm of a displacement."""
        return max(x * x + y * y for x, y in self.displacements)

    def edges(self):
        for i, succ in enumerate(self.transitions):
            for j in succ:
                yield i, j


@dataclass(frozen=True)
class Cycle:
    word: Word
    simple: bool

    def __len__(self):
        return len(self.word)


def full_shift(displacements):
    """Every symbol may follow every symbol."""
    a = len(displacements)
    return SftSystem.build(a, [range(a)] * a, displacements)


def validate_system(sys):
    """Return the list of violated invariants; empty means the system is valid."""
    report = []
    a = sys.alphabet_size
    if a < 1:
        report.append("alphabet size %d is not positive" % a)
    if len(sys.transitions) != a:
        report.append(
            "transition count mismatch: %d successor sets for %d symbols"
            % (len(sys.transitions), a)
        )
    for i, succ in enumerate(sys.transitions):
        if len(succ) == 0:
            report.append("empty successor set at %d" % i)
        for j in succ:
            if j < 0 or j >= a:
                report.append("symbol %d out of range" % j)
    if len(sys.displacements) != a:
        report.append(
            "displacement count mismatch: %d displacements for %d symbols"
            % (len(sys.displacements), a)
        )
    if sys.labels is not None and len(sys.labels) != a:
        report.append(
            "label count mismatch: %d labels for %d symbols" % (len(sys.labels), a)
        )
    return report


def require_valid(sys):
    violations = validate_system(sys)
    if violations:
        raise ValidationError("invalid system", violations)
    return sys


def trim_to_biextendable(sys):
    """Drop symbols that cannot sit inside a bi-infinite admissible sequence.

    Symbols without a predecessor or without a successor among the surviving
    symbols are removed until nothing changes. Returns the reduced system and
    the map old symbol -> new symbol for the survivors.
    """
    require_valid(sys)
    alive = set(sys.symbols())
    changed = True
    while changed:
        changed = False
        has_pred = set()
        for i in alive:
            has_pred.update(j for j in sys.transitions[i] if j in alive)
        for i in sorted(alive):
            has_succ = any(j in alive for j in sys.transitions[i])
            if i not in has_pred or not has_succ:
                alive.discard(i)
                changed = True
    if not alive:
        raise EmptySystem("no symbol carries a bi-infinite sequence")

    keep = sorted(alive)
    mapping = {old: new for new, old in enumerate(keep)}
    log.debug(
        "trimmed %d of %d symbols", sys.alphabet_size - len(keep), sys.alphabet_size
    )
    trimmed = SftSystem.build(
        len(keep),
        [[mapping[j] for j in sys.transitions[i] if j in alive] for i in keep],
        [sys.displacements[i] for i in keep],
        None if sys.labels is None else [sys.labels[i] for i in keep],
    )
    return trimmed, mapping


def check_word(sys, w):
    for k, i in enumerate(w):
        if i < 0 or i >= sys.alphabet_size:
            raise Inadmissible("symbol %d at position %d is out of range" % (i, k))
    for k in range(len(w) - 1):
        if not sys.allows(w[k], w[k + 1]):
            raise Inadmissible(
                "%d cannot follow %d at position %d" % (w[k + 1], w[k], k + 1)
            )
    return tuple(w)


def psi(sys, w, check=True):
    """Sum of the displacements along w; (0, 0) for the trivial word."""
    if check:
        check_word(sys, w)
    x = y = 0
    for i in w:
        dx, dy = sys.displacements[i]
        x += dx
        y += dy
    return (x, y)


def concat(sys, w1, w2):
    """w1 followed by w2; the junction is checked before the inside of w2."""
    check_word(sys, w1)
    if w1 and w2 and not sys.allows(w1[-1], w2[0]):
        raise JunctionInadmissible(
            "%d cannot follow %d at the junction" % (w2[0], w1[-1])
        )
    check_word(sys, w2)
    return tuple(w1) + tuple(w2)


def is_cycle(sys, w):
    return len(w) >= 1 and sys.allows(w[-1], w[0])


def make_cycle(sys, w):
    w = check_word(sys, w)
    if not is_cycle(sys, w):
        raise Inadmissible("%s does not close up into a cycle" % format_word(w))
    return Cycle(word=w, simple=len(set(w)) == len(w))


def canonical_rotation(w):
    """The lexicographically smallest rotation of w."""
    if not w:
        return tuple(w)
    return min(tuple(w[k:]) + tuple(w[:k]) for k in range(len(w)))


def mean(sys, c):
    word = c.word if isinstance(c, Cycle) else tuple(c)
    x, y = psi(sys, word, check=False)
    n = len(word)
    return Rational2(Fraction(x, n), Fraction(y, n))


def count_words(sys, n):
    """Number of admissible words of length n, without listing them."""
    if n == 0:
        return 1
    counts = [1] * sys.alphabet_size
    for _ in range(n - 1):
        nxt = [0] * sys.alphabet_size
        for i, c in enumerate(counts):
            if c:
                for j in sys.transitions[i]:
                    nxt[j] += c
        counts = nxt
    return sum(counts)


def iter_words(sys, n, periodic=False):
    """Every admissible word of length n, in lexicographic order.

    With periodic=True only words whose wrap-around step is admissible too.
    """
    if n == 0:
        yield EMPTY_WORD
        return
    stack = [(i,) for i in reversed(range(sys.alphabet_size))]
    while stack:
        w = stack.pop()
        if len(w) == n:
            if not periodic or sys.allows(w[-1], w[0]):
                yield w
            continue
        for j in reversed(sys.transitions[w[-1]]):
            stack.append(w + (j,))


def random_word(sys, n, rng):
    """A random admissible word; rng is a random.Random."""
    if n == 0:
        return EMPTY_WORD
    w = [rng.randrange(sys.alphabet_size)]
    for _ in range(n - 1):
        w.append(rng.choice(sys.transitions[w[-1]]))
    return tuple(w)


def power_system(sys, n, cap=CAP_WORDS):
    """The block system whose symbols are the admissible words of length n.

    Block u may be followed by block v when v[0] may follow u[-1]; the
    displacement of a block is its psi.
    """
    require_valid(sys)
    if n < 1:
        raise ValidationError("power must be a positive integer, got %s" % n)
    size = count_words(sys, n)
    if size > cap:
        raise CapExceeded("power system of order %d" % n, size, cap)
    blocks = list(iter_words(sys, n))
    log.debug("power system of order %d has %d blocks", n, len(blocks))
    starting = {}
    for k, u in enumerate(blocks):
        starting.setdefault(u[0], []).append(k)
    transitions = []
    for u in blocks:
        succ = []
        for j in sys.transitions[u[-1]]:
            succ.extend(starting.get(j, []))
        transitions.append(succ)
    labels = None
    if sys.labels is None:
        labels = [format_word(u) for u in blocks]
    else:
        labels = ["".join(sys.labels[i] for i in u) for u in blocks]
    return SftSystem.build(
        len(blocks),
        transitions,
        [psi(sys, u, check=False) for u in blocks],
        labels,
    )


def apply_integer_linear(sys, L):
    """Push every displacement through the integer matrix L; tau is kept."""
    (a, b), (c, d) = L
    for entry in (a, b, c, d):
        if int(entry) != entry:
            raise ValidationError("matrix entries must be integers, got %r" % (L,))
    return SftSystem.build(
        sys.alphabet_size,
        sys.transitions,
        [(a * x + b * y, c * x + d * y) for x, y in sys.displacements],
        sys.labels,
    )


def reverse_system(sys):
    """The time reversal: tau transposed and every displacement negated.

    Symbols are trimmed first so that the transposed successor sets are
    non-empty; the rotation polygon of the result is minus that of sys.
    """
    trimmed, _ = trim_to_biextendable(sys)
    preds = [[] for _ in trimmed.symbols()]
    for i, j in trimmed.edges():
        preds[j].append(i)
    return SftSystem.build(
        trimmed.alphabet_size,
        preds,
        [(-x, -y) for x, y in trimmed.displacements],
        trimmed.labels,
    )


def union_system(first, second):
    """Disjoint union: the symbols of second follow those of first, no edges between."""
    shift = first.alphabet_size
    transitions = list(first.transitions) + [
        [j + shift for j in succ] for succ in second.transitions
    ]
    labels = None
    if first.labels is not None and second.labels is not None:
        labels = list(first.labels) + list(second.labels)
    return SftSystem.build(
        first.alphabet_size + second.alphabet_size,
        transitions,
        list(first.displacements) + list(second.displacements),
        labels,
    )


def format_word(w):
    """Symbols below 10 are written as digits, larger ones comma separated."""
    if all(0 <= i < 10 for i in w):
        return "".join(str(i) for i in w)
    return ",".join(str(i) for i in w)


def parse_word(text):
    text = text.strip()
    if text == "":
        return EMPTY_WORD
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    return tuple(int(ch) for ch in text)
