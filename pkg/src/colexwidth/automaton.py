"""Core DFA representation, validation, minimization and co-lex word utilities.

States are dense integers ``0 .. state_count-1``.  The transition map may be
partial (no implicit dead sink); analyses that need totality complete the
automaton privately.  The alphabet carries the character order that every
downstream comparison uses.
"""

from collections import deque
from dataclasses import dataclass, field


class ColexWidthError(Exception):
    """Base class for errors raised by this package."""


class InputError(ColexWidthError):
    """Malformed or unsupported input."""


class NotTrimError(InputError):
    """Automaton has unreachable or dead states; see validate_trim / trim."""


class EmptyLanguageError(InputError):
    """Automaton accepts no word at all."""


class InvariantViolationError(ColexWidthError):
    """An internal structural invariant does not hold for the given data."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered alphabet: declaration order is the character order.

    Every symbol must be a single character and symbols must be distinct.
    """

    symbols: tuple

    _position: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise InputError("alphabet must not be empty")
        for s in symbols:
            if not (isinstance(s, str) and len(s) == 1):
                raise InputError("alphabet symbols must be single characters, got %r" % (s,))
        if len(set(symbols)) != len(symbols):
            raise InputError("alphabet symbols must be distinct")
        object.__setattr__(self, "_position", {c: i for i, c in enumerate(symbols)})

    def rank(self, char):
        try:
            return self._position[char]
        except KeyError:
            raise InputError("character %r is not in the alphabet" % (char,)) from None

    def __contains__(self, char):
        return char in self._position

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)


def colex_key(word, alphabet):
    """Sort key realizing the co-lex order: rank tuple of the reversed word."""
    return tuple(alphabet.rank(c) for c in reversed(word))


def colex_compare(a, b, alphabet):
    """Compare two words co-lexicographically.

    Returns -1, 0 or 1.  A word precedes another iff its reversal is
    lexicographically smaller; the empty word is the minimum.
    """
    ka, kb = colex_key(a, alphabet), colex_key(b, alphabet)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


@dataclass(frozen=True)
class Dfa:
    """Deterministic finite automaton over an ordered alphabet.

    ``delta`` maps ``(state, char)`` to a state and may be partial.  ``finals``
    must be nonempty: an automaton for the empty language has no well-defined
    prefix set and is rejected up front.
    """

    alphabet: Alphabet
    state_count: int
    initial: int
    finals: frozenset
    delta: dict

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", dict(self.delta))
        n = self.state_count
        if n <= 0:
            raise InputError("state_count must be positive")
        if not (0 <= self.initial < n):
            raise InputError("initial state %d out of range" % self.initial)
        if not self.finals:
            raise EmptyLanguageError("no final states: the accepted language is empty")
        for q in self.finals:
            if not (0 <= q < n):
                raise InputError("final state %d out of range" % q)
        for (q, c), t in self.delta.items():
            if not (0 <= q < n) or not (0 <= t < n):
                raise InputError("transition (%r, %r, %r) out of range" % (q, c, t))
            if c not in self.alphabet:
                raise InputError("transition character %r not in alphabet" % c)

    def step(self, state, char):
        """Target of the transition, or None when undefined."""
        return self.delta.get((state, char))

    def run(self, word, start=None):
        """State reached by reading word from start (default: initial), or None."""
        q = self.initial if start is None else start
        for c in word:
            q = self.delta.get((q, c))
            if q is None:
                return None
        return q

    def transitions(self):
        """All transitions as (state, char, target), deterministically ordered."""
        items = [(q, c, t) for (q, c), t in self.delta.items()]
        items.sort(key=lambda e: (e[0], self.alphabet.rank(e[1])))
        return items

    def out_edges(self, state):
        """Outgoing (char, target) pairs of a state in alphabet order."""
        edges = [(c, t) for (q, c), t in self.delta.items() if q == state]
        edges.sort(key=lambda e: self.alphabet.rank(e[0]))
        return edges


def accepts(dfa, word):
    q = dfa.run(word)
    return q is not None and q in dfa.finals


def reachable_states(dfa):
    seen = {dfa.initial}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for _, t in dfa.out_edges(q):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def coreachable_states(dfa):
    preds = {q: set() for q in range(dfa.state_count)}
    for (q, _c), t in dfa.delta.items():
        preds[t].add(q)
    seen = set(dfa.finals)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


@dataclass(frozen=True)
class TrimReport:
    ok: bool
    unreachable: tuple
    dead: tuple

    def violations(self):
        out = []
        for q in self.unreachable:
            out.append("state %d unreachable from the initial state" % q)
        for q in self.dead:
            out.append("state %d cannot reach a final state" % q)
        return out


def validate_trim(dfa):
    """Report which states are unreachable or cannot reach a final state."""
    reach = reachable_states(dfa)
    coreach = coreachable_states(dfa)
    unreachable = tuple(sorted(set(range(dfa.state_count)) - reach))
    dead = tuple(sorted(reach - coreach))
    return TrimReport(ok=not unreachable and not dead, unreachable=unreachable, dead=dead)


def require_trim(dfa):
    report = validate_trim(dfa)
    if not report.ok:
        raise NotTrimError(
            "automaton is not trim (%s); run validate_trim for details or trim it first"
            % "; ".join(report.violations())
        )


def trim(dfa):
    """Restrict to states that are both reachable and co-reachable.

    State ids are compacted preserving their relative order.  Raises
    EmptyLanguageError when nothing useful remains.
    """
    useful = sorted(reachable_states(dfa) & coreachable_states(dfa))
    if dfa.initial not in useful:
        raise EmptyLanguageError("initial state cannot reach any final state")
    remap = {q: i for i, q in enumerate(useful)}
    delta = {
        (remap[q], c): remap[t]
        for (q, c), t in dfa.delta.items()
        if q in remap and t in remap
    }
    finals = frozenset(remap[q] for q in dfa.finals if q in remap)
    return Dfa(dfa.alphabet, len(useful), remap[dfa.initial], finals, delta)


@dataclass(frozen=True)
class StatePartition:
    """Partition of states into classes 0 .. class_count-1."""

    class_of: tuple
    class_count: int

    def __post_init__(self):
        object.__setattr__(self, "class_of", tuple(self.class_of))
        used = set(self.class_of)
        if used != set(range(self.class_count)):
            raise InvariantViolationError("class ids must be exactly 0..class_count-1")

    @classmethod
    def from_labels(cls, labels):
        """Normalize arbitrary hashable labels: classes numbered by first occurrence."""
        remap = {}
        class_of = []
        for lab in labels:
            if lab not in remap:
                remap[lab] = len(remap)
            class_of.append(remap[lab])
        return cls(tuple(class_of), len(remap))

    def classes(self):
        blocks = [[] for _ in range(self.class_count)]
        for q, c in enumerate(self.class_of):
            blocks[c].append(q)
        return blocks


def nerode_classes(dfa):
    """Partition states by language equivalence (Moore refinement).

    Two states share a class iff their residual languages are equal.  Requires
    a trim automaton, where equal residuals also force equal definedness of
    outgoing transitions.
    """
    require_trim(dfa)
    labels = [int(q in dfa.finals) for q in range(dfa.state_count)]
    part = StatePartition.from_labels(labels)
    while True:
        sigs = []
        for q in range(dfa.state_count):
            row = tuple(
                part.class_of[dfa.delta[(q, c)]] if (q, c) in dfa.delta else None
                for c in dfa.alphabet
            )
            sigs.append((part.class_of[q], row))
        refined = StatePartition.from_labels(sigs)
        if refined.class_count == part.class_count:
            return part
        part = refined


def canonical_state_mapping(dfa):
    """old state -> new id, by BFS from the initial state in alphabet order."""
    order = [dfa.initial]
    seen = {dfa.initial}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for _, t in dfa.out_edges(q):
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return {q: i for i, q in enumerate(order)}


def _canonical_renumber(dfa):
    """Renumber states canonically so isomorphic automata compare equal."""
    remap = canonical_state_mapping(dfa)
    delta = {(remap[q], c): remap[t] for (q, c), t in dfa.delta.items()}
    finals = frozenset(remap[q] for q in dfa.finals)
    return Dfa(dfa.alphabet, dfa.state_count, remap[dfa.initial], finals, delta)


def minimize(dfa):
    """Minimum language-equivalent DFA with canonical BFS state numbering."""
    part = nerode_classes(dfa)
    reps = {}
    for q in range(dfa.state_count):
        reps.setdefault(part.class_of[q], q)
    delta = {}
    for c in range(part.class_count):
        rep = reps[c]
        for ch, t in dfa.out_edges(rep):
            delta[(c, ch)] = part.class_of[t]
    finals = frozenset(part.class_of[q] for q in dfa.finals)
    quotient = Dfa(dfa.alphabet, part.class_count, part.class_of[dfa.initial], finals, delta)
    return _canonical_renumber(quotient)


def is_minimal(dfa):
    return nerode_classes(dfa).class_count == dfa.state_count


def language_equivalent(a, b):
    """Whether two trim DFAs over the same alphabet accept the same language.

    Runs the product of the sink-completed automata and looks for a reachable
    state that is accepting in exactly one component.
    """
    if a.alphabet != b.alphabet:
        raise InputError("language comparison requires identical alphabets")
    require_trim(a)
    require_trim(b)
    sink = None
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        qa, qb = queue.popleft()
        in_a = qa is not sink and qa in a.finals
        in_b = qb is not sink and qb in b.finals
        if in_a != in_b:
            return False
        for c in a.alphabet:
            ta = sink if qa is sink else a.step(qa, c)
            tb = sink if qb is sink else b.step(qb, c)
            nxt = (ta, tb)
            if nxt != (sink, sink) and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def enumerate_prefixes(dfa, max_len):
    """All readable words of length <= max_len with their arrival state.

    On a trim automaton the readable words are exactly the prefixes of the
    accepted language.  The result is sorted co-lexicographically, so the
    empty word comes first.
    """
    require_trim(dfa)
    if max_len < 0:
        raise InputError("max_len must be >= 0")
    out = [("", dfa.initial)]
    frontier = [("", dfa.initial)]
    for _ in range(max_len):
        nxt = []
        for word, q in frontier:
            for c, t in dfa.out_edges(q):
                nxt.append((word + c, t))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    out.sort(key=lambda e: colex_key(e[0], dfa.alphabet))
    return out


def cyclic_states(dfa):
    """States that lie on at least one directed cycle."""
    succ = {q: set() for q in range(dfa.state_count)}
    for (q, _c), t in dfa.delta.items():
        succ[q].add(t)
    cyclic = set()
    for u in range(dfa.state_count):
        seen = set(succ[u])
        queue = deque(seen)
        while queue:
            q = queue.popleft()
            if q == u:
                cyclic.add(u)
                queue.clear()
                break
            for t in succ[q]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    return frozenset(cyclic)
