"""Co-lex partial order on DFA states, automaton width, chains and antichains.

Distinct states ``u, v`` satisfy ``u < v`` in the state order exactly when
every word arriving at ``u`` is co-lexicographically smaller than every word
arriving at ``v``.  The complement is computed first: an existential relation
holding for ``(u, v)`` whenever *some* word into ``u`` is <= *some* word into
``v``.  That relation is the least fixpoint of four closure rules over state
pairs, and the strict order falls out by negation and swap.
"""

from collections import deque
from dataclasses import dataclass

from .automaton import InputError, InvariantViolationError, require_trim


@dataclass(frozen=True)
class ColexRelation:
    """Existential comparison matrix: entry (u, v) says some word into u is
    co-lex <= some word into v."""

    state_count: int
    leq_exists: tuple  # tuple of tuples of bool

    def holds(self, u, v):
        return self.leq_exists[u][v]


@dataclass(frozen=True)
class StateOrder:
    """Strict partial order on states as a boolean matrix."""

    state_count: int
    strictly_below: tuple  # tuple of tuples of bool

    def below(self, u, v):
        return self.strictly_below[u][v]

    def comparable(self, u, v):
        return u == v or self.strictly_below[u][v] or self.strictly_below[v][u]

    def pairs(self):
        n = self.state_count
        return [(u, v) for u in range(n) for v in range(n) if self.strictly_below[u][v]]

    def check_valid(self):
        """Raise unless the matrix is irreflexive, antisymmetric and transitive."""
        n = self.state_count
        m = self.strictly_below
        for u in range(n):
            if m[u][u]:
                raise InvariantViolationError("order is not irreflexive at %d" % u)
            for v in range(n):
                if m[u][v] and m[v][u]:
                    raise InvariantViolationError("order is not antisymmetric on (%d, %d)" % (u, v))
                if m[u][v]:
                    for w in range(n):
                        if m[v][w] and not m[u][w]:
                            raise InvariantViolationError(
                                "order is not transitive on (%d, %d, %d)" % (u, v, w)
                            )


def existential_leq(dfa):
    """Least fixpoint of the pairwise comparison rules.

    Seeds: every reflexive pair, and every pair whose first component is the
    initial state (the empty word is below everything).  A pair (u, v) also
    holds outright when some character entering u precedes some character
    entering v, and propagates along equally-labeled edge pairs.
    """
    require_trim(dfa)
    n = dfa.state_count
    rel = [[False] * n for _ in range(n)]
    worklist = deque()

    def add(u, v):
        if not rel[u][v]:
            rel[u][v] = True
            worklist.append((u, v))

    for u in range(n):
        add(u, u)
    for v in range(n):
        add(dfa.initial, v)

    in_ranks = [[] for _ in range(n)]
    for (q, c), t in dfa.delta.items():
        in_ranks[t].append(dfa.alphabet.rank(c))
    min_in = [min(r) if r else None for r in in_ranks]
    max_in = [max(r) if r else None for r in in_ranks]
    for u in range(n):
        if min_in[u] is None:
            continue
        for v in range(n):
            if max_in[v] is not None and min_in[u] < max_in[v]:
                add(u, v)

    while worklist:
        u, v = worklist.popleft()
        for c in dfa.alphabet:
            tu = dfa.step(u, c)
            tv = dfa.step(v, c)
            if tu is not None and tv is not None:
                add(tu, tv)

    return ColexRelation(n, tuple(tuple(row) for row in rel))


def state_order(dfa):
    """Strict co-lex order: u < v iff no word into v is <= any word into u."""
    rel = existential_leq(dfa)
    n = dfa.state_count
    below = tuple(
        tuple(u != v and not rel.leq_exists[v][u] for v in range(n)) for u in range(n)
    )
    return StateOrder(n, below)


@dataclass(frozen=True)
class Antichain:
    """A set of pairwise incomparable states, kept sorted."""

    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(sorted(self.states)))

    def __iter__(self):
        return iter(self.states)

    def __len__(self):
        return len(self.states)

    def __contains__(self, q):
        return q in self.states

    def check(self, order):
        for i, u in enumerate(self.states):
            for v in self.states[i + 1:]:
                if order.comparable(u, v):
                    raise InvariantViolationError(
                        "states %d and %d are comparable" % (u, v)
                    )


@dataclass(frozen=True)
class ChainPartition:
    """Assignment of every state to a chain index 0 .. chain_count-1."""

    chain_of: tuple
    chain_count: int

    def __post_init__(self):
        object.__setattr__(self, "chain_of", tuple(self.chain_of))
        used = set(self.chain_of)
        if used != set(range(self.chain_count)):
            raise InputError("chain ids must be exactly 0..chain_count-1")

    @classmethod
    def from_blocks(cls, blocks, state_count):
        chain_of = [None] * state_count
        for i, block in enumerate(blocks):
            for q in block:
                if not (0 <= q < state_count):
                    raise InputError("chain member %r out of range" % (q,))
                if chain_of[q] is not None:
                    raise InputError("state %d occurs in more than one chain" % q)
                chain_of[q] = i
        missing = [q for q, c in enumerate(chain_of) if c is None]
        if missing:
            raise InputError("states %s missing from the chain partition" % missing)
        return cls(tuple(chain_of), len(blocks))

    def blocks(self):
        out = [[] for _ in range(self.chain_count)]
        for q, c in enumerate(self.chain_of):
            out[c].append(q)
        return out


def is_chain_partition(order, partition):
    """Whether every block of the partition is pairwise comparable."""
    if len(partition.chain_of) != order.state_count:
        raise InputError("partition covers %d states, order has %d"
                         % (len(partition.chain_of), order.state_count))
    for block in partition.blocks():
        for i, u in enumerate(block):
            for v in block[i + 1:]:
                if not order.comparable(u, v):
                    return False
    return True


def _transitive_closure(order):
    n = order.state_count
    m = [list(row) for row in order.strictly_below]
    for w in range(n):
        for u in range(n):
            if m[u][w]:
                row_u, row_w = m[u], m[w]
                for v in range(n):
                    if row_w[v]:
                        row_u[v] = True
    return m


def _max_matching(n, adj):
    """Maximum bipartite matching on left/right copies of the states.

    Greedy pass in ascending state order followed by augmenting-path search,
    both with sorted adjacency, so witnesses are deterministic.
    """
    match_left = [None] * n   # left u -> right v
    match_right = [None] * n  # right v -> left u
    for u in range(n):
        for v in adj[u]:
            if match_right[v] is None:
                match_left[u] = v
                match_right[v] = u
                break

    def try_augment(u, visited):
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if match_right[v] is None or try_augment(match_right[v], visited):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in range(n):
        if match_left[u] is None:
            try_augment(u, set())
    return match_left, match_right


@dataclass(frozen=True)
class WidthResult:
    width: int
    antichain: Antichain
    chains: ChainPartition


def width_dfa(order):
    """Width of the order with a maximum antichain and a minimum chain partition.

    Dilworth reduction: chains of the transitively closed order correspond to a
    path cover, found via maximum bipartite matching; the antichain is the
    complement of a minimum vertex cover (Koenig).  Both witnesses have the
    same cardinality by construction.
    """
    n = order.state_count
    closed = _transitive_closure(order)
    adj = [[v for v in range(n) if closed[u][v]] for u in range(n)]
    match_left, match_right = _max_matching(n, adj)

    # Alternating reachability from unmatched left vertices.
    visited_left = set()
    visited_right = set()
    queue = deque(u for u in range(n) if match_left[u] is None)
    visited_left.update(queue)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in visited_right:
                visited_right.add(v)
                w = match_right[v]
                if w is not None and w not in visited_left:
                    visited_left.add(w)
                    queue.append(w)
    # Minimum vertex cover: (L not reached) + (R reached); the antichain is
    # every state untouched by the cover on both sides.
    antichain = tuple(
        u for u in range(n) if u in visited_left and u not in visited_right
    )

    heads = [v for v in range(n) if match_right[v] is None]
    blocks = []
    for h in sorted(heads):
        chain = [h]
        while match_left[chain[-1]] is not None:
            chain.append(match_left[chain[-1]])
        blocks.append(chain)
    chains = ChainPartition.from_blocks(blocks, n)

    width = n - sum(1 for v in match_left if v is not None)
    if not (len(antichain) == width == chains.chain_count):
        raise InvariantViolationError(
            "duality mismatch: antichain %d, chains %d, width %d"
            % (len(antichain), chains.chain_count, width)
        )
    return WidthResult(width, Antichain(antichain), chains)


def hasse_cover_edges(order):
    """Covering pairs (u, v): u < v with nothing strictly between."""
    n = order.state_count
    m = order.strictly_below
    covers = []
    for u in range(n):
        for v in range(n):
            if m[u][v] and not any(m[u][w] and m[w][v] for w in range(n)):
                covers.append((u, v))
    return covers
