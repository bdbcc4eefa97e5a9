"""Brute-force reference implementations used as test oracles.

Everything here is deliberately naive: word enumeration, subset scans, direct
definition chasing.  The only shared vocabulary with the main modules is the
automaton type and raw co-lex comparison, so agreement between the two sides
is meaningful evidence.
"""

import random

from .automaton import Dfa, InputError, colex_key, require_trim, trim
from .colex import StateOrder
from .langwidth import (
    GAMMA_BELOW_MUS,
    MUS_BELOW_GAMMA,
    WitnessCertificate,
    verify_certificate,
)

# Refuse enumerations that would produce more readable words than this.
ENUMERATION_GUARD = 2_000_000


class EnumerationBudgetExceeded(InputError):
    """The automaton has too many readable words for exhaustive enumeration."""


def bounded_words(dfa, max_len, guard=ENUMERATION_GUARD):
    """Every readable word up to max_len with its arrival state, sorted co-lex."""
    require_trim(dfa)
    out = [("", dfa.initial)]
    frontier = [("", dfa.initial)]
    for _ in range(max_len):
        nxt = []
        for word, q in frontier:
            for c, t in dfa.out_edges(q):
                nxt.append((word + c, t))
        out.extend(nxt)
        if len(out) > guard:
            raise EnumerationBudgetExceeded(
                "more than %d readable words up to length %d" % (guard, max_len)
            )
        frontier = nxt
        if not frontier:
            break
    out.sort(key=lambda e: colex_key(e[0], dfa.alphabet))
    return out


def _extreme_positions(dfa, words):
    """First and last position of every state in the sorted enumeration.

    The enumeration is strictly co-lex sorted, so position order is word
    order: the first occurrence of a state is its smallest bounded word, the
    last its largest.
    """
    n = dfa.state_count
    first = [None] * n
    last = [None] * n
    for i, (_w, q) in enumerate(words):
        if first[q] is None:
            first[q] = i
        last[q] = i
    return first, last


def brute_leq(dfa, u, v, max_len, guard=ENUMERATION_GUARD, words=None):
    """Whether some word into u of length <= max_len is co-lex <= some word into v.

    ``words`` may carry a precomputed ``bounded_words(dfa, max_len)`` result
    when many pairs are queried against one enumeration.
    """
    if words is None:
        words = bounded_words(dfa, max_len, guard)
    first, last = _extreme_positions(dfa, words)
    return first[u] is not None and last[v] is not None and first[u] <= last[v]


def brute_order(dfa, max_len, guard=ENUMERATION_GUARD, words=None):
    """State order computed from word enumeration alone.

    Exact once max_len reaches the square of the state count.
    """
    if words is None:
        words = bounded_words(dfa, max_len, guard)
    n = dfa.state_count
    first, last = _extreme_positions(dfa, words)
    below = [
        [
            u != v
            and first[u] is not None
            and first[v] is not None
            and first[v] > last[u]  # no word into v sits at or below one into u
            for v in range(n)
        ]
        for u in range(n)
    ]
    return StateOrder(n, tuple(tuple(row) for row in below))


def brute_width(order, max_states=20):
    """Maximum antichain size by exhaustive extension over state subsets."""
    n = order.state_count
    if n > max_states:
        raise InputError("subset scan refused for %d states (max %d)" % (n, max_states))
    best = 0

    def extend(start, chosen):
        nonlocal best
        best = max(best, len(chosen))
        for q in range(start, n):
            if all(not order.comparable(q, c) for c in chosen):
                chosen.append(q)
                extend(q + 1, chosen)
                chosen.pop()

    extend(0, [])
    return best


def brute_witness_k2(min_dfa, mu_len, gamma_len, guard=ENUMERATION_GUARD):
    """First two-state width certificate found by exhaustive word scanning.

    Scans state pairs in ascending order; for each pair, cycle labels by
    (length, co-lex) and then the smallest qualifying approach words, trying
    the below direction before the above one.  Every candidate goes through
    the real verifier before being returned.
    """
    require_trim(min_dfa)
    alphabet = min_dfa.alphabet
    n = min_dfa.state_count
    max_len = max(mu_len, gamma_len)

    # Approach candidates are the words readable from the initial state;
    # cycle labels need not be readable from the initial state, so candidate
    # labels come from a separate scan over all words.
    words = bounded_words(min_dfa, mu_len, guard)
    cycle_maps = _all_word_maps(min_dfa, gamma_len, guard)

    def by_key(w):
        return (len(w), colex_key(w, alphabet))

    mus_into = {q: [] for q in range(n)}
    for w, q in words:
        mus_into[q].append(w)
    for q in mus_into:
        mus_into[q].sort(key=by_key)

    gammas = sorted(cycle_maps, key=by_key)

    for u in range(n):
        for v in range(u + 1, n):
            for gamma in gammas:
                if not gamma:
                    continue
                smap = cycle_maps[gamma]
                if smap[u] != u or smap[v] != v:
                    continue
                gkey = colex_key(gamma, alphabet)
                for direction in (MUS_BELOW_GAMMA, GAMMA_BELOW_MUS):
                    pick = []
                    for q in (u, v):
                        found = None
                        for mu in mus_into[q]:
                            if len(mu) >= len(gamma):
                                continue
                            mkey = colex_key(mu, alphabet)
                            if direction == MUS_BELOW_GAMMA and mkey < gkey:
                                found = mu
                                break
                            if direction == GAMMA_BELOW_MUS and gkey < mkey:
                                found = mu
                                break
                        if found is None:
                            break
                        pick.append(found)
                    if len(pick) == 2:
                        cert = WitnessCertificate(
                            k=2, states=(u, v), mus=tuple(pick),
                            gamma=gamma, direction=direction,
                        )
                        if verify_certificate(min_dfa, cert):
                            return cert
    return None


def _all_word_maps(dfa, max_len, guard):
    """word -> induced partial state map, for every word over the alphabet.

    Pruned to maps that still fix at least one state's future (maps that died
    everywhere cannot label a cycle).
    """
    maps = {"": tuple(range(dfa.state_count))}
    frontier = {"": tuple(range(dfa.state_count))}
    for _ in range(max_len):
        nxt = {}
        for word, smap in frontier.items():
            for c in dfa.alphabet:
                new_map = tuple(
                    None if s is None else dfa.step(s, c) for s in smap
                )
                if any(t is not None for t in new_map):
                    nxt[word + c] = new_map
        maps.update(nxt)
        if len(maps) > guard:
            raise EnumerationBudgetExceeded(
                "more than %d word maps up to length %d" % (guard, max_len)
            )
        frontier = nxt
        if not frontier:
            break
    return maps


def random_trim_dfa(seed, state_count, alphabet_size, edge_prob=0.5, final_prob=0.5):
    """Seeded random trim DFA, or None when the draw has an empty language."""
    rng = random.Random(seed)
    symbols = tuple("abcdefghijklmnopqrstuvwxyz"[:alphabet_size])
    from .automaton import Alphabet

    alphabet = Alphabet(symbols)
    delta = {}
    for q in range(state_count):
        for c in symbols:
            if rng.random() < edge_prob:
                delta[(q, c)] = rng.randrange(state_count)
    finals = frozenset(q for q in range(state_count) if rng.random() < final_prob)
    if not finals:
        return None
    try:
        return trim(Dfa(alphabet, state_count, 0, finals, delta))
    except InputError:
        return None


def random_trim_dfas(count, *, max_states, alphabet_size, seed, edge_prob=0.5,
                     final_prob=0.5, accept=None):
    """Deterministic stream of random trim DFAs, rejection-sampled.

    ``accept`` optionally filters the drawn automata (e.g. to keep only
    minimum DFAs of a bounded size).
    """
    out = []
    draw = 0
    while len(out) < count:
        draw += 1
        if draw > 200 * count:
            raise InputError("rejection sampling did not converge")
        n = 1 + (draw + seed) % max_states
        dfa = random_trim_dfa(seed * 1_000_003 + draw, n, alphabet_size,
                              edge_prob, final_prob)
        if dfa is None:
            continue
        if accept is not None:
            dfa = accept(dfa)
            if dfa is None:
                continue
        out.append(dfa)
    return out
