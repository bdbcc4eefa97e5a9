"""Shared machinery for the seeded random suites."""

from colexwidth import minimize, nerode_classes
from colexwidth.oracle import (
    EnumerationBudgetExceeded,
    bounded_words,
    random_trim_dfa,
)

WORD_GUARD = 500_000


def enumerable_trim_dfas(count, *, max_states, alphabet_size, seed,
                         edge_prob=0.5, final_prob=0.5):
    """count seeded random trim DFAs whose bounded word sets fit the guard.

    Each automaton comes paired with its word enumeration up to |Q|^2, the
    bound at which the enumeration decides the existential comparison.
    """
    out = []
    draw = 0
    while len(out) < count:
        draw += 1
        if draw > 500 * count:
            raise RuntimeError("rejection sampling did not converge")
        n = 1 + (draw + seed) % max_states
        dfa = random_trim_dfa(seed * 1_000_003 + draw, n, alphabet_size,
                              edge_prob, final_prob)
        if dfa is None:
            continue
        try:
            words = bounded_words(dfa, dfa.state_count**2, guard=WORD_GUARD)
        except EnumerationBudgetExceeded:
            continue
        out.append((dfa, words))
    return out


def random_minimum_dfas(count, *, max_states, alphabet_size, seed,
                        edge_prob=0.6, final_prob=0.5):
    """count seeded random minimum DFAs with at most max_states states."""
    out = []
    draw = 0
    while len(out) < count:
        draw += 1
        if draw > 500 * count:
            raise RuntimeError("rejection sampling did not converge")
        n = 1 + (draw + seed) % max_states
        dfa = random_trim_dfa(seed * 2_000_003 + draw, n, alphabet_size,
                              edge_prob, final_prob)
        if dfa is None:
            continue
        m = minimize(dfa)
        if m.state_count <= max_states:
            out.append(m)
    return out


def adjacent_merge_violations(dfa, eq, assignment, order):
    """Why merging two chain-adjacent classes of a quotient would be illegal.

    Returns, for every chain-adjacent pair of distinct classes, the list of
    violated requirements among 'nerode' (members not language-equivalent)
    and 'right-invariance' (successors split under the merged partition).
    Chain consistency and convexity cannot break for adjacent merges.
    """
    nerode = nerode_classes(dfa)
    results = {}
    for chain in range(assignment.p):
        members = [q for q in range(dfa.state_count) if assignment.chain_of[q] == chain]
        members.sort(key=lambda q: sum(1 for v in members if order.below(v, q)))
        for lo, hi in zip(members, members[1:]):
            if eq.class_of[lo] == eq.class_of[hi]:
                continue
            violated = []
            merged = list(eq.class_of)
            a, b = eq.class_of[lo], eq.class_of[hi]
            merged = [a if c == b else c for c in merged]
            if nerode.class_of[lo] != nerode.class_of[hi]:
                violated.append("nerode")
            if not _right_invariant(dfa, merged):
                violated.append("right-invariance")
            results[(lo, hi)] = violated
    return results


def _right_invariant(dfa, class_of):
    blocks = {}
    for q, c in enumerate(class_of):
        blocks.setdefault(c, []).append(q)
    for block in blocks.values():
        for ch in dfa.alphabet:
            targets = set()
            defined = set()
            for q in block:
                t = dfa.step(q, ch)
                defined.add(t is not None)
                if t is not None:
                    targets.add(class_of[t])
            if len(defined) > 1 or len(targets) > 1:
                return False
    return True
