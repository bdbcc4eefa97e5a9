"""Chain-constrained minimization of DFAs (convex refinement of state classes).

A chain assignment maps every state to one chain of a co-lex chain partition;
it fixes, intensionally, a partition of the prefix set: a word belongs to the
block of its arrival state's chain.  Among all DFAs inducing the same prefix
partition there is a unique minimum one.  It is reached from the language
partition of the states (language-equivalent states identified) by splitting
until three properties hold simultaneously:

* consistency: a class stays inside one chain;
* convexity: within a chain, the word sets of its states tile the chain's
  block in co-lex order, so a class must occupy consecutive chain positions;
* right-invariance: one-character successors of a class land in one class.

Each split operator yields the coarsest refinement with its property, the
operators are monotone, and a joint fixpoint exists, so the iteration below
terminates at the coarsest simultaneous refinement; its quotient is the
minimum automaton for the fixed assignment.
"""

from dataclasses import dataclass

from .automaton import (
    Dfa,
    InputError,
    InvariantViolationError,
    StatePartition,
    _canonical_renumber,
    canonical_state_mapping,
    nerode_classes,
    require_trim,
)
from .colex import ChainPartition, is_chain_partition, state_order

# A candidate state equivalence is carried exactly like any state partition.
StateEquivalence = StatePartition


@dataclass(frozen=True)
class ChainAssignment:
    """state -> chain index in 0..p-1; the intensional prefix partition."""

    chain_of: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "chain_of", tuple(self.chain_of))
        if set(self.chain_of) != set(range(self.p)):
            raise InputError("chain ids must be exactly 0..p-1")

    @classmethod
    def from_blocks(cls, blocks, state_count):
        part = ChainPartition.from_blocks(blocks, state_count)
        return cls(part.chain_of, part.chain_count)

    @classmethod
    def from_chain_partition(cls, partition):
        return cls(partition.chain_of, partition.chain_count)

    def blocks(self):
        out = [[] for _ in range(self.p)]
        for q, c in enumerate(self.chain_of):
            out[c].append(q)
        return out

    def as_partition(self):
        return ChainPartition(self.chain_of, self.p)


def is_p_sortable(dfa, assignment):
    """Whether every chain of the assignment is a chain of the state order."""
    require_trim(dfa)
    if len(assignment.chain_of) != dfa.state_count:
        raise InputError("assignment covers %d states, automaton has %d"
                         % (len(assignment.chain_of), dfa.state_count))
    return is_chain_partition(state_order(dfa), assignment.as_partition())


def _first_incomparable_in_chain(order, assignment):
    for block in assignment.blocks():
        for i, u in enumerate(block):
            for v in block[i + 1:]:
                if not order.comparable(u, v):
                    return (u, v)
    return None


def cs_split(eq, assignment):
    """Coarsest refinement whose classes each stay inside one chain."""
    if len(eq.class_of) != len(assignment.chain_of):
        raise InputError("equivalence and assignment cover different state sets")
    labels = [(eq.class_of[q], assignment.chain_of[q]) for q in range(len(eq.class_of))]
    return StateEquivalence.from_labels(labels)


def _chain_positions(assignment, order):
    """Position of each state inside its chain, by the state order.

    Raises when some chain is not totally ordered.
    """
    position = [None] * len(assignment.chain_of)
    for block in assignment.blocks():
        ranked = sorted(block, key=lambda q: sum(1 for v in block if order.below(v, q)))
        for idx, q in enumerate(ranked):
            below = sum(1 for v in block if order.below(v, q))
            if below != idx:
                raise InvariantViolationError(
                    "chain %s is not totally ordered by the state order" % (block,)
                )
            position[q] = idx
    return position


def cv_split(eq, assignment, order):
    """Coarsest refinement whose classes are runs of consecutive chain positions.

    Requires a consistent equivalence over totally ordered chains; a class
    with a gap splits into its maximal consecutive runs.
    """
    position = _chain_positions(assignment, order)
    members = [[] for _ in range(eq.class_count)]
    for q, c in enumerate(eq.class_of):
        members[c].append(q)
    labels = [None] * len(eq.class_of)
    for c, block in enumerate(members):
        chains = {assignment.chain_of[q] for q in block}
        if len(chains) > 1:
            raise InputError("equivalence is not chain-consistent on class %d" % c)
        block.sort(key=lambda q: position[q])
        run = 0
        labels[block[0]] = (c, run)
        for prev, q in zip(block, block[1:]):
            if position[q] != position[prev] + 1:
                run += 1
            labels[q] = (c, run)
    return StateEquivalence.from_labels(labels)


def r_split(eq, dfa):
    """Coarsest right-invariant refinement: iterate successor-class signatures.

    Assumes transition definedness agrees inside every class, which holds for
    any refinement of the language partition of a trim automaton.
    """
    part = eq
    while True:
        sigs = []
        for q in range(dfa.state_count):
            row = []
            for c in dfa.alphabet:
                t = dfa.step(q, c)
                row.append(None if t is None else part.class_of[t])
            sigs.append((part.class_of[q], tuple(row)))
        for block_id in range(part.class_count):
            defined = {
                tuple(x is not None for x in sigs[q][1])
                for q in range(dfa.state_count)
                if part.class_of[q] == block_id
            }
            if len(defined) > 1:
                raise InvariantViolationError(
                    "transition definedness differs inside class %d" % block_id
                )
        refined = StateEquivalence.from_labels(sigs)
        if refined.class_count == part.class_count:
            return part
        part = refined


def minimize_p_sortable(dfa, assignment):
    """Minimum DFA among those inducing the assignment's prefix partition.

    Starts from the language partition of the states, forces chain
    consistency once, then alternates right-invariant and convex splits to a
    fixpoint.  Returns the quotient (canonically renumbered) with the
    projected chain assignment.
    """
    require_trim(dfa)
    order = state_order(dfa)
    if len(assignment.chain_of) != dfa.state_count:
        raise InputError("assignment covers %d states, automaton has %d"
                         % (len(assignment.chain_of), dfa.state_count))
    bad = _first_incomparable_in_chain(order, assignment)
    if bad is not None:
        raise InputError(
            "assignment is not a chain partition: states %d and %d share a chain "
            "but are incomparable" % bad
        )

    eq = cs_split(nerode_classes(dfa), assignment)
    while True:
        refined = cv_split(r_split(eq, dfa), assignment, order)
        if refined.class_count == eq.class_count:
            eq = refined
            break
        eq = refined

    delta = {}
    for q in range(dfa.state_count):
        c = eq.class_of[q]
        for ch, t in dfa.out_edges(q):
            target = eq.class_of[t]
            if delta.setdefault((c, ch), target) != target:
                raise InvariantViolationError(
                    "quotient transitions disagree on class %d, character %r" % (c, ch)
                )
    finals = frozenset(eq.class_of[q] for q in dfa.finals)
    quotient = Dfa(dfa.alphabet, eq.class_count, eq.class_of[dfa.initial], finals, delta)
    chain_of_class = [None] * eq.class_count
    for q in range(dfa.state_count):
        chain_of_class[eq.class_of[q]] = assignment.chain_of[q]

    renumbered = _canonical_renumber(quotient)
    mapping = canonical_state_mapping(quotient)
    new_chain_of = [None] * eq.class_count
    for old, new in mapping.items():
        new_chain_of[new] = chain_of_class[old]
    # Every chain keeps at least one class (classes never cross chains).
    projected = ChainAssignment(tuple(new_chain_of), assignment.p)
    return renumbered, projected
