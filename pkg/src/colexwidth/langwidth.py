"""Deterministic width of a regular language, with checkable witness certificates.

The language width is decided on the minimum DFA.  ``width(L) >= k`` holds
exactly when k pairwise distinct states carry a common cycle label ``gamma``
and approach words ``mu_1 .. mu_k`` that all sit strictly on the same side of
``gamma`` in co-lex order, with every ``|mu_j| < |gamma|``.  Such witnesses, if
any exist, exist within an explicit length bound, so the search below is a
decision procedure:

* a forward table of co-lex extremal path labels from the initial state, one
  entry per (state, path node count);
* per candidate state tuple, a forward table of co-lex extremal common cycle
  labels, one entry per (parallel state tuple, node count);
* a sweep over cycle lengths comparing the running extremal approach word of
  every tuple state against the extremal cycle label.

Both sides of the comparison are searched: smallest approach words against
largest cycle labels, and the mirror image.  Label strings are kept as
per-level integer ranks (appending a character compares by the character
first, then by the shorter label's rank) and only materialized when a
certificate is emitted or a cross-length comparison is needed.
"""

import math
from dataclasses import dataclass
from itertools import combinations

from .automaton import (
    ColexWidthError,
    InputError,
    colex_key,
    cyclic_states,
    is_minimal,
    minimize,
    require_trim,
)
from .colex import state_order, width_dfa

MUS_BELOW_GAMMA = "mus_below_gamma"
GAMMA_BELOW_MUS = "gamma_below_mus"

#: Largest exactness bound the search is willing to walk (fits a signed 64-bit
#: value; anything beyond is hopeless to explore and must be capped).
EXPLORABLE_LIMIT = 2**63 - 1


class BoundOverflowError(ColexWidthError):
    """The exact search bound exceeds the explorable limit.

    ``value`` carries the partial bound value, saturated at the limit; set an
    explicit cap to run the search as a semi-decision.
    """

    def __init__(self, message, value):
        super().__init__(message)
        self.value = value


def bound_n(q_count, k):
    """Length bound for exact witness search: 2k-3 + q^k + sum(q^t, t=1..2k-1).

    Approach words strictly shorter than the cycle label and the cycle label
    at most this long suffice to find a witness whenever one exists.
    """
    if q_count < 1:
        raise InputError("q_count must be >= 1")
    if k < 2:
        raise InputError("k must be >= 2")
    # Cheap magnitude guard before touching giant integers.
    if q_count > 1 and (2 * k - 1) * math.log2(q_count) > 80:
        raise BoundOverflowError(
            "bound for |Q|=%d, k=%d exceeds the explorable limit" % (q_count, k),
            EXPLORABLE_LIMIT,
        )
    total = 2 * k - 3 + q_count**k + sum(q_count**t for t in range(1, 2 * k))
    if total > EXPLORABLE_LIMIT:
        raise BoundOverflowError(
            "bound %d for |Q|=%d, k=%d exceeds the explorable limit" % (total, q_count, k),
            EXPLORABLE_LIMIT,
        )
    return total


@dataclass(frozen=True)
class DpBounds:
    """Exploration budget for the witness search.

    ``n_exact`` is the string-length bound that makes the search a decision
    procedure (None when it overflowed); ``cap`` optionally overrides it with
    a smaller budget, trading exactness for feasibility.
    """

    n_exact: int | None
    cap: int | None = None

    def __post_init__(self):
        if self.cap is not None and self.cap < 2:
            raise InputError("cap must be >= 2")
        if self.n_exact is None and self.cap is None:
            raise InputError("unbounded search: exact bound unavailable and no cap given")

    @classmethod
    def for_dfa(cls, q_count, k, cap=None):
        try:
            exact = bound_n(q_count, k)
        except BoundOverflowError:
            if cap is None:
                raise
            exact = None
        return cls(exact, cap)

    @property
    def effective(self):
        """String-length budget actually explored."""
        if self.n_exact is None:
            return self.cap
        if self.cap is None:
            return self.n_exact
        return min(self.cap, self.n_exact)

    @property
    def is_exact(self):
        return self.n_exact is not None and self.effective >= self.n_exact


@dataclass(frozen=True)
class WitnessCertificate:
    """Self-contained proof that the language width is at least k.

    ``mus[j]`` labels a path from the initial state to ``states[j]``, ``gamma``
    labels a cycle at every listed state, every comparison mandated by
    ``direction`` holds strictly, and every ``|mus[j]| < |gamma|``.
    """

    k: int
    states: tuple
    mus: tuple
    gamma: str
    direction: str

    def as_dict(self):
        return {
            "k": self.k,
            "states": list(self.states),
            "mus": list(self.mus),
            "gamma": self.gamma,
            "direction": self.direction,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                k=int(data["k"]),
                states=tuple(int(q) for q in data["states"]),
                mus=tuple(str(m) for m in data["mus"]),
                gamma=str(data["gamma"]),
                direction=str(data["direction"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("malformed certificate: %s" % exc) from None


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reasons: tuple

    def __bool__(self):
        return self.ok


def verify_certificate(dfa, cert):
    """Check every certificate condition directly on the automaton.

    Never raises: any violation (including words over foreign characters)
    is reported as a reason string of the form ``code: detail``.
    """
    reasons = []
    if cert.direction not in (MUS_BELOW_GAMMA, GAMMA_BELOW_MUS):
        reasons.append("bad-direction: %r" % cert.direction)
    if cert.k < 2:
        reasons.append("k-too-small: k=%d" % cert.k)
    if len(cert.states) != cert.k or len(cert.mus) != cert.k:
        reasons.append("arity-mismatch: k=%d, %d states, %d mus"
                       % (cert.k, len(cert.states), len(cert.mus)))
    if len(set(cert.states)) != len(cert.states):
        reasons.append("states-not-distinct: %s" % (cert.states,))
    for q in cert.states:
        if not (0 <= q < dfa.state_count):
            reasons.append("state-out-of-range: %d" % q)
    for word in (*cert.mus, cert.gamma):
        bad = [c for c in word if c not in dfa.alphabet]
        if bad:
            reasons.append("foreign-character: %r in %r" % (bad[0], word))
    if reasons:
        return CertificateCheck(False, tuple(reasons))

    if not cert.gamma:
        reasons.append("gamma-empty: a cycle label must be nonempty")
    for j, (q, mu) in enumerate(zip(cert.states, cert.mus)):
        if dfa.run(mu) != q:
            reasons.append("mu-path-mismatch: mus[%d]=%r does not reach state %d" % (j, mu, q))
        if dfa.run(cert.gamma, start=q) != q:
            reasons.append("gamma-not-cycling: no %r-cycle at state %d" % (cert.gamma, q))
        if len(mu) >= len(cert.gamma):
            reasons.append("mu-not-shorter: |mus[%d]|=%d >= |gamma|=%d"
                           % (j, len(mu), len(cert.gamma)))
        gkey = colex_key(cert.gamma, dfa.alphabet)
        mkey = colex_key(mu, dfa.alphabet)
        if cert.direction == MUS_BELOW_GAMMA and not mkey < gkey:
            reasons.append("order-violated: mus[%d]=%r is not below gamma" % (j, mu))
        if cert.direction == GAMMA_BELOW_MUS and not gkey < mkey:
            reasons.append("order-violated: gamma is not below mus[%d]=%r" % (j, mu))
    return CertificateCheck(not reasons, tuple(reasons))


class _LevelDp:
    """Forward DP over label extensions, one level per path node count.

    Levels map a key (state, or tuple of states) to ``(char_rank, pred_key,
    rank)`` where rank is the dense co-lex rank of the extremal label among
    the level's entries.  Extending a label by a character compares by the
    character first and the previous rank second, which is exactly co-lex
    order on equal-length strings, so ranks stay label-faithful level by
    level.  Ties on the label value are broken toward the smallest
    predecessor key.
    """

    def __init__(self, expand, start_key, pick_largest):
        self.expand = expand
        self.pick_largest = pick_largest
        self.levels = [None, {start_key: (None, None, 0)}]
        self.cells = 1

    def grow(self):
        current = self.levels[-1]
        best = {}
        for key in sorted(current):
            rank = current[key][2]
            for char_rank, nxt in self.expand(key):
                cand = (char_rank, rank)
                prev = best.get(nxt)
                if prev is None:
                    best[nxt] = (char_rank, rank, key)
                    continue
                pv = (prev[0], prev[1])
                if cand == pv:
                    if key < prev[2]:
                        best[nxt] = (char_rank, rank, key)
                elif (cand > pv) == self.pick_largest:
                    best[nxt] = (char_rank, rank, key)
        values = sorted({(c, r) for (c, r, _p) in best.values()})
        vrank = {v: i for i, v in enumerate(values)}
        level = {nxt: (c, p, vrank[(c, r)]) for nxt, (c, r, p) in best.items()}
        self.levels.append(level)
        self.cells += len(level)
        return level

    def entry(self, key, node_len):
        if not 1 <= node_len < len(self.levels):
            return None
        return self.levels[node_len].get(key)

    def label(self, key, node_len, alphabet):
        """Materialize the extremal label of length node_len - 1, or None."""
        if self.entry(key, node_len) is None:
            return None
        chars = []
        while node_len > 1:
            char_rank, pred, _ = self.levels[node_len][key]
            chars.append(alphabet.symbols[char_rank])
            key = pred
            node_len -= 1
        return "".join(reversed(chars))


def _path_dp(dfa, direction_largest):
    out_edges = [
        [(dfa.alphabet.rank(c), t) for c, t in dfa.out_edges(q)]
        for q in range(dfa.state_count)
    ]
    return _LevelDp(lambda q: out_edges[q], dfa.initial, direction_largest)


def _cycle_dp(dfa, start_tuple, direction_largest):
    symbols = dfa.alphabet.symbols
    k = len(start_tuple)

    def expand(tup):
        for char_rank in range(len(symbols)):
            c = symbols[char_rank]
            nxt = []
            for q in tup:
                t = dfa.step(q, c)
                if t is None:
                    break
                nxt.append(t)
            else:
                # Coordinates that ever collide stay collided and can never
                # return to the all-distinct start tuple; drop them now.
                if len(set(nxt)) == k:
                    yield char_rank, tuple(nxt)

    return _LevelDp(expand, tuple(start_tuple), direction_largest)


class PathTable:
    """Co-lex extremal path labels from the initial state, by node count."""

    def __init__(self, dfa, n, direction):
        if direction not in ("smallest", "largest"):
            raise InputError("direction must be 'smallest' or 'largest'")
        if n < 2:
            raise InputError("n must be >= 2")
        require_trim(dfa)
        self.dfa = dfa
        self.direction = direction
        self._dp = _path_dp(dfa, direction == "largest")
        while len(self._dp.levels) <= n:
            self._dp.grow()

    def pred(self, state, node_len):
        e = self._dp.entry(state, node_len)
        return None if e is None else e[1]

    def rank(self, state, node_len):
        e = self._dp.entry(state, node_len)
        return None if e is None else e[2]

    def label(self, state, node_len):
        return self._dp.label(state, node_len, self.dfa.alphabet)


class CycleTable:
    """Extremal common labels of parallel paths out of a start tuple."""

    def __init__(self, dfa, start_tuple, n, direction):
        if direction not in ("smallest", "largest"):
            raise InputError("direction must be 'smallest' or 'largest'")
        if n < 2:
            raise InputError("n must be >= 2")
        require_trim(dfa)
        start_tuple = tuple(start_tuple)
        if len(set(start_tuple)) != len(start_tuple):
            raise InputError("start tuple states must be pairwise distinct")
        self.dfa = dfa
        self.start_tuple = start_tuple
        self.direction = direction
        self._dp = _cycle_dp(dfa, start_tuple, direction == "largest")
        while len(self._dp.levels) <= n:
            if not self._dp.grow():
                break

    def cell(self, tup, node_len):
        return self._dp.entry(tuple(tup), node_len)

    def gamma_label(self, node_len):
        """Extremal label of length node_len - 1 cycling at the whole start
        tuple, or None."""
        if node_len < 2:
            return None
        return self._dp.label(self.start_tuple, node_len, self.dfa.alphabet)


def extremal_paths(dfa, n, direction):
    """Table of co-lex smallest/largest path labels for node counts 2..n."""
    return PathTable(dfa, n, direction)


def extremal_cycles(dfa, start_tuple, n, direction):
    """Table of co-lex smallest/largest common cycle labels for a state tuple."""
    return CycleTable(dfa, start_tuple, n, direction)


class _DirectionScan:
    """One side of the comparison for a fixed tuple.

    MUS_BELOW_GAMMA pairs smallest approach words with largest cycle labels,
    GAMMA_BELOW_MUS the mirror.  ``advance`` moves to the next cycle node
    count and reports a certificate as soon as the running extremal approach
    word of every tuple state sits strictly on the right side of the extremal
    cycle label.
    """

    def __init__(self, dfa, tup, direction):
        self.dfa = dfa
        self.tup = tup
        self.direction = direction
        self.below = direction == MUS_BELOW_GAMMA
        self.paths = _path_dp(dfa, direction_largest=not self.below)
        self.cycles = _cycle_dp(dfa, tup, direction_largest=self.below)
        self.dead = False
        # Running extremum per tuple state over all approach node counts
        # strictly below the current cycle level; the empty word approaches
        # the initial state (node count 1).
        self.best_mu = {q: None for q in tup}
        self.best_key = {q: None for q in tup}
        if dfa.initial in self.best_mu:
            self.best_mu[dfa.initial] = ""
            self.best_key[dfa.initial] = ()

    def advance(self, ell):
        """Process cycle node count ell; return a certificate or None."""
        if self.dead:
            return None
        alphabet = self.dfa.alphabet
        if ell >= 3:
            if len(self.paths.levels) <= ell - 1:
                self.paths.grow()
            for q in self.tup:
                label = self.paths.label(q, ell - 1, alphabet)
                if label is None:
                    continue
                key = colex_key(label, alphabet)
                if self.best_key[q] is None or (key < self.best_key[q]) == self.below:
                    self.best_mu[q], self.best_key[q] = label, key
        level = self.cycles.grow()
        if not level:
            self.dead = True
            return None
        if self.tup not in level:
            return None
        gamma = self.cycles.label(self.tup, ell, alphabet)
        gkey = colex_key(gamma, alphabet)
        if all(
            self.best_key[q] is not None and (self.best_key[q] < gkey) == self.below
            for q in self.tup
        ):
            return WitnessCertificate(
                k=len(self.tup),
                states=self.tup,
                mus=tuple(self.best_mu[q] for q in self.tup),
                gamma=gamma,
                direction=self.direction,
            )
        return None

    @property
    def cells(self):
        return self.paths.cells + self.cycles.cells


def _scan_tuple(dfa, tup, node_budget, stats):
    """Search one state tuple, both directions interleaved level by level.

    Deterministic: at each cycle node count the below direction is checked
    before the above one, so the certificate with the smallest cycle wins.
    """
    scans = [
        _DirectionScan(dfa, tup, MUS_BELOW_GAMMA),
        _DirectionScan(dfa, tup, GAMMA_BELOW_MUS),
    ]
    found = None
    for ell in range(2, node_budget + 1):
        for scan in scans:
            cert = scan.advance(ell)
            if cert is not None:
                found = cert
                break
        if found is not None or all(s.dead for s in scans):
            break
    stats["cells"] += sum(s.cells for s in scans)
    return found


def _candidate_tuples(dfa, k):
    """Sorted k-subsets of states that lie on a cycle; others cannot carry a
    nonempty common cycle label and are pruned outright."""
    cyclic = sorted(cyclic_states(dfa))
    return list(combinations(cyclic, k))


def _ensure_minimal(dfa):
    require_trim(dfa)
    if is_minimal(dfa):
        return dfa
    return minimize(dfa)


def width_at_least(min_dfa, k, bounds=None, stats_out=None):
    """Certificate that width(L) >= k, or None.

    The input is re-minimized if needed (certificate states then refer to the
    minimized automaton).  With exact bounds a None answer is a refutation;
    with a cap below the exact bound a None answer is inconclusive and the
    bounds' ``is_exact`` flag says so.
    """
    if k < 2:
        raise InputError("k must be >= 2")
    dfa = _ensure_minimal(min_dfa)
    stats = {"cells": 0, "tuples": 0, "pruned": 0, "budget": 0}
    try:
        if k > dfa.state_count:
            return None
        tuples = _candidate_tuples(dfa, k)
        stats["pruned"] = math.comb(dfa.state_count, k) - len(tuples)
        if not tuples:
            return None
        if bounds is None:
            bounds = DpBounds.for_dfa(dfa.state_count, k)
        node_budget = bounds.effective + 1
        stats["budget"] = node_budget
        for tup in tuples:
            stats["tuples"] += 1
            cert = _scan_tuple(dfa, tup, node_budget, stats)
            if cert is not None:
                check = verify_certificate(dfa, cert)
                if not check:
                    raise ColexWidthError(
                        "internal error: emitted certificate failed verification: %s"
                        % (check.reasons,)
                    )
                return cert
        return None
    finally:
        if stats_out is not None:
            stats_out.update(stats)


def entangled_tuple(min_dfa, states, bounds=None):
    """Certificate witnessing that exactly this state tuple is entangled.

    Only meaningful on a minimum DFA, where such a certificate proves
    width(L) >= k; non-minimal inputs are rejected rather than silently
    renumbered.
    """
    require_trim(min_dfa)
    if not is_minimal(min_dfa):
        raise InputError("entangled_tuple requires a minimum DFA; minimize first")
    tup = tuple(sorted(states))
    if len(tup) < 2:
        raise InputError("a tuple of at least two states is required")
    if len(set(tup)) != len(tup):
        raise InputError("tuple states must be pairwise distinct")
    for q in tup:
        if not (0 <= q < min_dfa.state_count):
            raise InputError("state %d out of range" % q)
    cyclic = cyclic_states(min_dfa)
    if any(q not in cyclic for q in tup):
        return None
    if bounds is None:
        bounds = DpBounds.for_dfa(min_dfa.state_count, len(tup))
    node_budget = bounds.effective + 1
    stats = {"cells": 0}
    cert = _scan_tuple(min_dfa, tup, node_budget, stats)
    if cert is not None:
        check = verify_certificate(min_dfa, cert)
        if not check:
            raise ColexWidthError(
                "internal error: emitted certificate failed verification: %s"
                % (check.reasons,)
            )
    return cert


@dataclass(frozen=True)
class LangWidthResult:
    width: int
    certificate: WitnessCertificate | None
    exact: bool
    min_dfa: object


def width_lang(dfa, cap=None, max_k=None):
    """Deterministic width of the accepted language.

    Minimizes the input, short-circuits with the minimum DFA's own width as
    an upper bound, then grows k by doubling and finishes with binary search.
    The result is exact unless some refutation ran under a cap (or the search
    was truncated by max_k); certificates always verify.
    """
    m = _ensure_minimal(dfa)
    dfa_width = width_dfa(state_order(m)).width
    upper = dfa_width
    truncated = False
    if max_k is not None:
        if max_k < 1:
            raise InputError("max_k must be >= 1")
        if max_k < upper:
            upper = max_k
            truncated = True
    if upper == 1:
        return LangWidthResult(1, None, not truncated, m)

    def query(k):
        bounds = DpBounds.for_dfa(m.state_count, k, cap=cap)
        cert = width_at_least(m, k, bounds=bounds)
        return cert, bounds.is_exact

    results = {}

    def probe(k):
        if k not in results:
            results[k] = query(k)
        return results[k]

    cert2, exact2 = probe(2)
    if cert2 is None:
        return LangWidthResult(1, None, exact2, m)

    # Doubling phase: find the first failing k (clamped by the upper bound).
    lo, lo_cert = 2, cert2
    hi = None
    k = 2
    while True:
        if k >= upper:
            cert, _ = probe(upper)
            if cert is not None:
                lo, lo_cert = upper, cert
                hi = upper + 1
            else:
                hi = upper
            break
        k = min(2 * k, upper)
        cert, _ = probe(k)
        if cert is not None:
            lo, lo_cert = k, cert
            if k == upper:
                hi = upper + 1
                break
        else:
            hi = k
            break

    while hi - lo > 1:
        mid = (lo + hi) // 2
        cert, _ = probe(mid)
        if cert is not None:
            lo, lo_cert = mid, cert
        else:
            hi = mid

    # Exactness: every refutation that bounded the answer must have been
    # exact; the upper bound from the automaton width is always exact.
    exact = all(
        exact_flag for k, (cert, exact_flag) in results.items() if cert is None and k <= hi
    )
    if truncated and lo == upper:
        exact = lo == dfa_width
    return LangWidthResult(lo, lo_cert, exact, m)
