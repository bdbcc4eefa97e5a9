import pytest

from colexwidth import (
    Alphabet,
    BoundOverflowError,
    Dfa,
    DpBounds,
    GAMMA_BELOW_MUS,
    InputError,
    MUS_BELOW_GAMMA,
    WitnessCertificate,
    bound_n,
    entangled_tuple,
    extremal_cycles,
    extremal_paths,
    minimize,
    state_order,
    verify_certificate,
    width_at_least,
    width_dfa,
    width_lang,
)


def test_bound_n_values():
    assert bound_n(6, 2) == 295
    assert bound_n(6, 3) == 9549
    assert bound_n(1, 2) == 5
    assert bound_n(4, 2) == 101


def test_bound_n_overflow_carries_value():
    with pytest.raises(BoundOverflowError) as exc:
        bound_n(10, 50)
    assert exc.value.value > 0
    with pytest.raises(InputError):
        bound_n(3, 1)


def test_dp_bounds():
    b = DpBounds.for_dfa(6, 2)
    assert b.effective == 295 and b.is_exact
    capped = DpBounds.for_dfa(6, 2, cap=40)
    assert capped.effective == 40 and not capped.is_exact
    generous = DpBounds.for_dfa(6, 2, cap=10_000)
    assert generous.effective == 295 and generous.is_exact
    with pytest.raises(InputError):
        DpBounds(None, None)
    with pytest.raises(BoundOverflowError):
        DpBounds.for_dfa(10, 50)
    assert DpBounds.for_dfa(10, 50, cap=100).effective == 100


def test_extremal_paths_on_fixture(a1):
    table = extremal_paths(a1, 3, "smallest")
    assert table.label(1, 2) == "a"
    assert table.label(3, 3) == "ad"  # beats "ee", "gd", "he"
    assert table.label(4, 2) == "e"   # min of the two approach characters
    assert table.pred(1, 2) == 0


def test_extremal_paths_largest_on_loop():
    loop = Dfa(Alphabet(("a",)), 1, 0, frozenset({0}), {(0, "a"): 0})
    table = extremal_paths(loop, 4, "largest")
    assert table.label(0, 4) == "aaa"


def test_extremal_cycles_on_fixture(a1):
    table = extremal_cycles(a1, (1, 2), 3, "largest")
    assert table.gamma_label(2) == "c"
    assert table.gamma_label(3) == "cc"

    dead = extremal_cycles(a1, (1, 2, 3), 6, "largest")
    assert all(dead.gamma_label(l) is None for l in range(2, 7))

    loop = Dfa(Alphabet(("a",)), 1, 0, frozenset({0}), {(0, "a"): 0})
    single = extremal_cycles(loop, (0,), 3, "smallest")
    assert single.gamma_label(2) == "a"


def _all_path_labels(dfa, node_len):
    """Every path label from the initial state, by arrival state; exponential."""
    frontier = {dfa.initial: [""]}
    for _ in range(node_len - 1):
        nxt = {}
        for q, labels in frontier.items():
            for c, t in dfa.out_edges(q):
                nxt.setdefault(t, []).extend(w + c for w in labels)
        frontier = nxt
    return frontier


def _common_cycle_labels(dfa, tup, node_len):
    from itertools import product

    out = []
    for chars in product(dfa.alphabet.symbols, repeat=node_len - 1):
        word = "".join(chars)
        if all(dfa.run(word, start=q) == q for q in tup):
            out.append(word)
    return out


def test_extremal_paths_match_exhaustive_enumeration():
    from colexwidth import colex_key
    from colexwidth.oracle import random_trim_dfas

    for dfa in random_trim_dfas(30, max_states=4, alphabet_size=3, seed=8642):
        smallest = extremal_paths(dfa, 5, "smallest")
        largest = extremal_paths(dfa, 5, "largest")
        for node_len in range(2, 6):
            everything = _all_path_labels(dfa, node_len)
            for q in range(dfa.state_count):
                labels = everything.get(q)
                if not labels:
                    assert smallest.label(q, node_len) is None
                    continue
                key = lambda w: colex_key(w, dfa.alphabet)
                assert smallest.label(q, node_len) == min(labels, key=key)
                assert largest.label(q, node_len) == max(labels, key=key)


def test_extremal_cycles_match_exhaustive_enumeration():
    from itertools import combinations

    from colexwidth import colex_key
    from colexwidth.oracle import random_trim_dfas

    for dfa in random_trim_dfas(30, max_states=4, alphabet_size=2, seed=8643):
        for tup in combinations(range(dfa.state_count), 2):
            table = extremal_cycles(dfa, tup, 5, "largest")
            small = extremal_cycles(dfa, tup, 5, "smallest")
            for node_len in range(2, 6):
                labels = _common_cycle_labels(dfa, tup, node_len)
                key = lambda w: colex_key(w, dfa.alphabet)
                if not labels:
                    assert table.gamma_label(node_len) is None
                else:
                    assert table.gamma_label(node_len) == max(labels, key=key)
                    assert small.gamma_label(node_len) == min(labels, key=key)


def test_width_at_least_fixture(a1):
    cert = width_at_least(a1, 2)
    assert cert is not None
    assert cert.states == (1, 2)
    assert cert.direction == MUS_BELOW_GAMMA
    assert cert.mus == ("a", "b")
    assert cert.gamma == "cc"
    assert verify_certificate(a1, cert).ok

    assert width_at_least(a1, 3) is None

    one = Dfa(Alphabet(("a",)), 1, 0, frozenset({0}), {(0, "a"): 0})
    assert width_at_least(one, 2) is None
    with pytest.raises(InputError):
        width_at_least(a1, 1)


def test_verify_certificate_rejections(a1):
    good = width_at_least(a1, 2)
    no_cycle = WitnessCertificate(2, good.states, good.mus, "a", good.direction)
    check = verify_certificate(a1, no_cycle)
    assert not check.ok
    assert any(r.startswith("gamma-not-cycling") for r in check.reasons)

    swapped = WitnessCertificate(2, good.states, ("b", "a"), good.gamma, good.direction)
    check = verify_certificate(a1, swapped)
    assert not check.ok
    assert any(r.startswith("mu-path-mismatch") for r in check.reasons)

    too_long = WitnessCertificate(2, good.states, ("ac", "bc"), "cc", good.direction)
    check = verify_certificate(a1, too_long)
    assert any(r.startswith("mu-not-shorter") for r in check.reasons)

    wrong_dir = WitnessCertificate(2, good.states, good.mus, good.gamma, GAMMA_BELOW_MUS)
    assert not verify_certificate(a1, wrong_dir).ok

    foreign = WitnessCertificate(2, good.states, ("z", "b"), good.gamma, good.direction)
    check = verify_certificate(a1, foreign)
    assert any(r.startswith("foreign-character") for r in check.reasons)


def test_certificate_round_trip(a1):
    cert = width_at_least(a1, 2)
    again = WitnessCertificate.from_dict(cert.as_dict())
    assert again == cert


def test_width_lang_fixtures(a1, a2, a3, acstar):
    for dfa in (a1, a2, a3):
        res = width_lang(dfa)
        assert res.width == 2
        assert res.exact
        assert res.certificate is not None
        assert verify_certificate(res.min_dfa, res.certificate).ok

    res = width_lang(acstar)
    assert res.width == 1 and res.exact and res.certificate is None


def test_width_lang_three_parallel_loops(threeloops):
    res = width_lang(threeloops)
    assert res.width == 3 and res.exact
    cert = res.certificate
    assert cert.k == 3
    assert cert.states == (1, 2, 3)
    assert cert.gamma == "aa" and cert.direction == GAMMA_BELOW_MUS
    assert width_at_least(threeloops, 4) is None
    assert entangled_tuple(threeloops, (1, 2, 3)) is not None
    assert entangled_tuple(threeloops, (1, 2, 4)) is None  # 4 has no cycle


def test_width_lang_invariant_under_minimization(a2):
    assert width_lang(a2).width == width_lang(minimize(a2)).width


def test_width_lang_upper_bounded_by_min_dfa_width(a1, a2, acstar):
    for dfa in (a1, a2, acstar):
        res = width_lang(dfa)
        assert res.width <= width_dfa(state_order(res.min_dfa)).width


def test_certificate_k_bounds_dfa_width(a1):
    # Any verified k-certificate forces at least k pairwise incomparable states.
    cert = width_at_least(a1, 2)
    assert width_dfa(state_order(a1)).width >= cert.k


def test_width_lang_capped_flags_inexact(a1):
    res = width_lang(a1, cap=3)
    assert res.width >= 2  # the witness is found even under a tiny cap
    capped = width_at_least(a1, 3, bounds=DpBounds.for_dfa(6, 3, cap=5))
    assert capped is None  # inconclusive but None within the cap


def test_width_lang_max_k_truncation(a1):
    res = width_lang(a1, max_k=1)
    assert res.width == 1
    assert not res.exact


def test_entangled_tuple_fixture(a1):
    assert entangled_tuple(a1, (1, 2)) is not None
    assert entangled_tuple(a1, (3, 4)) is None  # no cycles at 3 or 4
    assert entangled_tuple(a1, (1, 2, 3)) is None
    with pytest.raises(InputError):
        entangled_tuple(a1, (1,))
    with pytest.raises(InputError):
        entangled_tuple(a1, (1, 1))


def test_entangled_tuple_requires_minimal(acstar):
    with pytest.raises(InputError):
        entangled_tuple(acstar, (1, 2))


def test_gamma_below_mus_direction_is_reachable():
    # Two a-loop states approached by characters above the loop letter: the
    # cycle label sits below every approach word.  The extra b-edge keeps the
    # loop states language-distinct.
    alphabet = Alphabet(tuple("abc"))
    dfa = Dfa(
        alphabet,
        4,
        0,
        frozenset({0, 1, 2, 3}),
        {(0, "b"): 1, (0, "c"): 2, (1, "a"): 1, (1, "b"): 3, (2, "a"): 2},
    )
    assert minimize(dfa).state_count == 4
    cert = width_at_least(dfa, 2)
    assert cert is not None
    assert cert.states == (1, 2)
    assert cert.direction == GAMMA_BELOW_MUS
    assert cert.gamma == "aa"
    assert cert.mus == ("b", "c")
    assert verify_certificate(dfa, cert).ok
