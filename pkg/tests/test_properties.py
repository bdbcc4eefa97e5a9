"""Property tests for order laws that hold on arbitrary inputs."""

from hypothesis import given, settings
from hypothesis import strategies as st

from colexwidth import Alphabet, colex_compare, colex_key, state_order, width_dfa
from colexwidth.oracle import brute_width, random_trim_dfa

ABC = Alphabet(tuple("abc"))
words = st.text(alphabet="abc", max_size=10)


@given(words, words)
def test_colex_compare_matches_reversed_lexicographic(u, v):
    want = (u[::-1] > v[::-1]) - (u[::-1] < v[::-1])
    assert colex_compare(u, v, ABC) == want


@given(words, words, words)
def test_colex_key_is_a_total_order(u, v, w):
    ku, kv, kw = (colex_key(x, ABC) for x in (u, v, w))
    assert (ku == kv) == (u == v)
    assert ku <= kv or kv <= ku
    if ku <= kv <= kw:
        assert ku <= kw


@given(words)
def test_empty_word_is_minimum(w):
    assert colex_key("", ABC) <= colex_key(w, ABC)


@given(words, words, st.sampled_from("abc"))
def test_colex_order_respects_right_extension(u, v, c):
    if colex_key(u, ABC) < colex_key(v, ABC):
        assert colex_key(u + c, ABC) < colex_key(v + c, ABC)


@settings(deadline=None)
@given(st.integers(min_value=0, max_value=10**6),
       st.integers(min_value=1, max_value=6))
def test_state_order_is_a_strict_partial_order(seed, n):
    dfa = random_trim_dfa(seed, n, 3)
    if dfa is None:
        return
    order = state_order(dfa)
    order.check_valid()
    result = width_dfa(order)
    assert result.width == brute_width(order)
    result.antichain.check(order)
