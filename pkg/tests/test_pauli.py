import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dense_anticommute
from graphcheck.errors import SupportTooLarge
from graphcheck.pauli import (
    SinglePauli,
    SparsePauli,
    anticommutes,
    anticommutes_single,
    enumerate_on_support,
)

I, X, Y, Z = SinglePauli.I, SinglePauli.X, SinglePauli.Y, SinglePauli.Z

S_V = SparsePauli({0: X, 1: Z, 2: Z, 3: Z, 4: Z})


def test_single_examples():
    assert anticommutes_single(X, Z)
    assert not anticommutes_single(X, X)
    assert not anticommutes_single(I, Y)


@pytest.mark.parametrize("a", list(SinglePauli))
@pytest.mark.parametrize("b", list(SinglePauli))
def test_single_against_matrices(a, b):
    assert anticommutes_single(a, b) == dense_anticommute(a.name, b.name)
    assert anticommutes_single(a, b) == (a is not I and b is not I and a is not b)


def test_symplectic_bits():
    assert (X.x, X.z) == (1, 0)
    assert (Z.x, Z.z) == (0, 1)
    assert (Y.x, Y.z) == (1, 1)
    assert (I.x, I.z) == (0, 0)


def test_anticommutes_examples():
    assert anticommutes(SparsePauli({0: Z}), S_V)
    assert not anticommutes(SparsePauli({1: Z}), S_V)
    e = SparsePauli({0: Y, 1: X})
    assert not anticommutes(e, S_V)
    assert dense_anticommute("YXIII", "XZZZZ") is False


def test_identity_entries_dropped():
    e = SparsePauli({3: "X", 5: "I", 7: Z})
    assert e.weight == 2
    assert e.support == frozenset({3, 7})
    assert e[5] is I
    assert 5 not in e


def test_text_form():
    e = SparsePauli({9: Z, 3: X, 7: Z})
    assert e.to_text() == "X3 Z7 Z9"
    assert SparsePauli.from_text("X3 Z7 Z9") == e
    assert SparsePauli.from_text("") == SparsePauli()
    assert str(SparsePauli()) == "I"
    with pytest.raises(ValueError):
        SparsePauli.from_text("Q3")
    with pytest.raises(ValueError):
        SparsePauli.from_text("X3 Z3")


def test_product_ignores_phase():
    a = SparsePauli({0: X, 1: Y})
    b = SparsePauli({0: Z, 2: X})
    assert a * b == SparsePauli({0: Y, 1: Y, 2: X})
    assert a * a == SparsePauli()


paulis = st.dictionaries(st.integers(0, 6), st.sampled_from([X, Y, Z]), max_size=7).map(SparsePauli)


def _letters(e: SparsePauli, n: int) -> str:
    return "".join(e[v].name for v in range(n))


@given(paulis, paulis)
def test_symmetric_and_matches_matrices(e, s):
    assert anticommutes(e, s) == anticommutes(s, e)
    if max(e.weight, s.weight) and max([*e.support, *s.support]) < 5:
        assert anticommutes(e, s) == dense_anticommute(_letters(e, 5), _letters(s, 5))


@given(paulis, paulis)
def test_disjoint_supports_commute(e, s):
    shifted = SparsePauli({v + 100: op for v, op in s.items()})
    assert not anticommutes(e, shifted)


@given(paulis, paulis, paulis)
def test_sign_is_multiplicative(a, b, s):
    # the commutation sign is a homomorphism on the Pauli group mod phases
    assert anticommutes(a * b, s) == (anticommutes(a, s) != anticommutes(b, s))


def test_enumeration_sizes():
    support = [10, 11, 12, 13, 14]
    assert sum(1 for _ in enumerate_on_support(support)) == 1024
    assert sum(1 for _ in enumerate_on_support(support, min_weight=1)) == 1023
    weights = Counter(e.weight for e in enumerate_on_support(support))
    assert weights[2] == 90


@pytest.mark.parametrize("n", range(0, 7))
def test_enumeration_complete_and_unique(n):
    items = list(enumerate_on_support(list(range(n))))
    assert len(set(items)) == len(items) == 4**n
    weights = Counter(e.weight for e in items)
    assert dict(weights) == {w: math.comb(n, w) * 3**w for w in range(n + 1)}


def test_enumeration_order():
    items = [e.to_text() for e in enumerate_on_support([4, 2])]
    assert items[:6] == ["", "X2", "Y2", "Z2", "X4", "X2 X4"]
    assert items[-1] == "Z2 Z4"
    again = [e.to_text() for e in enumerate_on_support([4, 2])]
    assert items == again


def test_enumeration_cap():
    with pytest.raises(SupportTooLarge):
        next(enumerate_on_support(range(13)))
    with pytest.raises(ValueError):
        next(enumerate_on_support([1, 1]))


@pytest.mark.parametrize("D", range(1, 7))
def test_weight_one_anticommuting_count(D):
    s = SparsePauli({0: X, **{k: Z for k in range(1, D + 1)}})
    count = sum(anticommutes(e, s) for e in enumerate_on_support(range(D + 1)) if e.weight == 1)
    assert count == 2 * (D + 1)


def test_hashable_and_immutable():
    e = SparsePauli({1: X})
    assert {e: 1}[SparsePauli.from_text("X1")] == 1
    with pytest.raises(TypeError):
        e[1] = Z
