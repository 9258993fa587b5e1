import pytest
from hypothesis import given, strategies as st

from ratspace import GF, QQ, RatFunc, express_in, luroth_generator, span, subfield_index, subfield_index_chain
from ratspace.errors import FieldTooSmall
from ratspace.filtration import filtered_basis, natural_filtration
from ratspace.places import valuation, Place
from ratspace.subspace import poly_space
from ratspace.tower import pole_count, valuation_gap_probe


def test_pole_count(R):
    assert pole_count(R("(x^2+1)/x")) == 2
    assert pole_count(R("x^3")) == 3
    assert pole_count(R("1/(x-1)^2")) == 2


def test_luroth_examples(R):
    assert pole_count(luroth_generator([R("x^2"), R("x^3")])) == 1
    assert luroth_generator([R("x^2")]) == R("x^2")
    assert pole_count(luroth_generator([R("x^4"), R("x^2")])) == 2
    assert luroth_generator([R("x^4+x^2"), R("x^6")]) == R("x^2")


def test_luroth_char_p(R):
    F = GF(7)
    g = luroth_generator([R("x^7", F), R("x^14+x^7", F)])
    assert pole_count(g) == 7


def test_chains(R):
    chain = subfield_index_chain(natural_filtration(filtered_basis(poly_space(4, QQ))))
    assert chain[1:] == [1, 1, 1, 1]
    S = span([R("1"), R("x^2"), R("x^3")], QQ)
    assert subfield_index_chain(natural_filtration(filtered_basis(S))) == [None, 2, 1]


def test_express_in(R):
    y = R("x^2+1/x^2")
    e = R("x^4+1/x^4")
    h = express_in(e, y)
    assert h == R("x^2-2") and h.compose(y) == e
    assert express_in(R("x"), R("x^2")) is None


def test_gap_probe(R):
    for w in valuation_gap_probe(span([R("1"), R("x")], QQ), 5, seed=1):
        assert w.gap == 1
    ws = valuation_gap_probe(span([R("1"), R("x^2"), R("x^2+x")], QQ), 3, seed=2)
    assert ws and all(w.gap == 1 for w in ws)
    for w in ws:
        assert valuation(w.s2, Place(w.alpha)) == 1


def test_gap_probe_small_field(R):
    F = GF(2)
    with pytest.raises(FieldTooSmall):
        valuation_gap_probe(span([RatFunc.constant(1, F), R("x^2+x", F)], F), 2)


small = st.integers(-3, 3)


@given(st.lists(small, min_size=2, max_size=3), st.lists(small, min_size=2, max_size=3))
def test_index_multiplicative(a, b):
    """[K(x):K(g(h))] = deg g * deg h for polynomials."""
    x = RatFunc.x()
    g = sum((RatFunc.constant(c) * x ** k for k, c in enumerate(a)), RatFunc.constant(0))
    h = sum((RatFunc.constant(c) * x ** k for k, c in enumerate(b)), RatFunc.constant(0))
    if g.is_constant() or h.is_constant():
        return
    gh = g.compose(h)
    assert subfield_index([gh]) == pole_count(g) * pole_count(h)
    assert subfield_index([gh, h]) == pole_count(h)
