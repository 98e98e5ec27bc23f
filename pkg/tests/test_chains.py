from hypothesis import given, strategies as st

from eztwist.chains import (
    Chain,
    Tensor,
    TensorComplex,
    augmentation,
    chain_of,
    chainmap_equal,
    differential,
    linear,
    tensor_differential,
    tensor_map,
    transpose_T,
    unit,
)
from eztwist.ez import aw, shuffle_map
from eztwist.groups import cyclic_group, discrete_group
from eztwist.simplicial import SimplexRef, std_delta

import pytest


def v(i):
    return SimplexRef(0, (), (i,))


def test_chain_arithmetic_drops_zeros():
    c = chain_of(v(0), 2) + chain_of(v(1))
    assert c - c == Chain()
    assert (3 * c)[v(0)] == 6
    assert (-c)[v(1)] == -1
    c.add_term(v(1), -1)
    assert v(1) not in c


def test_mixed_degrees_rejected():
    D = std_delta(1)
    with pytest.raises(ValueError):
        differential(D, chain_of(D.top) + chain_of(v(0)))


def test_boundary_examples():
    D = std_delta(1)
    assert differential(D, chain_of(D.top)) == chain_of(v(1)) - chain_of(v(0))
    assert differential(D, chain_of(v(0))) == Chain()
    D3 = std_delta(3)
    assert differential(D3, differential(D3, chain_of(D3.top))) == Chain()


def test_tensor_differential_signs():
    D = std_delta(1)
    x = D.top
    assert tensor_differential(D, D, chain_of(Tensor(v(0), x))) == tensor_map(
        chain_of, lambda b: differential(D, chain_of(b)), chain_of(Tensor(v(0), x)), -1
    )
    dx = differential(D, chain_of(x))
    expected = Chain()
    for b, c in dx.items():
        expected.add_term(Tensor(b, x), c)
        expected.add_term(Tensor(x, b), -c)
    assert tensor_differential(D, D, chain_of(Tensor(x, x))) == expected


def test_tensor_differential_squares_to_zero():
    D = std_delta(2)
    C = TensorComplex(D, D)
    for n in range(5):
        for t in C.basis(n):
            assert linear(C.boundary, C.boundary(t)) == Chain()


def test_transpose_signs():
    D = std_delta(3)
    a, b = v(0), D.top
    assert transpose_T(chain_of(Tensor(a, b))) == chain_of(Tensor(b, a))
    e = SimplexRef(1, (), (0, 1))
    assert transpose_T(chain_of(Tensor(e, e))) == -chain_of(Tensor(e, e))


_basis = st.builds(
    lambda p, q: Tensor(std_delta(p).top, std_delta(q).top), st.integers(0, 4), st.integers(0, 4)
)


@given(_basis, st.integers(-3, 3))
def test_transpose_is_an_involution(t, c):
    x = chain_of(t, c)
    assert transpose_T(transpose_T(x)) == x


@given(st.integers(0, 3), st.integers(0, 3))
def test_transpose_commutes_with_differential(p, q):
    A, B = std_delta(p), std_delta(q)
    x = chain_of(Tensor(A.top, B.top))
    assert transpose_T(tensor_differential(A, B, x)) == tensor_differential(B, A, transpose_T(x))


def test_augmentation_and_unit():
    assert augmentation(chain_of(v(0))) == 1
    assert augmentation(chain_of(std_delta(2).top, 5)) == 0
    G = discrete_group(cyclic_group(3))
    assert augmentation(unit(G)) == 1


def test_chainmap_equal_reports():
    D = std_delta(2)
    C = TensorComplex(D, D)
    basis = [t for n in range(5) for t in C.basis(n)]
    assert chainmap_equal(chain_of, chain_of, basis)["equal"]
    rep = chainmap_equal(lambda t: aw(D, D, shuffle_map(D, D, chain_of(t))), chain_of, basis)
    assert rep["equal"] and rep["checked"] == len(basis)
    bad = chainmap_equal(chain_of, lambda t: 2 * chain_of(t), basis)
    assert not bad["equal"] and bad["basis"] == basis[0]
    with pytest.raises(ValueError):
        chainmap_equal(chain_of, chain_of, basis, shift_f=0, shift_g=1)


def test_json_is_sorted():
    c = chain_of(v(2)) + chain_of(v(0), -1)
    assert [t["c"] for t in c.to_json()] == [-1, 1]
