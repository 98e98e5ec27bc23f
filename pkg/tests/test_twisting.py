import json

import pytest

from eztwist.chains import Chain, Tensor, TensorComplex, chain_of, linear
from eztwist.groups import (
    LoopGroup,
    TwistingFunction,
    canonical_twisting,
    cyclic_group,
    discrete_group,
    induced_group_map,
    trivial_twisting,
    twisting_from_values,
    validate_twisting_function,
)
from eztwist.simplicial import bar_delta, validate_simplicial
from eztwist.twisting import (
    CochainStore,
    SeriesComplex,
    TwistedProduct,
    TwistingCochain,
    check_cochain_condition,
    compare_cochains,
    delta,
    naturality_check,
    normalization_check,
    pontryagin_product,
    right_justified,
    square_zero_report,
    transferred_differential,
    twisted_tensor_complex,
)

Z2 = discrete_group(cyclic_group(2))


def cover():
    B = bar_delta(1)
    return B, twisting_from_values(B, Z2, {"[0, 1]": 1}, name="cover")


def loop_setup(n):
    B = bar_delta(n)
    G = LoopGroup(B)
    return B, G, TwistedProduct(G, B, canonical_twisting(G))


def test_twisted_product_is_simplicial():
    B, tau = cover()
    tp = TwistedProduct(Z2, B, tau)
    assert validate_simplicial(tp, 3) == []
    for s in tp.nondegenerate(1):
        assert not linear(tp.boundary, tp.boundary(s))


def test_delta_on_double_cover():
    B, tau = cover()
    tp = TwistedProduct(Z2, B, tau)
    x = next(p for p in tp.nondegenerate(1) if p.x.elem == 0)
    d = delta(tp, chain_of(x))
    assert d == chain_of(tp.face(x, 0)) - chain_of(tp.plain.face(x, 0))
    assert len(d) == 2


def test_delta_vanishes_for_trivial_twisting():
    B = bar_delta(1)
    tp = TwistedProduct(Z2, B, trivial_twisting(B, Z2))
    for x in tp.nondegenerate(1):
        assert not delta(tp, chain_of(x))


def test_series_reduces_to_tensor_differential_when_untwisted():
    B = bar_delta(2)
    tp = TwistedProduct(Z2, B, trivial_twisting(B, Z2))
    T = TensorComplex(Z2, B)
    for n in range(3):
        for x in T.basis(n):
            for h in ("h", "hh"):
                assert transferred_differential(tp, h, chain_of(x)) == T.boundary(x)


@pytest.mark.parametrize("h", ["h", "hh"])
def test_degree_one_perturbation(h):
    B, G, tp = loop_setup(1)
    one = G.unit(0)
    b = B.top
    d = transferred_differential(tp, h, chain_of(Tensor(one, b)))
    base = B.nondegenerate(0)[0]
    pert = d - TensorComplex(G, B).boundary(Tensor(one, b))
    expected = chain_of(Tensor(tp.tau.sigma(b), base)) - chain_of(Tensor(one, base))
    assert pert == expected


@pytest.mark.parametrize("h", ["h", "hh"])
def test_square_zero_on_loop_group_of_two_simplex(h):
    B, G, tp = loop_setup(2)
    C = SeriesComplex(tp, h)
    samples = [Tensor(w, b) for n in range(4) for k in range(n + 1)
               for w in G.words(k, 2 if k == 0 else 1) for b in B.nondegenerate(n - k)]
    rep = square_zero_report(C, samples)
    assert rep["ok"], rep["violations"][:1]


def test_extracted_cochain_degree_one():
    B, G, tp = loop_setup(1)
    t = TwistingCochain(tp, "hh")
    assert t(B.top) == chain_of(G.inv(G.gen(B.top))) - chain_of(G.unit(0))
    assert not t(B.degeneracy(B.nondegenerate(0)[0], 0))
    assert normalization_check(t)["ok"]


def test_cochain_rejects_foreign_fiber():
    B, tau = cover()
    with pytest.raises(ValueError):
        TwistingCochain(TwistedProduct(discrete_group(cyclic_group(3)), B, trivial_twisting(B, Z2)), "h")


def test_pontryagin_product_unit_and_associativity():
    B, G, _ = loop_setup(2)
    a, b = [chain_of(w) for w in G.words(1, 1)[:2]]
    e = chain_of(G.unit(0))
    assert pontryagin_product(G, e, a) == a == pontryagin_product(G, a, e)
    c = chain_of(G.words(0, 1)[0])
    lhs = pontryagin_product(G, pontryagin_product(G, c, c), a)
    rhs = pontryagin_product(G, c, pontryagin_product(G, c, a))
    assert lhs == rhs
    assert pontryagin_product(G, a, b).degree == 2 or not pontryagin_product(G, a, b)


def test_cochain_condition_for_trivial_twisting():
    B = bar_delta(2)
    tp = TwistedProduct(Z2, B, trivial_twisting(B, Z2))
    t = TwistingCochain(tp, "h")
    assert all(not t(b) for n in range(1, 3) for b in B.nondegenerate(n))
    assert check_cochain_condition(t, 2)["ok"]


@pytest.mark.parametrize("h", ["h", "hh"])
@pytest.mark.parametrize("n", [2, 3])
def test_cochain_condition_on_bar_simplices(h, n):
    _, _, tp = loop_setup(n)
    rep = check_cochain_condition(TwistingCochain(tp, h), n)
    assert rep["ok"], rep["failures"][:1]


def test_trivial_cochain_gives_tensor_differential():
    B = bar_delta(2)
    tp = TwistedProduct(Z2, B, trivial_twisting(B, Z2))
    C = twisted_tensor_complex(Z2, B, TwistingCochain(tp, "hh"))
    T = TensorComplex(Z2, B)
    for x in T.basis(2):
        assert C.boundary(x) == T.boundary(x)


@pytest.mark.parametrize("h", ["h", "hh"])
def test_formula_matches_series(h):
    B, G, tp = loop_setup(2)
    t = TwistingCochain(tp, h)
    F = twisted_tensor_complex(G, B, t)
    S = SeriesComplex(tp, h)
    for n in range(3):
        for k in range(n + 1):
            for w in G.words(k, 1 if k else 2):
                for b in B.nondegenerate(n - k):
                    x = Tensor(w, b)
                    assert F.boundary(x) == S.boundary(x), x


def test_formula_matches_series_on_double_cover():
    B, tau = cover()
    tp = TwistedProduct(Z2, B, tau)
    t = TwistingCochain(tp, "hh")
    F = twisted_tensor_complex(Z2, B, t)
    for n in range(2):
        for x in F.basis(n):
            assert F.boundary(x) == transferred_differential(tp, "hh", chain_of(x))


def test_right_justified_small_cases():
    for n in (1, 2):
        _, _, tp = loop_setup(n)
        for h in ("h", "hh"):
            assert right_justified(TwistingCochain(tp, h))["right_justified"]


def test_h_cochain_is_not_right_justified_in_degree_three():
    _, _, tp = loop_setup(3)
    assert right_justified(TwistingCochain(tp, "hh"))["right_justified"]
    rep = right_justified(TwistingCochain(tp, "h"))
    assert not rep["right_justified"] and rep["offenders"]


def test_compare_cochains_is_deterministic():
    a = compare_cochains(bar_delta(3), 3)
    b = compare_cochains(bar_delta(3), 3)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["first_difference_degree"] == 3
    assert a["right_justified_hh"] and not a["right_justified_h"]
    assert a["cochain_condition_h"] and a["cochain_condition_hh"]


def test_naturality_identity_and_group_map():
    B, G, tp = loop_setup(1)
    t = TwistingCochain(tp, "hh")
    assert naturality_check(t, t, lambda b: b, lambda w: w, 1)["ok"]
    _, tau = cover()
    t2 = TwistingCochain(TwistedProduct(Z2, B, tau), "hh")
    q = induced_group_map(tau, G)
    assert naturality_check(t, t2, lambda b: b, q, 1)["ok"]


def test_cochain_store_round_trip(tmp_path):
    _, _, tp = loop_setup(2)
    store = CochainStore(str(tmp_path))
    t = TwistingCochain(tp, "h", store=store)
    v = t(tp.B.top)
    files = list((tmp_path / "cochains").glob("*.json"))
    assert len(files) == 1
    again = TwistingCochain(tp, "h", store=CochainStore(str(tmp_path)))
    assert tp.B.top in again._memo
    assert again(tp.B.top) == v


def test_cochain_store_needs_directory(monkeypatch):
    monkeypatch.delenv(CochainStore.ENV, raising=False)
    with pytest.raises(ValueError):
        CochainStore()


def test_zero_chain_is_falsy():
    assert not Chain()


@pytest.mark.parametrize("h", ["h", "hh"])
def test_naturality_under_classifying_map_in_degree_three(h):
    B, G, tp = loop_setup(3)
    f = (0, 1, 1, 0)  # tau(b) = f(v1) - f(v0) on the first edge of b
    tau = TwistingFunction(B, Z2, lambda b: Z2.element(b.degree - 1, (f[b.gen[1]] + f[b.gen[0]]) % 2))
    assert validate_twisting_function(tau, 3) == []
    t = TwistingCochain(tp, h)
    t2 = TwistingCochain(TwistedProduct(Z2, B, tau), h)
    rep = naturality_check(t, t2, lambda b: b, induced_group_map(tau, G), 3)
    assert rep["ok"], rep["failures"]
