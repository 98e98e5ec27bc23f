import pytest
from hypothesis import given, strategies as st

from eztwist.groups import (
    FiniteGroup,
    GroupError,
    LoopGroup,
    RawTwisting,
    Word,
    _reduce,
    canonical_twisting,
    cyclic_group,
    discrete_group,
    induced_group_map,
    is_reduced,
    reduce_base,
    symmetric_group_3,
    transport_twisting,
    trivial_twisting,
    twisting_from_values,
    validate_group,
    validate_group_map,
    validate_twisting_function,
    wbar,
    wbar_twisting,
)
from eztwist.simplicial import bar_delta, std_delta, validate_simplicial


def test_cyclic_and_symmetric_tables():
    Z3 = cyclic_group(3)
    assert Z3.mul(2, 2) == 1 and Z3.inv(1) == 2
    S3 = symmetric_group_3()
    assert S3.order == 6
    assert any(S3.mul(a, b) != S3.mul(b, a) for a in range(6) for b in range(6))


def test_trivial_group():
    G = discrete_group([[0]])
    assert G.simplices(3) == [G.unit(3)]
    assert G.nondegenerate(0) == [G.unit(0)]
    assert G.nondegenerate(1) == []


@pytest.mark.parametrize("table", [
    [[0, 1], [1, 1]],       # 1 has no inverse
    [[0, 1, 2], [1, 2]],    # not square
    [[0, 0], [0, 0]],       # no identity
    [[0, 5], [5, 0]],
])
def test_bad_tables_raise(table):
    with pytest.raises(GroupError):
        FiniteGroup(table)


def test_nonassociative_table_raises():
    # a loop of order 5 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupError, match="associative"):
        FiniteGroup(table)


def test_discrete_group_is_a_simplicial_group():
    G = discrete_group(cyclic_group(3))
    assert validate_simplicial(G, 3) == []
    assert validate_group(G, 2, G.simplices(2)) == []


def test_loop_group_of_interval_circle_level_zero():
    G = LoopGroup(bar_delta(1))
    assert len(G.generators(0)) == 1
    e = bar_delta(1).top
    assert G.gen(e).degree == 0


def test_s0_images_are_identities():
    B = bar_delta(2)
    G = LoopGroup(B)
    x = B.nondegenerate(1)[0]
    assert G.gen(B.degeneracy(x, 0)) == G.unit(1)


def test_loop_group_needs_reduced_base():
    with pytest.raises(GroupError, match="reduced"):
        LoopGroup(std_delta(1))


def test_loop_group_face_of_generator():
    B = bar_delta(2)
    G = LoopGroup(B)
    w = G.gen(B.top)
    d0 = G.face(w, 0)
    expected = G.mul(G.inv(G.gen(B.face(B.top, 0))), G.gen(B.face(B.top, 1)))
    assert d0 == expected
    assert G.face(w, 1) == G.gen(B.face(B.top, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_loop_group_simplicial_and_homomorphism(n):
    G = LoopGroup(bar_delta(n))
    for level in range(n):
        words = G.words(level, 2 if level == 0 else 1)
        assert validate_group(G, level, words[:12]) == []
    for level in range(1, n):
        assert validate_simplicial(G, n, samples=G.words(level, 1)) == []


letters = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=12)


@given(letters)
def test_free_reduction_is_reduced_and_idempotent(ls):
    r = _reduce(tuple(ls))
    assert is_reduced(r)
    assert _reduce(r) == r


@given(letters)
def test_word_times_inverse_is_unit(ls):
    G = LoopGroup(bar_delta(1))
    w = Word(0, _reduce(tuple(ls)))
    assert G.mul(w, G.inv(w)) == G.unit(0)


def test_wbar_counts():
    W = wbar(cyclic_group(3), cap=4)
    assert [len(W.nondegenerate(n)) for n in range(4)] == [1, 2, 4, 8]
    assert validate_simplicial(W, 3) == []


def test_wbar_faces_multiply_inner_entries():
    W = wbar(cyclic_group(3))
    assert W.tuple_face((1, 1, 2), 1) == (2, 2)
    assert W.tuple_face((1, 1, 2), 0) == (1, 2)
    assert W.tuple_face((1, 1, 2), 3) == (1, 1)


@pytest.mark.parametrize("group, convention", [
    (cyclic_group(2), "wbar-first"),
    (symmetric_group_3(), "wbar-first-inverse"),
])
def test_wbar_convention_selected_by_validator(group, convention):
    W = wbar(group, cap=3)
    tau = wbar_twisting(W, discrete_group(group))
    assert tau.name == convention
    assert validate_twisting_function(tau, 3) == []


def test_plain_projection_fails_for_nonabelian_group():
    S3 = symmetric_group_3()
    W = wbar(S3, cap=3)
    tau = wbar_twisting(W, discrete_group(S3), convention="first")
    assert validate_twisting_function(tau, 3)


def test_canonical_twisting_validates():
    G = LoopGroup(bar_delta(3))
    assert validate_twisting_function(canonical_twisting(G), 3) == []


def test_double_cover_twisting_function():
    B = bar_delta(1)
    G = discrete_group(cyclic_group(2))
    tau = twisting_from_values(B, G, {"[0, 1]": 1})
    assert tau(B.top).elem == 1
    assert validate_twisting_function(tau, 3) == []
    assert validate_twisting_function(trivial_twisting(B, G), 3) == []


def test_corrupted_twisting_is_named():
    B = bar_delta(2)
    G = discrete_group(cyclic_group(2))
    good = twisting_from_values(B, G, {"[0, 1]": 1, "[1, 2]": 1, "[0, 2]": 0, "[0, 1, 2]": 1})
    assert validate_twisting_function(good, 2) == []
    bad = RawTwisting(B, G, lambda b: G.element(b.degree - 1, 1 if b.degree == 2 else good(b).elem))
    v = validate_twisting_function(bad, 2)
    assert any(s.startswith("d0 tau(") for s in v)
    assert any("tau(s0" in s for s in v)


def test_reduce_base_of_standard_simplex():
    R, project = reduce_base(std_delta(2))
    B = bar_delta(2)
    assert [len(R.nondegenerate(n)) for n in range(3)] == [len(B.nondegenerate(n)) for n in range(3)]
    assert validate_simplicial(R, 3) == []
    D = std_delta(2)
    assert project(D.face(D.face(D.top, 0), 0)).gen == "*"


def test_transport_twisting_and_induced_map():
    D = std_delta(2)
    R, project = reduce_base(D)
    G = discrete_group(cyclic_group(2))
    tau = trivial_twisting(D, G)
    t2 = transport_twisting(tau, R, project)
    assert validate_twisting_function(t2, 3) == []

    B = bar_delta(1)
    cover = twisting_from_values(B, G, {"[0, 1]": 1})
    L = LoopGroup(B)
    q = induced_group_map(cover, L)
    samples = L.words(0, 2) + L.words(1, 1)
    assert validate_group_map(q, L, G, samples) == []
    assert q(L.gen(B.top)).elem == 1
