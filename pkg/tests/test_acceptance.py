"""Acceptance criteria 1-7. Every comparison is exact over Z; runtimes are bounded.

Each test records a one-line PASS/FAIL summary that is printed at the end of
the pytest run (see conftest.py).
"""

import json
import time
from pathlib import Path

from eztwist.catalogue import verify_all
from eztwist.chains import Tensor, chain_of, linear
from eztwist.ez import hh, hh_by_conjugation, shuffle_parity_check
from eztwist.groups import (
    LoopGroup,
    canonical_twisting,
    cyclic_group,
    discrete_group,
    symmetric_group_3,
    trivial_twisting,
    twisting_from_json,
    validate_group,
    validate_twisting_function,
    wbar,
    wbar_twisting,
)
from eztwist.homology import homology
from eztwist.simplicial import (
    Pair,
    ProductSpace,
    bar_delta,
    opposite,
    parse_space,
    std_delta,
    validate_simplicial,
)
from eztwist.twisting import (
    SeriesComplex,
    TwistedProduct,
    TwistingCochain,
    compare_cochains,
    normalization_check,
    right_justified,
    square_zero_report,
    twisted_tensor_complex,
)

FIX = Path(__file__).parent / "fixtures"

DIAGRAMS = [
    "A1", "A2", "B1", "B2", "A1t", "A2t", "B1t", "B2t",
    "FH-commute", "HH-anticommute",
    "reversal-aw", "reversal-shuffle", "reversal-h",
    "assoc-shuffle", "coassoc-aw", "comm-shuffle",
    "interchange", "shuffle-aw-1", "shuffle-aw-2",
]


def _failures(reports):
    return [(r["identity"], r["degrees"]) for r in reports if r["status"] != "pass"]


def test_criterion_1_contraction(criterion):
    t0 = time.perf_counter()
    reports = verify_all(["contraction-h", "contraction-hh"], max_total=6)
    dt = time.perf_counter() - t0
    bad = _failures(reports)
    ok = not bad and dt < 60
    criterion(1, ok, f"contraction for H and H~, {len(reports)} degree pairs p+q<=6, {dt:.1f}s (<60s)")
    assert not bad, bad
    assert dt < 60


def test_criterion_2_oracle_equivalence(criterion):
    rec = _failures(verify_all(["h-recursive-vs-explicit"], max_total=5))
    conj = []
    for n in range(6):
        D = std_delta(n)
        s = Pair(D.top, D.top)
        if hh_by_conjugation(D, D, chain_of(s)) != hh(D, D, chain_of(s)):
            conj.append(n)
    ok = not rec and not conj
    criterion(2, ok, "recursive H = explicit H and conjugated H = explicit H~ on (i_n, i_n), n<=5")
    assert not rec, rec
    assert not conj, conj


def test_criterion_3_diagrams(criterion):
    t0 = time.perf_counter()
    reports = verify_all(DIAGRAMS, max_total=5, max_total_interchange=4)
    dt = time.perf_counter() - t0
    bad = _failures(reports)
    ok = not bad and dt < 300
    criterion(3, ok, f"{len(DIAGRAMS)} diagram identities, {len(reports)} degree tuples, {dt:.1f}s (<300s)")
    assert not bad, bad
    assert dt < 300


def test_criterion_4_shuffle_parity(criterion):
    bad = [(p, n - p) for n in range(9) for p in range(n + 1) if not shuffle_parity_check(p, n - p)]
    criterion(4, not bad, "shuffle parity for every (p,q)-shuffle, p+q<=8")
    assert not bad, bad


def _tensor_samples(G, B, top):
    """Basis elements of C(G) (x) C(B) up to degree ``top``; loop words are sampled by length."""
    out = []
    for n in range(top + 1):
        for k in range(n + 1):
            words = G.words(k, 2 if k == 0 else 1)
            for b in B.nondegenerate(n - k):
                out.extend(Tensor(w, b) for w in words)
    return out


def test_criterion_5_twisting_cochains(criterion):
    t0 = time.perf_counter()
    problems = []
    for n in range(1, 5):
        B = bar_delta(n)
        G = LoopGroup(B)
        tp = TwistedProduct(G, B, canonical_twisting(G))
        samples = _tensor_samples(G, B, n)
        for h in ("h", "hh"):
            t = TwistingCochain(tp, h)
            if not normalization_check(t)["ok"]:
                problems.append(f"(a) n={n} {h}")
            series = SeriesComplex(tp, h)
            if not square_zero_report(series, samples)["ok"]:
                problems.append(f"(b) n={n} {h}")
            formula = twisted_tensor_complex(G, B, t)
            if any(series.boundary(x) != formula.boundary(x) for x in samples):
                problems.append(f"(c) n={n} {h}")
        if not right_justified(TwistingCochain(tp, "hh"))["right_justified"]:
            problems.append(f"(d) n={n}")
    a = json.dumps(compare_cochains(bar_delta(3), 3), sort_keys=True)
    b = json.dumps(compare_cochains(bar_delta(3), 3), sort_keys=True)
    if a != b or json.loads(a)["first_difference_degree"] != 3:
        problems.append("(e)")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 300
    criterion(5, ok, f"normalization, d_t^2=0, series=formula, H~ right-justified, n<=4; {dt:.1f}s (<300s)")
    assert not problems, problems
    assert dt < 300


def _agreement(F, B, tau, degrees):
    tp = TwistedProduct(F, B, tau)
    cart = homology(tp, degrees)
    tens = homology(twisted_tensor_complex(F, B, TwistingCochain(tp, "hh")), degrees)
    return [str(h) for h in cart], [str(h) for h in tens]


def test_criterion_6_homology_agreement(criterion):
    t0 = time.perf_counter()
    Z2 = discrete_group(cyclic_group(2))
    S1 = bar_delta(1)
    cover = twisting_from_json(json.loads((FIX / "double_cover_tau.json").read_text()), S1, Z2)
    W = wbar(cyclic_group(2), cap=6)
    cases = [
        ("double cover", Z2, S1, cover, range(2), ["Z", "Z"]),
        ("untwisted", Z2, S1, trivial_twisting(S1, Z2), range(2), ["Z + Z", "Z + Z"]),
        ("universal Z/2", Z2, W, wbar_twisting(W, Z2), range(5), ["Z", "0", "0", "0", "0"]),
    ]
    bad = []
    for name, F, B, tau, degrees, expected in cases:
        cart, tens = _agreement(F, B, tau, degrees)
        if not (cart == tens == expected):
            bad.append((name, cart, tens))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    criterion(6, ok, f"cartesian and twisted tensor homology agree on 3 fixtures, {dt:.1f}s (<120s)")
    assert not bad, bad
    assert dt < 120


def _d_squared(X, cap):
    return [s for n in range(2, cap + 1) for s in X.nondegenerate(n) if linear(X.boundary, X.boundary(s))]


def test_criterion_7_validators(criterion):
    Z2 = discrete_group(cyclic_group(2))
    S3 = discrete_group(symmetric_group_3())
    spaces = [
        (std_delta(3), 4),
        (bar_delta(3), 4),
        (wbar(cyclic_group(2), cap=5), 5),
        (wbar(symmetric_group_3(), cap=3), 3),
        (parse_space(str(FIX / "circle2.json")), 2),
        (ProductSpace(bar_delta(1), std_delta(2)), 3),
        (opposite(std_delta(3)), 3),
        (Z2, 3),
    ]
    bad = []
    for X, cap in spaces:
        if validate_simplicial(X, cap) or _d_squared(X, cap):
            bad.append(X.name)
    S1 = bar_delta(1)
    twistings = [
        (twisting_from_json(json.loads((FIX / "double_cover_tau.json").read_text()), S1, Z2), 3),
        (trivial_twisting(S1, Z2), 3),
        (wbar_twisting(wbar(cyclic_group(2), cap=4), Z2), 4),
        (wbar_twisting(wbar(symmetric_group_3(), cap=3), S3), 3),
    ]
    for tau, cap in twistings:
        tp = TwistedProduct(tau.group, tau.base, tau)
        if validate_twisting_function(tau, cap) or validate_simplicial(tp, cap) or _d_squared(tp, cap):
            bad.append(tau.name)
    for n in (2, 3):
        G = LoopGroup(bar_delta(n))
        if validate_twisting_function(canonical_twisting(G), n):
            bad.append(f"canonical {n}")
        for level in range(n):
            words = G.words(level, 2 if level == 0 else 1)
            if validate_group(G, level, words[:10]) or (level and validate_simplicial(G, n, samples=words)):
                bad.append(f"{G.name} level {level}")

    corrupt = parse_space(str(FIX / "corrupted_triangle.json"))
    named_space = [v for v in validate_simplicial(corrupt, 2) if "d0 d2" in v]
    B2 = bar_delta(2)
    bad_tau = twisting_from_json(json.loads((FIX / "corrupted_tau.json").read_text()), B2, Z2)
    named_tau = [v for v in validate_twisting_function(bad_tau, 2) if v.startswith("d0 tau(")]
    ok = not bad and bool(named_space) and bool(named_tau)
    criterion(7, ok, f"validators clean on {len(spaces) + len(twistings) + 2} fixtures; corrupted fixtures named: "
                     f"{named_space[:1]} / {named_tau[:1]}")
    assert not bad, bad
    assert named_space and named_tau
