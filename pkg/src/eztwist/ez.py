"""Alexander-Whitney map, shuffle map and the two Eilenberg-Zilber homotopies.

All maps act on normalized chains: degenerate outputs are dropped as they
are produced.  Basis-level values are memoized per pair of spaces.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .chains import Chain, Tensor, check_homogeneous, linear
from .simplicial import Pair, ProductSpace, iter_degeneracy, iter_face, opposite


class Shuffle(NamedTuple):
    p: int
    q: int
    alpha: tuple
    beta: tuple
    sign: int


def permutation_sign(seq):
    inv = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def enumerate_shuffles(p, q):
    """All (p,q)-shuffles (alpha, beta) with the sign of alpha+beta."""
    out = []
    for alpha in itertools.combinations(range(p + q), p):
        beta = tuple(j for j in range(p + q) if j not in alpha)
        # inversions of (alpha, beta): pairs a > b with a in alpha, b in beta
        inv = sum(1 for a in alpha for b in beta if a > b)
        out.append(Shuffle(p, q, alpha, beta, -1 if inv & 1 else 1))
    return tuple(out)


def reverse_shuffle(sh):
    """(m - alpha, m - beta) with m = p + q - 1, as increasing tuples."""
    m = sh.p + sh.q - 1
    a = tuple(sorted(m - i for i in sh.alpha))
    b = tuple(sorted(m - i for i in sh.beta))
    return a, b


def shuffle_parity_check(p, q):
    """Both sign identities of shuffle parity for every (p,q)-shuffle.

    Signs are recomputed by brute-force permutation signatures.
    """
    for sh in enumerate_shuffles(p, q):
        s_ab = permutation_sign(sh.alpha + sh.beta)
        s_ba = permutation_sign(sh.beta + sh.alpha)
        a_r, b_r = reverse_shuffle(sh)
        s_rev = permutation_sign(a_r + b_r)
        expected = s_ab * (-1 if (p * q) & 1 else 1)
        if s_ab != sh.sign or s_ba != expected or s_rev != expected:
            return False
    return True


def nu(n):
    """n(n+1)/2 mod 2."""
    return (n * (n + 1) // 2) & 1


def _sgn(e):
    return -1 if e & 1 else 1


# ---------------------------------------------------------------------------
# basis-level maps


@lru_cache(maxsize=None)
def _aw_basis(X, Y, s):
    n = s.degree
    x, y = s
    out = Chain()
    for k in range(n + 1):
        a = iter_face(X, x, k + 1, n)
        if X.is_degenerate(a):
            continue
        b = iter_face(Y, y, 0, k - 1)
        if Y.is_degenerate(b):
            continue
        out.add_term(Tensor(a, b), 1)
    return out


@lru_cache(maxsize=None)
def _shuffle_basis(X, Y, t):
    x, y = t
    p, q = x.degree, y.degree
    out = Chain()
    for sh in enumerate_shuffles(p, q):
        xs = iter_degeneracy(X, x, sh.beta)
        ys = iter_degeneracy(Y, y, sh.alpha)
        s = Pair(xs, ys)
        if _pair_degenerate(X, Y, xs, ys):
            continue
        out.add_term(s, sh.sign)
    return out


def _pair_degenerate(X, Y, x, y):
    dx = X.degen_set(x)
    if not dx:
        return False
    dy = Y.degen_set(y)
    return any(j in dy for j in dx)


@lru_cache(maxsize=None)
def _h_basis(X, Y, s):
    x, y = s
    n = s.degree
    out = Chain()
    for pq in range(n):
        for q in range(pq + 1):
            p = pq - q
            m = n - p - q
            xf = iter_face(X, x, n - q + 1, n)
            yf = iter_face(Y, y, m, n - q - 1)
            for sh in enumerate_shuffles(p + 1, q):
                xs = iter_degeneracy(X, xf, (m - 1,) + tuple(b + m for b in sh.beta))
                ys = iter_degeneracy(Y, yf, tuple(a + m for a in sh.alpha))
                if _pair_degenerate(X, Y, xs, ys):
                    continue
                out.add_term(Pair(xs, ys), _sgn(m + 1) * sh.sign)
    return out


@lru_cache(maxsize=None)
def _hh_basis(X, Y, s):
    x, y = s
    n = s.degree
    out = Chain()
    for pq in range(n):
        for q in range(pq + 1):
            p = pq - q
            xf = iter_face(X, x, p + 1, p + q)
            yf = iter_face(Y, y, 0, p - 1)
            for sh in enumerate_shuffles(p, q + 1):
                xs = iter_degeneracy(X, xf, sh.beta)
                ys = Y.degeneracy(iter_degeneracy(Y, yf, sh.alpha), p + q + 1)
                if _pair_degenerate(X, Y, xs, ys):
                    continue
                out.add_term(Pair(xs, ys), _sgn(p + q) * sh.sign)
    return out


# ---------------------------------------------------------------------------
# chain-level maps


def aw(X, Y, c):
    """Alexander-Whitney map C(X x Y) -> C(X) (x) C(Y)."""
    check_homogeneous(c)
    return linear(lambda s: _aw_basis(X, Y, s), c)


def shuffle_map(X, Y, c):
    """Shuffle map C(X) (x) C(Y) -> C(X x Y)."""
    check_homogeneous(c)
    return linear(lambda t: _shuffle_basis(X, Y, t), c)


def h_em(X, Y, c):
    """Eilenberg-Mac Lane homotopy H on C(X x Y), explicit double sum."""
    check_homogeneous(c)
    return linear(lambda s: _h_basis(X, Y, s), c)


def hh(X, Y, c):
    """The opposite homotopy H~ on C(X x Y)."""
    check_homogeneous(c)
    return linear(lambda s: _hh_basis(X, Y, s), c)


HOMOTOPIES = {"h": h_em, "hh": hh}


def homotopy(name):
    try:
        return HOMOTOPIES[name]
    except KeyError:
        raise ValueError(f"unknown homotopy {name!r}; expected 'h' or 'hh'") from None


def ez_f(X, Y, c):
    """F = shuffle o AW."""
    return shuffle_map(X, Y, aw(X, Y, c))


# ---------------------------------------------------------------------------
# reversal maps


def tilde_T(c):
    """C(X) -> C(X~), x -> (-1)^nu(|x|) x."""
    return Chain({b: coef * _sgn(nu(b.degree)) for b, coef in c.items()})


def tilde_T_pair(c):
    """C(X) (x) C(Y) -> C(Y~) (x) C(X~), x (x) y -> (-1)^nu(|x|+|y|) y (x) x."""
    out = Chain()
    for t, coef in c.items():
        a, b = t
        out.add_term(Tensor(b, a), coef * _sgn(nu(a.degree + b.degree)))
    return out


def tilde_tau(c):
    """C(X x Y) -> C(Y~ x X~), (x, y) -> (-1)^nu(n) (y, x)."""
    out = Chain()
    for s, coef in c.items():
        out.add_term(Pair(s.y, s.x), coef * _sgn(nu(s.degree)))
    return out


def tau_swap(c):
    """(tau_{X,Y})_*: (x, y) -> (y, x), no sign."""
    out = Chain()
    for s, coef in c.items():
        out.add_term(Pair(s.y, s.x), coef)
    return out


def hh_by_conjugation(X, Y, c):
    """H~ on C(X x Y) computed as tau~ H_{Y~,X~} tau~^{-1}.

    tau~ is an involution up to the identification X~~ = X, so its inverse
    is the same signed swap.
    """
    Yo, Xo = opposite(Y), opposite(X)
    return tilde_tau(h_em(Yo, Xo, tilde_tau(c)))


def product_space(X, Y):
    return ProductSpace(X, Y)
