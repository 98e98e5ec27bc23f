"""Formal simplicial operators and the recursive Eilenberg-Mac Lane homotopy.

A monotone word acting on n-simplices is stored as the monotone map
theta: [m] -> [n] it induces, i.e. as the vertex tuple of the image of the
fundamental simplex iota_n.  Composition and the derived operator are then
plain tuple manipulations; the canonical face/degeneracy form is recovered
on demand.

A bioperator is an integer combination of word pairs on a common source
degree.  On the universal pair (iota_n, iota_n) in Delta[n] x Delta[n] a
bioperator *is* its own value, which is what makes the comparison with the
explicit formulas exact.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .chains import Chain, Tensor, chain_of
from .ez import _pair_degenerate, enumerate_shuffles, ez_f, h_em, shuffle_map
from .simplicial import Pair, ProductSpace, SimplexError, StandardSimplex, iter_degeneracy, vertices


class MonotoneWord(NamedTuple):
    source: int
    theta: tuple

    @classmethod
    def from_ops(cls, n, faces=(), degens=()):
        """Word d_{i_1}..d_{i_s} followed by s_{j_1}..s_{j_t} (canonical order).

        ``faces`` increasing, ``degens`` decreasing, read as the operator
        s_{j_1} ... s_{j_t} d_{i_1} ... d_{i_s}.
        """
        faces = tuple(faces)
        degens = tuple(degens)
        if list(faces) != sorted(set(faces)) or list(degens) != sorted(set(degens), reverse=True):
            raise SimplexError("word not in canonical order")
        if any(i > n or i < 0 for i in faces):
            raise SimplexError(f"face index out of range for degree {n}")
        verts = [v for v in range(n + 1) if v not in faces]
        for j in reversed(degens):
            if j > len(verts) - 1:
                raise SimplexError(f"degeneracy s{j} out of range")
            verts.insert(j, verts[j])
        return cls(n, tuple(verts))

    @property
    def target(self):
        return len(self.theta) - 1

    @property
    def faces(self):
        return tuple(v for v in range(self.source + 1) if v not in self.theta)

    @property
    def degens(self):
        t = self.theta
        return tuple(j for j in reversed(range(len(t) - 1)) if t[j] == t[j + 1])

    def compose(self, other):
        """self o other: apply ``other`` first (other.target == self.source)."""
        if other.target != self.source:
            raise SimplexError("degree mismatch in word composition")
        return MonotoneWord(other.source, tuple(other.theta[v] for v in self.theta))

    def apply(self, X, s):
        if s.degree != self.source:
            raise SimplexError("word applied to simplex of wrong degree")
        for i in reversed(self.faces):
            s = X.face(s, i)
        return iter_degeneracy(X, s, tuple(reversed(self.degens)))


def derive(w):
    """Derived word: every face and degeneracy index raised by one."""
    return MonotoneWord(w.source + 1, (0,) + tuple(v + 1 for v in w.theta))


def s0_word(n):
    """s_0 acting on n-simplices."""
    return MonotoneWord(n, (0,) + tuple(range(n + 1)))


class BiOperator:
    """Integer combination of word pairs, all acting on degree ``source``.

    ``kind`` is "product" for operators C(X x Y) -> C(X x Y) and "tensor"
    for operators landing in C(X) (x) C(Y).
    """

    def __init__(self, source, terms=None, kind="product"):
        self.source = source
        self.kind = kind
        self.terms = Chain()
        for (wx, wy), c in (terms or {}).items():
            self.add(wx, wy, c)

    def add(self, wx, wy, c):
        if isinstance(wx, MonotoneWord):
            wx = wx.theta
        if isinstance(wy, MonotoneWord):
            wy = wy.theta
        self.terms.add_term((tuple(wx), tuple(wy)), c)

    def __eq__(self, other):
        return self.source == other.source and self.terms == other.terms

    def __repr__(self):
        return f"BiOperator({self.source}, {dict(self.terms)!r})"

    def __bool__(self):
        return bool(self.terms)

    def combine(self, other, coeff=1):
        out = BiOperator(self.source, kind=self.kind)
        out.terms = Chain(self.terms).iadd(other.terms, coeff)
        return out

    def scaled(self, k):
        out = BiOperator(self.source, kind=self.kind)
        out.terms = k * self.terms
        return out

    def after(self, wx, wy=None):
        """self o (wx, wy); a single word applies to both factors."""
        wy = wx if wy is None else wy
        out = BiOperator(wx.source, kind=self.kind)
        for (tx, ty), c in self.terms.items():
            out.add(
                tuple(wx.theta[v] for v in tx),
                tuple(wy.theta[v] for v in ty),
                c,
            )
        return out

    def mod_degenerate(self):
        """Drop word pairs whose joint value on (iota, iota) is degenerate."""
        out = BiOperator(self.source, kind=self.kind)
        for (tx, ty), c in self.terms.items():
            if self.kind == "product":
                bad = any(
                    tx[j] == tx[j + 1] and ty[j] == ty[j + 1] for j in range(len(tx) - 1)
                )
            else:
                bad = _has_repeat(tx) or _has_repeat(ty)
            if not bad:
                out.add(tx, ty, c)
        return out


def _has_repeat(t):
    return any(t[j] == t[j + 1] for j in range(len(t) - 1))


def derive_bi(op):
    """Derived bioperator.

    Both words are index-shifted.  For tensor-valued operators each term
    picks up (-1)^{deg g} with deg g the degree change of the second word;
    product-valued operators (H, F) act on single simplices of X x Y and
    get no sign.
    """
    out = BiOperator(op.source + 1, kind=op.kind)
    for (tx, ty), c in op.terms.items():
        wx = derive(MonotoneWord(op.source, tx))
        wy = derive(MonotoneWord(op.source, ty))
        sign = 1
        if op.kind == "tensor" and (len(ty) - 1 - op.source) & 1:
            sign = -1
        out.add(wx, wy, sign * c)
    return out


def apply_bi(op, X, Y, pair):
    """Sum of c * (wx x, wy y); not normalized."""
    x, y = pair
    if x.degree != op.source or y.degree != op.source:
        raise SimplexError("bioperator applied to pair of wrong degree")
    out = Chain()
    for (tx, ty), c in op.terms.items():
        a = MonotoneWord(op.source, tx).apply(X, x)
        b = MonotoneWord(op.source, ty).apply(Y, y)
        out.add_term(Pair(a, b), c)
    return out


def from_universal(chain, n):
    """Bioperator read off a chain on (iota_n, iota_n) in Delta[n] x Delta[n]."""
    op = BiOperator(n)
    for s, c in chain.items():
        op.add(vertices(s.x), vertices(s.y), c)
    return op


def universal_pair(n):
    D = StandardSimplex(n)
    return D, Pair(D.top, D.top)


@lru_cache(maxsize=None)
def f_operator(n):
    """F = shuffle o AW as a bioperator on degree n (normalized)."""
    D, s = universal_pair(n)
    return from_universal(ez_f(D, D, chain_of(s)), n)


@lru_cache(maxsize=None)
def h_recursive(n):
    """H_0 = 0 and H_n = -H_{n-1}' + F' s_0, reduced modulo degenerate pairs."""
    if n < 0:
        raise SimplexError("negative degree")
    if n == 0:
        return BiOperator(0)
    prev = derive_bi(h_recursive(n - 1)).scaled(-1)
    f_term = derive_bi(f_operator(n)).after(s0_word(n))
    return prev.combine(f_term).mod_degenerate()


def h_explicit_operator(n):
    D, s = universal_pair(n)
    return from_universal(h_em(D, D, chain_of(s)), n)


def frontal_check(op):
    """s_0 o op == op' o s_0, exactly, as bioperators on degree op.source."""
    n = op.source
    lhs = BiOperator(n, kind=op.kind)
    for (tx, ty), c in op.terms.items():
        eta = s0_word(len(tx) - 1).theta
        lhs.add(tuple(tx[v] for v in eta), tuple(ty[v] for v in eta), c)
    rhs = derive_bi(op).after(s0_word(n))
    return lhs == rhs


def face_bioperator(n, i=0, j=0):
    """The pure-face pair (d_i, d_j) on degree n."""
    return BiOperator(
        n,
        {(MonotoneWord.from_ops(n, faces=(i,)).theta, MonotoneWord.from_ops(n, faces=(j,)).theta): 1},
    )


def shuffle_derived(X, Y, x, y, normalize=True):
    """Derived shuffle on degrees (p, q), both >= 1: the derived operator of
    the shuffle map on degrees (p-1, q-1), indices shifted, no extra sign."""
    p, q = x.degree, y.degree
    if p < 1 or q < 1:
        raise SimplexError("derived shuffle needs both degrees >= 1")
    out = Chain()
    for sh in enumerate_shuffles(p - 1, q - 1):
        xs = iter_degeneracy(X, x, tuple(b + 1 for b in sh.beta))
        ys = iter_degeneracy(Y, y, tuple(a + 1 for a in sh.alpha))
        if not (normalize and _pair_degenerate(X, Y, xs, ys)):
            out.add_term(Pair(xs, ys), sh.sign)
    return out


def shuffle_derivative_sides(p, q):
    """Both sides of shuffle(x (x) y) = shuffle'(x (x) s0 y) + (-1)^p shuffle'(s0 x (x) y)
    on (iota_p, iota_q); for p = 0 or q = 0 the corresponding term is absent."""
    X, Y = StandardSimplex(p), StandardSimplex(q)
    x, y = X.top, Y.top
    lhs = shuffle_map(X, Y, chain_of(Tensor(x, y)))
    rhs = Chain()
    if p >= 1:
        rhs.iadd(shuffle_derived(X, Y, x, Y.degeneracy(y, 0)))
    if q >= 1:
        rhs.iadd(shuffle_derived(X, Y, X.degeneracy(x, 0), y), -1 if p & 1 else 1)
    return lhs, rhs


def shuffle_frontal_sides(p, q):
    """s_0 shuffle(iota_p (x) iota_q) versus shuffle'(s_0 iota_p (x) s_0 iota_q).

    Both sides are degenerate, so the comparison is made before normalization.
    """
    X, Y = StandardSimplex(p), StandardSimplex(q)
    lhs = Chain()
    for sh in enumerate_shuffles(p, q):
        xs = iter_degeneracy(X, X.top, sh.beta)
        ys = iter_degeneracy(Y, Y.top, sh.alpha)
        lhs.add_term(Pair(X.degeneracy(xs, 0), Y.degeneracy(ys, 0)), sh.sign)
    rhs = shuffle_derived(
        X, Y, X.degeneracy(X.top, 0), Y.degeneracy(Y.top, 0), normalize=False
    )
    return lhs, rhs


def h_recursive_value(n):
    """h_recursive(n) evaluated on (iota_n, iota_n), normalized."""
    D, s = universal_pair(n)
    P = ProductSpace(D, D)
    out = Chain()
    for b, c in apply_bi(h_recursive(n), D, D, s).items():
        if not P.is_degenerate(b):
            out.add_term(b, c)
    return out
