"""Sparse integer chains, tensor bases and Koszul-signed tensor maps."""

from __future__ import annotations

import json


class Chain(dict):
    """Finite integer combination of basis elements; zero terms never stored."""

    def add_term(self, b, c):
        if not c:
            return
        v = self.get(b, 0) + c
        if v:
            self[b] = v
        else:
            del self[b]

    def iadd(self, other, coeff=1):
        if coeff:
            for b, c in other.items():
                self.add_term(b, c * coeff)
        return self

    def __add__(self, other):
        return Chain(self).iadd(other)

    def __sub__(self, other):
        return Chain(self).iadd(other, -1)

    def __neg__(self):
        return Chain({b: -c for b, c in self.items()})

    def __rmul__(self, k):
        if not k:
            return Chain()
        return Chain({b: k * c for b, c in self.items()})

    def degrees(self):
        return {b.degree for b in self}

    @property
    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"chain mixes degrees {sorted(ds)}")
        return ds.pop() if ds else None

    def sorted_items(self):
        return sorted(self.items(), key=lambda bc: basis_key(bc[0]))

    def to_json(self):
        return [{"c": c, "b": b.to_json()} for b, c in self.sorted_items()]

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for b, c in self.sorted_items():
            parts.append(f"{c:+d}*{b!r}" if c not in (1, -1) else f"{'+' if c > 0 else '-'}{b!r}")
        return " ".join(parts)


def basis_key(b):
    return json.dumps(b.to_json(), sort_keys=True)


def chain_of(b, c=1):
    out = Chain()
    out.add_term(b, c)
    return out


def linear(f, chain):
    """Extend a basis-level map (returning Chains) linearly."""
    out = Chain()
    for b, c in chain.items():
        out.iadd(f(b), c)
    return out


class Tensor(tuple):
    """Basis element a (x) b (x) ... of a tensor product of complexes."""

    __slots__ = ()

    def __new__(cls, *factors):
        return tuple.__new__(cls, factors)

    @property
    def degree(self):
        return sum(f.degree for f in self)

    def to_json(self):
        return {"tensor": [f.to_json() for f in self]}

    def __repr__(self):
        return " (x) ".join(repr(f) for f in self)


def check_homogeneous(chain):
    return chain.degree


class TensorComplex:
    """C(A) (x) C(B) with d(a (x) b) = da (x) b + (-1)^|a| a (x) db."""

    def __init__(self, A, B):
        self.A = A
        self.B = B
        self.name = f"{A.name}(x){B.name}"

    def basis(self, n):
        out = []
        for k in range(n + 1):
            for a in self.A.basis(k):
                for b in self.B.basis(n - k):
                    out.append(Tensor(a, b))
        return out

    def boundary(self, t):
        a, b = t
        out = Chain()
        for a2, c in self.A.boundary(a).items():
            out.add_term(Tensor(a2, b), c)
        sign = -1 if a.degree & 1 else 1
        for b2, c in self.B.boundary(b).items():
            out.add_term(Tensor(a, b2), sign * c)
        return out


def differential(X, c):
    """Normalized differential on C(X) (or any object with ``boundary``)."""
    check_homogeneous(c)
    return linear(X.boundary, c)


def tensor_differential(A, B, c):
    check_homogeneous(c)
    return linear(TensorComplex(A, B).boundary, c)


def transpose_T(c):
    """a (x) b -> (-1)^{|a||b|} b (x) a."""
    out = Chain()
    for t, coef in c.items():
        a, b = t
        sign = -1 if (a.degree * b.degree) & 1 else 1
        out.add_term(Tensor(b, a), sign * coef)
    return out


def tensor_map(f, g, c, g_degree):
    """(f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b) on two-fold tensors."""
    out = Chain()
    for t, coef in c.items():
        a, b = t
        sign = -1 if (g_degree * a.degree) & 1 else 1
        fa = f(a)
        if not fa:
            continue
        gb = g(b)
        for a2, c1 in fa.items():
            for b2, c2 in gb.items():
                out.add_term(Tensor(a2, b2), sign * coef * c1 * c2)
    return out


def identity(b):
    return chain_of(b)


def augmentation(c):
    """Sum of degree-0 coefficients; zero on positive degrees."""
    return sum(coef for b, coef in c.items() if b.degree == 0)


def unit(G):
    """eta(1): the identity 0-simplex of a simplicial group."""
    return chain_of(G.unit(0))


def chainmap_equal(f, g, basis, shift_f=None, shift_g=None):
    """Compare two basis-level maps on every element of ``basis``.

    Returns a report dict; ``equal`` is False at the first differing
    element, which is reported together with both values.
    """
    if shift_f is not None and shift_g is not None and shift_f != shift_g:
        raise ValueError(f"degree shifts differ: {shift_f} vs {shift_g}")
    checked = 0
    for b in basis:
        lhs, rhs = f(b), g(b)
        checked += 1
        if lhs != rhs:
            return {
                "equal": False,
                "checked": checked,
                "basis": b,
                "lhs": lhs,
                "rhs": rhs,
            }
    return {"equal": True, "checked": checked}
