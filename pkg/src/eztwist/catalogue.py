"""Exhaustive checks of identities among AW, shuffle, H and H~.

Each identity is natural, so it suffices to check it on universal
arguments: for degrees (p, q, ...) the spaces are Delta[p], Delta[q], ...
and the arguments are the nondegenerate simplices whose every component is
a degeneracy of the fundamental simplex (tensor factors are iota_p
itself).  Together these cover every basis element of every space.
"""

from __future__ import annotations

import itertools

from .chains import Chain, Tensor, chain_of, differential, tensor_map, transpose_T
from .ez import aw, ez_f, h_em, hh, shuffle_map, tau_swap, tilde_T_pair, tilde_tau
from .simplicial import Pair, ProductSpace, SimplexRef, StandardSimplex, opposite


class UnknownIdentity(KeyError):
    pass


def full_simplices(degrees):
    """Nondegenerate tuples (s_{D_1} iota_{p_1}, ...) with every D_i of size n - p_i."""
    spaces = [StandardSimplex(p) for p in degrees]
    lo, hi = max(degrees), sum(degrees)
    out = []
    for n in range(lo, hi + 1):
        choices = [itertools.combinations(range(n), n - p) for p in degrees]
        for ds in itertools.product(*choices):
            if ds and set.intersection(*(set(d) for d in ds)):
                continue
            out.append(tuple(SimplexRef(n, d, X.top.gen) for d, X in zip(ds, spaces)))
    return spaces, out


def _nest(items):
    """(a, b, c, ...) -> Pair(Pair(a, b), c) ..."""
    s = items[0]
    for t in items[1:]:
        s = Pair(s, t)
    return s


def _right(s):
    """((x, y), z) -> (x, (y, z))."""
    return Pair(s.x.x, Pair(s.x.y, s.y))


def _left(s):
    """(x, (y, z)) -> ((x, y), z)."""
    return Pair(Pair(s.x, s.y.x), s.y.y)


def _map_basis(f, c):
    out = Chain()
    for b, coef in c.items():
        out.add_term(f(b), coef)
    return out


def _tensor_assoc_right(c):
    """(a (x) b) (x) c -> a (x) (b (x) c) as a flat triple."""
    out = Chain()
    for t, coef in c.items():
        ab, z = t
        out.add_term(Tensor(ab[0], ab[1], z), coef)
    return out


def _tensor_assoc_left(c):
    out = Chain()
    for t, coef in c.items():
        x, yz = t
        out.add_term(Tensor(x, yz[0], yz[1]), coef)
    return out


def _one(b):
    return chain_of(b)


# ---------------------------------------------------------------------------
# identity definitions; each returns (domain elements, lhs, rhs)


def contraction_checks(degrees, H):
    """The five side conditions of the contraction (AW, shuffle, H)."""
    p, q = degrees
    X, Y = StandardSimplex(p), StandardSimplex(q)
    P = ProductSpace(X, Y)
    _, prods = full_simplices((p, q))
    prods = [Pair(*t) for t in prods]
    tens = [Tensor(X.top, Y.top)]
    checks = []

    def awsh(t):
        return aw(X, Y, shuffle_map(X, Y, chain_of(t)))

    def hsh(t):
        return H(X, Y, shuffle_map(X, Y, chain_of(t)))

    def f_minus(s):
        c = chain_of(s)
        return ez_f(X, Y, c) - c

    def dh(s):
        c = chain_of(s)
        return differential(P, H(X, Y, c)) + H(X, Y, differential(P, c))

    checks.append(("AW shuffle = 1", tens, awsh, _one))
    checks.append(("shuffle AW = 1 + dH + Hd", prods, f_minus, dh))
    checks.append(("H shuffle = 0", tens, hsh, lambda t: Chain()))
    checks.append(("AW H = 0", prods, lambda s: aw(X, Y, H(X, Y, chain_of(s))), lambda s: Chain()))
    checks.append(("H H = 0", prods, lambda s: H(X, Y, H(X, Y, chain_of(s))), lambda s: Chain()))
    return checks


def _triple_prod(degrees):
    (X, Y, Z), elems = full_simplices(degrees)
    XY = ProductSpace(X, Y)
    YZ = ProductSpace(Y, Z)
    return X, Y, Z, XY, YZ, [_nest(e) for e in elems]


def _xyz_homotopy_pair(H, X, Y, Z, XY, YZ):
    """H_{XxY,Z} and H_{X,YxZ} on C(XxYxZ) in the left-nested encoding."""

    def h_xy_z(c):
        return H(XY, Z, c)

    def h_x_yz(c):
        return _map_basis(_left, H(X, YZ, _map_basis(_right, c)))

    return h_xy_z, h_x_yz


def _a_diagrams(degrees, H, which):
    X, Y, Z, XY, YZ, elems = _triple_prod(degrees)
    h_xy_z, h_x_yz = _xyz_homotopy_pair(H, X, Y, Z, XY, YZ)
    if which == 1:
        # AW_{X,YxZ} H_{XxY,Z} = (1 (x) H_{Y,Z}) AW_{X,YxZ}
        def lhs(s):
            return aw(X, YZ, _map_basis(_right, h_xy_z(chain_of(s))))

        def rhs(s):
            a = aw(X, YZ, chain_of(_right(s)))
            return tensor_map(_one, lambda b: H(Y, Z, chain_of(b)), a, 1)

        return [("A1", elems, lhs, rhs)]

    # AW_{XxY,Z} H_{X,YxZ} = (H_{X,Y} (x) 1) AW_{XxY,Z}
    def lhs2(s):
        return aw(XY, Z, h_x_yz(chain_of(s)))

    def rhs2(s):
        a = aw(XY, Z, chain_of(s))
        return tensor_map(lambda b: H(X, Y, chain_of(b)), _one, a, 0)

    return [("A2", elems, lhs2, rhs2)]


def _b_diagrams(degrees, H, which):
    p, q, r = degrees
    if which == 1:
        # H_{XxY,Z} shuffle_{X,YxZ} = shuffle_{X,YxZ} (1 (x) H_{Y,Z}) on C(X) (x) C(YxZ)
        X = StandardSimplex(p)
        (Y, Z), yz = full_simplices((q, r))
        YZ = ProductSpace(Y, Z)
        XY = ProductSpace(X, Y)
        elems = [Tensor(X.top, Pair(*e)) for e in yz]

        def lhs(t):
            sh = _map_basis(_left, shuffle_map(X, YZ, chain_of(t)))
            return _map_basis(_right, H(XY, Z, sh))

        def rhs(t):
            return shuffle_map(X, YZ, tensor_map(_one, lambda b: H(Y, Z, chain_of(b)), chain_of(t), 1))

        return [("B1", elems, lhs, rhs)]

    # H_{X,YxZ} shuffle_{XxY,Z} = shuffle_{XxY,Z} (H_{X,Y} (x) 1) on C(XxY) (x) C(Z)
    (X, Y), xy = full_simplices((p, q))
    Z = StandardSimplex(r)
    XY = ProductSpace(X, Y)
    YZ = ProductSpace(Y, Z)
    elems = [Tensor(Pair(*e), Z.top) for e in xy]

    def lhs2(t):
        sh = _map_basis(_right, shuffle_map(XY, Z, chain_of(t)))
        return _map_basis(_left, H(X, YZ, sh))

    def rhs2(t):
        return shuffle_map(XY, Z, tensor_map(lambda b: H(X, Y, chain_of(b)), _one, chain_of(t), 0))

    return [("B2", elems, lhs2, rhs2)]


def _fh_commute(degrees, H):
    X, Y, Z, XY, YZ, elems = _triple_prod(degrees)
    h_xy_z, h_x_yz = _xyz_homotopy_pair(H, X, Y, Z, XY, YZ)

    def f_x_yz(c):
        return _map_basis(_left, ez_f(X, YZ, _map_basis(_right, c)))

    def f_xy_z(c):
        return ez_f(XY, Z, c)

    return [
        ("F_{X,YxZ} H_{XxY,Z} = H_{XxY,Z} F_{X,YxZ}", elems,
         lambda s: f_x_yz(h_xy_z(chain_of(s))), lambda s: h_xy_z(f_x_yz(chain_of(s)))),
        ("F_{XxY,Z} H_{X,YxZ} = H_{X,YxZ} F_{XxY,Z}", elems,
         lambda s: f_xy_z(h_x_yz(chain_of(s))), lambda s: h_x_yz(f_xy_z(chain_of(s)))),
    ]


def _hh_anticommute(degrees, H):
    X, Y, Z, XY, YZ, elems = _triple_prod(degrees)
    h_xy_z, h_x_yz = _xyz_homotopy_pair(H, X, Y, Z, XY, YZ)
    return [
        ("H_{XxY,Z} H_{X,YxZ} = -H_{X,YxZ} H_{XxY,Z}", elems,
         lambda s: h_xy_z(h_x_yz(chain_of(s))), lambda s: -h_x_yz(h_xy_z(chain_of(s)))),
    ]


def _reversal(degrees, which):
    p, q = degrees
    X, Y = StandardSimplex(p), StandardSimplex(q)
    Xo, Yo = opposite(X), opposite(Y)
    _, prods = full_simplices((p, q))
    prods = [Pair(*t) for t in prods]
    tens = [Tensor(X.top, Y.top)]
    if which == "aw":
        return [("T~ AW = AW tau~", prods,
                 lambda s: tilde_T_pair(aw(X, Y, chain_of(s))),
                 lambda s: aw(Yo, Xo, tilde_tau(chain_of(s))))]
    if which == "shuffle":
        return [("tau~ shuffle = shuffle T~", tens,
                 lambda t: tilde_tau(shuffle_map(X, Y, chain_of(t))),
                 lambda t: shuffle_map(Yo, Xo, tilde_T_pair(chain_of(t))))]
    return [("tau~ H = H~ tau~", prods,
             lambda s: tilde_tau(h_em(X, Y, chain_of(s))),
             lambda s: hh(Yo, Xo, tilde_tau(chain_of(s))))]


def _assoc_shuffle(degrees):
    p, q, r = degrees
    X, Y, Z = (StandardSimplex(d) for d in degrees)
    XY, YZ = ProductSpace(X, Y), ProductSpace(Y, Z)
    elems = [Tensor(X.top, Y.top, Z.top)]

    def lhs(t):
        x, y, z = t
        inner = shuffle_map(X, Y, chain_of(Tensor(x, y)))
        return shuffle_map(XY, Z, Chain({Tensor(a, z): c for a, c in inner.items()}))

    def rhs(t):
        x, y, z = t
        inner = shuffle_map(Y, Z, chain_of(Tensor(y, z)))
        sign = 1
        out = shuffle_map(X, YZ, Chain({Tensor(x, a): sign * c for a, c in inner.items()}))
        return _map_basis(_left, out)

    return [("shuffle associative", elems, lhs, rhs)]


def _coassoc_aw(degrees):
    X, Y, Z, XY, YZ, elems = _triple_prod(degrees)

    def lhs(s):
        a = aw(XY, Z, chain_of(s))
        return _tensor_assoc_right(tensor_map(lambda b: aw(X, Y, chain_of(b)), _one, a, 0))

    def rhs(s):
        a = aw(X, YZ, chain_of(_right(s)))
        return _tensor_assoc_left(tensor_map(_one, lambda b: aw(Y, Z, chain_of(b)), a, 0))

    return [("AW coassociative", elems, lhs, rhs)]


def _comm_shuffle(degrees):
    p, q = degrees
    X, Y = StandardSimplex(p), StandardSimplex(q)
    return [("tau_* shuffle = shuffle T", [Tensor(X.top, Y.top)],
             lambda t: tau_swap(shuffle_map(X, Y, chain_of(t))),
             lambda t: shuffle_map(Y, X, transpose_T(chain_of(t))))]


def _interchange(degrees):
    p, q, r, w = degrees
    (X, Y), xy = full_simplices((p, q))
    (Z, W), zw = full_simplices((r, w))
    XY, ZW = ProductSpace(X, Y), ProductSpace(Z, W)
    XZ, YW = ProductSpace(X, Z), ProductSpace(Y, W)
    elems = [Tensor(Pair(*a), Pair(*b)) for a in xy for b in zw]

    def lhs(t):
        # (shuffle (x) shuffle)(1 (x) T (x) 1)(AW (x) AW)
        a = tensor_map(lambda b: aw(X, Y, chain_of(b)), lambda b: aw(Z, W, chain_of(b)), chain_of(t), 0)
        out = Chain()
        for tt, c in a.items():
            (x, y), (z, w) = tt
            sign = -1 if (y.degree * z.degree) & 1 else 1
            left = shuffle_map(X, Z, chain_of(Tensor(x, z)))
            right = shuffle_map(Y, W, chain_of(Tensor(y, w)))
            for u, c1 in left.items():
                for v, c2 in right.items():
                    out.add_term(Tensor(u, v), sign * c * c1 * c2)
        return out

    def rhs(t):
        sh = shuffle_map(XY, ZW, chain_of(t))
        # (id, tau_{Y,Z}, id): ((x,y),(z,w)) -> ((x,z),(y,w))
        swapped = _map_basis(lambda s: Pair(Pair(s.x.x, s.y.x), Pair(s.x.y, s.y.y)), sh)
        return aw(XZ, YW, swapped)

    return [("interchange", elems, lhs, rhs)]


def _shuffle_aw(degrees, which):
    p, q, r = degrees
    if which == 1:
        # AW_{XxY,Z} shuffle_{X,YxZ} = (shuffle_{X,Y} (x) 1)(1 (x) AW_{Y,Z}) on C(X) (x) C(YxZ)
        X = StandardSimplex(p)
        (Y, Z), yz = full_simplices((q, r))
        YZ, XY = ProductSpace(Y, Z), ProductSpace(X, Y)
        elems = [Tensor(X.top, Pair(*e)) for e in yz]

        def lhs(t):
            return aw(XY, Z, _map_basis(_left, shuffle_map(X, YZ, chain_of(t))))

        def rhs(t):
            x, s = t
            out = Chain()
            for yz_t, c in aw(Y, Z, chain_of(s)).items():
                y, z = yz_t
                for u, c1 in shuffle_map(X, Y, chain_of(Tensor(x, y))).items():
                    out.add_term(Tensor(u, z), c * c1)
            return out

        return [("shuffle-aw-1", elems, lhs, rhs)]

    # AW_{X,YxZ} shuffle_{XxY,Z} = (1 (x) shuffle_{Y,Z})(AW_{X,Y} (x) 1) on C(XxY) (x) C(Z)
    (X, Y), xy = full_simplices((p, q))
    Z = StandardSimplex(r)
    XY, YZ = ProductSpace(X, Y), ProductSpace(Y, Z)
    elems = [Tensor(Pair(*e), Z.top) for e in xy]

    def lhs2(t):
        return aw(X, YZ, _map_basis(_right, shuffle_map(XY, Z, chain_of(t))))

    def rhs2(t):
        s, z = t
        out = Chain()
        for xy_t, c in aw(X, Y, chain_of(s)).items():
            x, y = xy_t
            for v, c1 in shuffle_map(Y, Z, chain_of(Tensor(y, z))).items():
                # 1 (x) shuffle has degree 0: no Koszul sign
                out.add_term(Tensor(x, v), c * c1)
        return out

    return [("shuffle-aw-2", elems, lhs2, rhs2)]


def _h_recursive(degrees):
    from .operators import h_recursive_value

    (n,) = degrees
    D = StandardSimplex(n)
    top = Pair(D.top, D.top)
    return [(
        "recursive H = explicit H mod degenerate",
        [top],
        lambda s: h_recursive_value(n),
        lambda s: h_em(D, D, chain_of(s)),
    )]


def _shuffle_derivative(degrees):
    from .operators import shuffle_derivative_sides, shuffle_frontal_sides

    p, q = degrees
    X, Y = StandardSimplex(p), StandardSimplex(q)
    t = Tensor(X.top, Y.top)
    checks = [("s0 shuffle = shuffle' (s0 (x) s0)", [t],
               lambda _: shuffle_frontal_sides(p, q)[0],
               lambda _: shuffle_frontal_sides(p, q)[1])]
    if p + q:
        checks.append(("shuffle = shuffle'(1 (x) s0) + (-1)^p shuffle'(s0 (x) 1)", [t],
                       lambda _: shuffle_derivative_sides(p, q)[0],
                       lambda _: shuffle_derivative_sides(p, q)[1]))
    return checks


CATALOGUE = {
    "contraction-h": (2, lambda d: contraction_checks(d, h_em)),
    "contraction-hh": (2, lambda d: contraction_checks(d, hh)),
    "A1": (3, lambda d: _a_diagrams(d, h_em, 1)),
    "A2": (3, lambda d: _a_diagrams(d, h_em, 2)),
    "B1": (3, lambda d: _b_diagrams(d, h_em, 1)),
    "B2": (3, lambda d: _b_diagrams(d, h_em, 2)),
    "A1t": (3, lambda d: _a_diagrams(d, hh, 1)),
    "A2t": (3, lambda d: _a_diagrams(d, hh, 2)),
    "B1t": (3, lambda d: _b_diagrams(d, hh, 1)),
    "B2t": (3, lambda d: _b_diagrams(d, hh, 2)),
    "FH-commute": (3, lambda d: _fh_commute(d, h_em) + _fh_commute(d, hh)),
    "HH-anticommute": (3, lambda d: _hh_anticommute(d, h_em) + _hh_anticommute(d, hh)),
    "reversal-aw": (2, lambda d: _reversal(d, "aw")),
    "reversal-shuffle": (2, lambda d: _reversal(d, "shuffle")),
    "reversal-h": (2, lambda d: _reversal(d, "h")),
    "assoc-shuffle": (3, _assoc_shuffle),
    "coassoc-aw": (3, _coassoc_aw),
    "comm-shuffle": (2, _comm_shuffle),
    "interchange": (4, _interchange),
    "shuffle-aw-1": (3, lambda d: _shuffle_aw(d, 1)),
    "shuffle-aw-2": (3, lambda d: _shuffle_aw(d, 2)),
    "h-recursive-vs-explicit": (1, _h_recursive),
    "shuffle-derivative": (2, _shuffle_derivative),
}


def arity(name):
    try:
        return CATALOGUE[name][0]
    except KeyError:
        raise UnknownIdentity(name) from None


def verify_identity(name, degrees):
    """Run one catalogue identity on the universal arguments of ``degrees``."""
    if name not in CATALOGUE:
        raise UnknownIdentity(name)
    k, build = CATALOGUE[name]
    degrees = tuple(degrees)
    if len(degrees) != k or any(d < 0 for d in degrees):
        raise ValueError(f"{name} needs {k} non-negative degrees, got {degrees}")
    result = run_checks(build(degrees))
    result.update({"identity": name, "degrees": list(degrees)})
    return result


def run_checks(checks):
    """Evaluate (label, elements, lhs, rhs) checks; stops at the first mismatch."""
    checked = 0
    for label, elems, lhs, rhs in checks:
        for b in elems:
            checked += 1
            left, right = lhs(b), rhs(b)
            if left != right:
                return {
                    "status": "fail",
                    "checked": checked,
                    "counterexample": {
                        "relation": label,
                        "argument": b.to_json(),
                        "lhs": left.to_json(),
                        "rhs": right.to_json(),
                    },
                }
    return {"status": "pass", "checked": checked}


def degree_tuples(k, max_total):
    for total in range(max_total + 1):
        for t in itertools.product(range(total + 1), repeat=k):
            if sum(t) == total:
                yield t


def verify_all(names=None, max_total=5, max_total_interchange=None):
    """Run identities over every degree tuple with total degree <= max_total."""
    names = list(CATALOGUE) if names is None else list(names)
    reports = []
    for name in names:
        k = arity(name)
        cap = max_total
        if name == "interchange" and max_total_interchange is not None:
            cap = min(cap, max_total_interchange)
        for d in degree_tuples(k, cap):
            reports.append(verify_identity(name, d))
    return reports


def first_difference(f, g, max_degree=3):
    """First universal basis element of C(Delta[p] x Delta[q]) where H and H~ differ."""
    for total in range(max_degree * 2 + 1):
        for p in range(total + 1):
            q = total - p
            X, Y = StandardSimplex(p), StandardSimplex(q)
            _, prods = full_simplices((p, q))
            for t in prods:
                s = Pair(*t)
                if s.degree > max_degree:
                    continue
                a, b = f(X, Y, chain_of(s)), g(X, Y, chain_of(s))
                if a != b:
                    return {"degrees": [p, q], "basis": s, "lhs": a, "rhs": b}
    return None
