"""Twisted Cartesian products, the transferred differential and twisting cochains."""

from __future__ import annotations

import json
import os
import re

from .chains import Chain, Tensor, TensorComplex, chain_of, linear
from .ez import aw, homotopy, shuffle_map, _aw_basis
from .groups import LoopGroup, canonical_twisting
from .simplicial import (
    BarSimplex,
    Pair,
    ProductSpace,
    SimplicialSet,
    vertices,
)


class SeriesCapExceeded(RuntimeError):
    """The perturbation series did not terminate within degree + 1 steps."""


# ---------------------------------------------------------------------------
# twisted Cartesian products


class TwistedProduct(SimplicialSet):
    """F x_tau B with d_0(f, b) = (d_0 f . sigma(b), d_0 b) in positive degree.

    ``action(f, g)`` is a right action of the structure group on F; it
    defaults to the group multiplication when F is the group itself.
    """

    def __init__(self, F, B, tau, action=None):
        self.F = F
        self.B = B
        self.tau = tau
        self.G = tau.group
        self.action = action or self.G.mul
        self.plain = ProductSpace(F, B)
        self.name = f"{F.name}x_{tau.name}{B.name}"
        self.cap = self.plain.cap

    def face(self, s, i):
        if i == 0 and s.degree > 0:
            return Pair(self.action(self.F.face(s.x, 0), self.tau.sigma(s.y)), self.B.face(s.y, 0))
        return self.plain.face(s, i)

    def degeneracy(self, s, i):
        return self.plain.degeneracy(s, i)

    def degen_set(self, s):
        return self.plain.degen_set(s)

    def is_degenerate(self, s):
        return self.plain.is_degenerate(s)

    def nondegenerate(self, n):
        return self.plain.nondegenerate(n)

    def simplices(self, n):
        return self.plain.simplices(n)


def delta(tp, c):
    """(d_0^tau - d_0) on normalized chains; zero in degree 0."""
    out = Chain()
    for s, coef in c.items():
        if s.degree == 0:
            continue
        for f, sign in ((tp.face(s, 0), 1), (tp.plain.face(s, 0), -1)):
            if not tp.plain.is_degenerate(f):
                out.add_term(f, sign * coef)
    return out


def transferred_differential(tp, hname, c, stats=None):
    """d_t = d_(x) + sum_n AW (delta H)^n delta shuffle on C(F) (x) C(B)."""
    F, B = tp.F, tp.B
    H = homotopy(hname)
    out = linear(TensorComplex(F, B).boundary, c)
    n = c.degree
    if n is None:
        return out
    x = delta(tp, shuffle_map(F, B, c))
    steps = 0
    while x:
        out.iadd(aw(F, B, x))
        if steps > n:
            raise SeriesCapExceeded(f"series still nonzero after {steps} steps on degree {n}")
        x = delta(tp, H(F, B, x))
        steps += 1
    if stats is not None:
        stats["steps"] = max(stats.get("steps", 0), steps)
    return out


# ---------------------------------------------------------------------------
# twisting cochains


class TwistingCochain:
    """t: C(B) -> C(G) of degree -1, extracted from the transferred differential."""

    def __init__(self, tp, hname, store=None):
        if tp.F is not tp.G:
            raise ValueError("cochain extraction needs the structure group as fiber")
        homotopy(hname)
        self.tp = tp
        self.B = tp.B
        self.G = tp.G
        self.homotopy = hname
        self.store = store
        self._memo = {}
        if store is not None:
            self._memo.update(store.load(self))

    @property
    def key(self):
        return f"{self.B.name}__{self.G.name}__{self.tp.tau.name}__{self.homotopy}"

    def __call__(self, b):
        if self.B.is_degenerate(b):
            return Chain()
        v = self._memo.get(b)
        if v is None:
            v = self._extract(b)
            self._memo[b] = v
            if self.store is not None:
                self.store.save(self)
        return v

    def _extract(self, b):
        if b.degree == 0:
            return Chain()
        one = self.G.unit(0)
        d = transferred_differential(self.tp, self.homotopy, chain_of(Tensor(one, b)))
        out = Chain()
        for (g, v), coef in d.items():
            if v.degree == 0:
                out.add_term(g, coef)
        return out

    def linear(self, c):
        return linear(self, c)

    def values_json(self):
        return {
            _skey(b): v.to_json()
            for b, v in sorted(self._memo.items(), key=lambda bv: _skey(bv[0]))
        }


def _skey(b):
    return json.dumps(b.to_json(), sort_keys=True)


def extract_twisting_cochain(tp, hname, store=None):
    return TwistingCochain(tp, hname, store=store)


class CochainStore:
    """Cochain values persisted as ``cochains/<key>.json`` under a root directory."""

    ENV = "EZTWIST_MEMO_DIR"

    def __init__(self, root=None):
        root = root or os.environ.get(self.ENV)
        if not root:
            raise ValueError(f"no memo directory given and {self.ENV} unset")
        self.dir = os.path.join(root, "cochains")

    def path(self, t):
        name = re.sub(r"[^A-Za-z0-9_.@-]+", "_", t.key)
        return os.path.join(self.dir, f"{name}.json")

    def load(self, t):
        try:
            with open(self.path(t)) as fh:
                obj = json.load(fh)
        except FileNotFoundError:
            return {}
        out = {}
        for key, terms in obj["values"].items():
            b = _simplex_from_json(t.B, json.loads(key))
            ch = Chain()
            for term in terms:
                ch.add_term(t.G.element_from_json(term["b"]), term["c"])
            out[b] = ch
        return out

    def save(self, t):
        os.makedirs(self.dir, exist_ok=True)
        obj = {"key": t.key, "homotopy": t.homotopy, "values": t.values_json()}
        tmp = self.path(t) + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(obj, fh, sort_keys=True, indent=1)
        os.replace(tmp, self.path(t))


def _simplex_from_json(B, obj):
    from .simplicial import SimplexRef, gen_from_json

    gen = gen_from_json(obj["gen"])
    degens = tuple(obj["degens"])
    return SimplexRef(B.gen_degree(gen) + len(degens), degens, gen)


# ---------------------------------------------------------------------------
# products in C(G) and the twisted tensor complex


def pontryagin_product(G, c1, c2):
    """C(G) (x) C(G) -> C(G x G) -> C(G)."""
    out = Chain()
    for a, ca in c1.items():
        for b, cb in c2.items():
            prod = shuffle_map(G, G, chain_of(Tensor(a, b)))
            for s, k in prod.items():
                v = G.mul(s.x, s.y)
                if not G.is_degenerate(v):
                    out.add_term(v, ca * cb * k)
    return out


def action_product(F, G, action, cf, cg):
    """mu(cf (x) cg) = action o shuffle, normalized in F."""
    out = Chain()
    for a, ca in cf.items():
        for b, cb in cg.items():
            prod = shuffle_map(F, G, chain_of(Tensor(a, b)))
            for s, k in prod.items():
                v = action(s.x, s.y)
                if not F.is_degenerate(v):
                    out.add_term(v, ca * cb * k)
    return out


def diagonal(B, b):
    """AW of the diagonal: sum_k d_{k+1}..d_n b (x) d_0..d_{k-1} b."""
    return _aw_basis(B, B, Pair(b, b))


class TwistedTensorComplex:
    """C(F) (x)_t C(B) with d_t = d_(x) + (mu (x) 1)(1 (x) t (x) 1)(1 (x) Delta)."""

    def __init__(self, F, B, t, action=None):
        self.F = F
        self.B = B
        self.t = t
        self.G = t.G
        self.action = action or self.G.mul
        self.plain = TensorComplex(F, B)
        self.name = f"{F.name}(x)_t{B.name}"

    def basis(self, n):
        return self.plain.basis(n)

    def boundary(self, x):
        f, b = x
        out = self.plain.boundary(x)
        sign = -1 if f.degree & 1 else 1
        for (front, back), coef in diagonal(self.B, b).items():
            if front.degree == 0:
                continue
            tv = self.t(front)
            if not tv:
                continue
            for v, k in action_product(self.F, self.G, self.action, chain_of(f), tv).items():
                out.add_term(Tensor(v, back), sign * coef * k)
        return out


def twisted_tensor_complex(F, B, t, action=None):
    return TwistedTensorComplex(F, B, t, action=action)


class SeriesComplex:
    """C(F) (x) C(B) with the series form of d_t; same basis as the formula form."""

    def __init__(self, tp, hname):
        self.tp = tp
        self.hname = hname
        self.plain = TensorComplex(tp.F, tp.B)
        self.name = f"{tp.name}[series {hname}]"

    def basis(self, n):
        return self.plain.basis(n)

    def boundary(self, x):
        return transferred_differential(self.tp, self.hname, chain_of(x))


def square_zero_report(complex_, samples):
    """d o d on every sample basis element."""
    bad = []
    for x in samples:
        dd = linear(complex_.boundary, complex_.boundary(x))
        if dd:
            bad.append({"basis": _skey_any(x), "dd": dd.to_json()})
    return {"checked": len(samples), "violations": bad, "ok": not bad}


def _skey_any(x):
    return json.dumps(x.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# cochain condition


def cup(t, b, G):
    """(t u t)(b) = sum_k (-1)^{k} mu(t(front_k) (x) t(back_k)).

    The sign is the Koszul sign (-1)^{|t| |front|} of evaluating t (x) t
    on front (x) back.
    """
    out = Chain()
    for (front, back), coef in diagonal(t.B, b).items():
        if front.degree == 0 or back.degree == 0:
            continue
        sign = -1 if front.degree & 1 else 1
        out.iadd(pontryagin_product(G, t(front), t(back)), sign * coef)
    return out


def check_cochain_condition(t, cap, samples=None):
    """d t(b) + t(d b) = (t u t)(b) on every nondegenerate b up to ``cap``."""
    G, B = t.G, t.B
    checked = 0
    failures = []
    if samples is None:
        samples = [b for n in range(1, cap + 1) for b in B.nondegenerate(n)]
    for b in samples:
        lhs = linear(G.boundary, t(b)) + t.linear(B.boundary(b))
        rhs = cup(t, b, G)
        checked += 1
        if lhs != rhs:
            failures.append({"simplex": _skey(b), "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return {"checked": checked, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# reports on Delta-bar[n]


def right_justified(t, n=None):
    """Every letter of every word in t(e_n) has final vertex n."""
    B = t.B
    if not isinstance(B, BarSimplex) or not isinstance(t.G, LoopGroup):
        raise ValueError("right-justification is defined for Omega(barDelta:n) cochains")
    n = B.n if n is None else n
    top = B.top if n == B.n else None
    if top is None:
        raise ValueError(f"degree {n} does not match {B.name}")
    offenders = []
    for w, coef in t(top).sorted_items():
        for x, _ in w.letters:
            vs = vertices(x)
            if vs is None or vs[-1] != n:
                offenders.append(repr(x))
    return {"n": n, "right_justified": not offenders, "offenders": sorted(set(offenders))}


def normalization_check(t):
    """t(b) = sigma(b) - 1 on every nondegenerate 1-simplex."""
    bad = []
    for b in t.B.nondegenerate(1):
        expected = chain_of(t.tp.tau.sigma(b)) - chain_of(t.G.unit(0))
        if t(b) != expected:
            bad.append(_skey(b))
    return {"ok": not bad, "failures": bad}


def compare_cochains(B, cap, store=None):
    """H- versus H~-based cochains for the canonical loop-group twisting."""
    G = LoopGroup(B)
    tau = canonical_twisting(G)
    tp = TwistedProduct(G, B, tau)
    ts = {h: TwistingCochain(tp, h, store=store) for h in ("h", "hh")}
    rows = []
    for n in range(1, cap + 1):
        for b in B.nondegenerate(n):
            vh, vhh = ts["h"](b), ts["hh"](b)
            diff = vh - vhh
            rows.append({
                "simplex": b.to_json(),
                "degree": n,
                "equal": not diff,
                "h": vh.to_json(),
                "hh": vhh.to_json(),
                "diff": diff.to_json(),
            })
    report = {
        "base": B.name,
        "group": G.name,
        "cap": cap,
        "rows": rows,
        "first_difference_degree": next((r["degree"] for r in rows if not r["equal"]), None),
    }
    for h, t in ts.items():
        report[f"normalization_{h}"] = normalization_check(t)["ok"]
        report[f"cochain_condition_{h}"] = check_cochain_condition(t, cap)["ok"]
        if isinstance(B, BarSimplex) and cap >= B.n:
            report[f"right_justified_{h}"] = right_justified(t)["right_justified"]
    return report


def naturality_check(t, t2, p, q, cap):
    """t2(p_* b) = q_* t(b) on all nondegenerate b of t.B up to ``cap``."""
    bad = []
    for n in range(1, cap + 1):
        for b in t.B.nondegenerate(n):
            pb = p(b)
            lhs = Chain() if t2.B.is_degenerate(pb) else t2(pb)
            rhs = Chain()
            for w, coef in t(b).items():
                v = q(w)
                if not t2.G.is_degenerate(v):
                    rhs.add_term(v, coef)
            if lhs != rhs:
                bad.append(_skey(b))
    return {"ok": not bad, "failures": bad}
