"""Simplicial groups: constant finite groups, Kan loop groups, W-bar, twisting functions."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .simplicial import (
    BASEPOINT,
    GeneratedSimplicialSet,
    SimplexError,
    SimplexRef,
    SimplicialSet,
    gen_from_json,
    gen_to_json,
)


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# finite groups and their constant simplicial groups


class FiniteGroup:
    """Finite group on elements 0..k-1 given by a multiplication table."""

    def __init__(self, table, name=None):
        self.table = [list(row) for row in table]
        k = len(self.table)
        self.order = k
        self.name = name or f"G{k}"
        if any(len(row) != k for row in self.table):
            raise GroupError("multiplication table is not square")
        if any(v not in range(k) for row in self.table for v in row):
            raise GroupError("table entries must be element indices")
        ids = [e for e in range(k) if all(self.table[e][g] == g == self.table[g][e] for g in range(k))]
        if not ids:
            raise GroupError("no identity element")
        self.identity = ids[0]
        self._inv = {}
        for g in range(k):
            inv = [h for h in range(k) if self.table[g][h] == self.identity]
            if len(inv) != 1 or self.table[inv[0]][g] != self.identity:
                raise GroupError(f"element {g} has no two-sided inverse")
            self._inv[g] = inv[0]
        for a, b, c in itertools.product(range(k), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupError(f"not associative at {(a, b, c)}")

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def elements(self):
        return list(range(self.order))


def cyclic_group(k):
    return FiniteGroup([[(a + b) % k for b in range(k)] for a in range(k)], name=f"Z/{k}")


def symmetric_group_3():
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return FiniteGroup(table, name="S3")


class GroupSimplex(NamedTuple):
    degree: int
    elem: object

    def to_json(self):
        return {"g": gen_to_json(self.elem), "degree": self.degree}


class SimplicialGroup(SimplicialSet):
    """Simplicial set whose levels are groups and structure maps homomorphisms."""

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def unit(self, n):
        raise NotImplementedError


class DiscreteGroup(SimplicialGroup):
    """Constant simplicial group on a finite group."""

    def __init__(self, group):
        self.group = group
        self.name = f"K({group.name})"
        self.cap = None

    def face(self, s, i):
        return GroupSimplex(s.degree - 1, s.elem)

    def degeneracy(self, s, i):
        return GroupSimplex(s.degree + 1, s.elem)

    def degen_set(self, s):
        return tuple(range(s.degree))

    def is_degenerate(self, s):
        return s.degree > 0

    def nondegenerate(self, n):
        if n:
            return []
        return [GroupSimplex(0, g) for g in self.group.elements()]

    def simplices(self, n):
        return [GroupSimplex(n, g) for g in self.group.elements()]

    def mul(self, a, b):
        return GroupSimplex(a.degree, self.group.mul(a.elem, b.elem))

    def inv(self, a):
        return GroupSimplex(a.degree, self.group.inv(a.elem))

    def unit(self, n):
        return GroupSimplex(n, self.group.identity)

    def element(self, n, g):
        return GroupSimplex(n, g)

    def element_from_json(self, obj):
        return GroupSimplex(obj["degree"], gen_from_json(obj["g"]))


def discrete_group(table):
    if isinstance(table, FiniteGroup):
        return DiscreteGroup(table)
    return DiscreteGroup(FiniteGroup(table))


def validate_group(G, n, elements):
    """Group axioms and homomorphism property of faces/degeneracies on ``elements``."""
    violations = []
    e = G.unit(n)
    for a in elements:
        if G.mul(a, e) != a or G.mul(e, a) != a:
            violations.append(f"unit fails on {a!r}")
        if G.mul(a, G.inv(a)) != e:
            violations.append(f"inverse fails on {a!r}")
    for a, b in itertools.product(elements, repeat=2):
        ab = G.mul(a, b)
        for i in range(n + 1):
            if n and G.face(ab, i) != G.mul(G.face(a, i), G.face(b, i)):
                violations.append(f"d{i} not multiplicative on {a!r}, {b!r}")
            if G.degeneracy(ab, i) != G.mul(G.degeneracy(a, i), G.degeneracy(b, i)):
                violations.append(f"s{i} not multiplicative on {a!r}, {b!r}")
        for c in elements[:4]:
            if G.mul(ab, c) != G.mul(a, G.mul(b, c)):
                violations.append(f"not associative on {a!r}, {b!r}, {c!r}")
    return violations


# ---------------------------------------------------------------------------
# Kan loop group


class Word(NamedTuple):
    """Freely reduced word in generators b-bar, b not in the image of s_0."""

    degree: int
    letters: tuple

    def to_json(self):
        return {"degree": self.degree, "word": [[b.to_json(), e] for b, e in self.letters]}

    def __repr__(self):
        if not self.letters:
            return f"1_{self.degree}"
        return "*".join(f"{b!r}" + ("" if e == 1 else "^-1") for b, e in self.letters)


def _reduce(letters):
    out = []
    for b, e in letters:
        if out and out[-1][0] == b and out[-1][1] == -e:
            out.pop()
        else:
            out.append((b, e))
    return tuple(out)


def is_reduced(letters):
    return all(
        not (letters[j][0] == letters[j + 1][0] and letters[j][1] == -letters[j + 1][1])
        for j in range(len(letters) - 1)
    )


class LoopGroup(SimplicialGroup):
    """Kan loop group of a reduced generated simplicial set B.

    Level n is free on the (n+1)-simplices of B outside the image of s_0.
    On generators, d_0 b = (d_0 b)^-1 (d_1 b), d_i b = d_{i+1} b for i >= 1,
    s_i b = s_{i+1} b.
    """

    def __init__(self, B):
        if not isinstance(B, GeneratedSimplicialSet):
            raise GroupError("loop group needs a generated simplicial set")
        if len(B.generators(0)) != 1:
            raise GroupError(f"{B.name} is not reduced (needs exactly one vertex)")
        self.B = B
        self.name = f"Omega({B.name})"
        self.cap = None if B.cap is None else B.cap - 1

    def gen(self, b):
        """b-bar in degree deg(b) - 1; identity when b = s_0 c."""
        if b.degree < 1:
            raise GroupError("loop group generators come from positive degrees")
        if 0 in b.degens:
            return Word(b.degree - 1, ())
        return Word(b.degree - 1, ((b, 1),))

    def generators(self, n):
        """Letters of level n: the (n+1)-simplices of B outside im s_0."""
        return [b for b in self.B.simplices(n + 1) if 0 not in b.degens]

    def mul(self, a, b):
        return Word(a.degree, _reduce(a.letters + b.letters))

    def inv(self, a):
        return Word(a.degree, tuple((b, -e) for b, e in reversed(a.letters)))

    def unit(self, n):
        return Word(n, ())

    def element_from_json(self, obj):
        letters = []
        for bj, e in obj["word"]:
            gen = gen_from_json(bj["gen"])
            degens = tuple(bj["degens"])
            letters.append((SimplexRef(self.B.gen_degree(gen) + len(degens), degens, gen), e))
        return Word(obj["degree"], tuple(letters))

    def power(self, w, e):
        return w if e == 1 else self.inv(w)

    def _letter_face(self, b, e, i):
        B = self.B
        if i == 0:
            w = self.mul(self.inv(self.gen(B.face(b, 0))), self.gen(B.face(b, 1)))
        else:
            w = self.gen(B.face(b, i + 1))
        return w if e == 1 else self.inv(w)

    def face(self, s, i):
        letters = []
        for b, e in s.letters:
            letters.extend(_letter_face_cached(self, b, e, i))
        return Word(s.degree - 1, _reduce(letters))

    def degeneracy(self, s, i):
        letters = tuple((self.B.degeneracy(b, i + 1), e) for b, e in s.letters)
        return Word(s.degree + 1, letters)

    def degen_set(self, s):
        return _loop_degen_set(self, s)

    def is_degenerate(self, s):
        return bool(self.degen_set(s))

    def nondegenerate(self, n):
        raise SimplexError(f"{self.name}: level {n} is infinite")

    def words(self, n, max_length):
        """Nondegenerate reduced words of level n up to a given length."""
        letters = [(b, e) for b in self.generators(n) for e in (1, -1)]
        out = [] if n else [self.unit(0)]
        frontier = [()]
        for _ in range(max_length):
            nxt = []
            for w in frontier:
                for le in letters:
                    if w and w[-1][0] == le[0] and w[-1][1] == -le[1]:
                        continue
                    nxt.append(w + (le,))
            for w in nxt:
                word = Word(n, w)
                if not self.is_degenerate(word):
                    out.append(word)
            frontier = nxt
        return out

    def final_vertices(self, w):
        """Final vertex of the B-simplex under each letter of w."""
        from .simplicial import vertices

        return [vertices(b)[-1] if b.gen != BASEPOINT else None for b, _ in w.letters]


@lru_cache(maxsize=None)
def _letter_face_cached(G, b, e, i):
    return G._letter_face(b, e, i).letters


@lru_cache(maxsize=None)
def _loop_degen_set(G, s):
    n = s.degree
    return tuple(j for j in range(n) if G.degeneracy(G.face(s, j), j) == s)


def kan_loop_group(B):
    return LoopGroup(B)


# ---------------------------------------------------------------------------
# W-bar of a finite group


class WBar(GeneratedSimplicialSet):
    """Classifying space: n-simplices are n-tuples over G.

    d_0 drops the first entry, d_n the last, d_i (0 < i < n) multiplies
    entries i and i+1 (1-based).  s_i inserts the identity at position i.
    A tuple is nondegenerate iff it has no identity entry.
    """

    def __init__(self, group, cap=6):
        self.group = group
        self.name = f"Wbar({group.name})"
        self.cap = cap

    def generators(self, n):
        self.check_cap(n)
        e = self.group.identity
        others = [g for g in self.group.elements() if g != e]
        return list(itertools.product(others, repeat=n))

    def gen_degree(self, gen):
        return len(gen)

    def tuple_face(self, t, i):
        n = len(t)
        if i == 0:
            return t[1:]
        if i == n:
            return t[:-1]
        return t[: i - 1] + (self.group.mul(t[i - 1], t[i]),) + t[i + 1:]

    def from_tuple(self, t):
        e = self.group.identity
        degens = tuple(j for j, g in enumerate(t) if g == e)
        return SimplexRef(len(t), degens, tuple(g for g in t if g != e))

    def to_tuple(self, s):
        e = self.group.identity
        it = iter(s.gen)
        return tuple(e if j in s.degens else next(it) for j in range(s.degree))

    def gen_face(self, gen, i):
        return self.from_tuple(self.tuple_face(gen, i))


def wbar(group, cap=6):
    return WBar(group, cap=cap)


# ---------------------------------------------------------------------------
# twisting functions


class TwistingFunction:
    """tau: B_{>0} -> G with d_0 tau(b) = tau(d_0 b)^-1 tau(d_1 b).

    ``rule`` is evaluated on nondegenerate simplices only; degenerate
    values follow from tau(s_0 b) = 1 and tau(s_{i+1} b) = s_i tau(b).
    """

    def __init__(self, base, group, rule, name="tau"):
        self.base = base
        self.group = group
        self.rule = rule
        self.name = name
        self._memo = {}

    def __call__(self, b):
        v = self._memo.get(b)
        if v is None:
            v = self._eval(b)
            self._memo[b] = v
        return v

    def _eval(self, b):
        n = b.degree
        if n < 1:
            raise GroupError("twisting functions are defined in positive degree")
        D = self.base.degen_set(b)
        if not D:
            v = self.rule(b)
            if v.degree != n - 1:
                raise GroupError(f"tau({b!r}) has degree {v.degree}, expected {n - 1}")
            return v
        if 0 in D:
            return self.group.unit(n - 1)
        j = D[-1]
        return self.group.degeneracy(self(self.base.face(b, j)), j - 1)

    def sigma(self, b):
        """The right-action twisting function tau(b)^-1."""
        return self.group.inv(self(b))

    def to_json(self, cap):
        values = {}
        for n in range(1, cap + 1):
            for b in self.base.nondegenerate(n):
                values[_key(b)] = self(b).to_json()
        return {"base": self.base.name, "group": self.group.name, "values": values}


def _key(b):
    import json

    return json.dumps(b.to_json(), sort_keys=True)


def canonical_twisting(G):
    """tau(b) = b-bar into the loop group G = Omega B."""
    return TwistingFunction(G.B, G, G.gen, name="canonical")


def trivial_twisting(base, group):
    return TwistingFunction(base, group, lambda b: group.unit(b.degree - 1), name="trivial")


def twisting_from_values(base, group, values, name="tau"):
    """Twisting function into a constant group from generator -> element values.

    ``values`` maps nondegenerate generators (or their JSON keys) to group
    elements; unspecified generators map to the identity.
    """
    table = {}
    for k, v in values.items():
        table[_parse_gen_key(k)] = v

    def rule(b):
        g = table.get(b.gen, table.get(gen_to_json_key(b.gen), group.group.identity))
        return GroupSimplex(b.degree - 1, g)

    return TwistingFunction(base, group, rule, name=name)


def gen_to_json_key(gen):
    import json

    return json.dumps(gen_to_json(gen))


def _parse_gen_key(k):
    import json

    if isinstance(k, str):
        try:
            obj = json.loads(k)
        except ValueError:
            return k
        if isinstance(obj, dict) and "gen" in obj:
            return gen_from_json(obj["gen"])
        return gen_from_json(obj)
    return k


def twisting_from_json(obj, base, group):
    return twisting_from_values(base, group, obj.get("values", {}), name=obj.get("name", "json"))


WBAR_CONVENTIONS = ("first", "last", "first-inverse", "last-inverse")


def wbar_twisting(W, G, convention=None, cap=None):
    """Canonical twisting W-bar(G) -> K(G): one coordinate, possibly inverted.

    Without an explicit convention the candidates are run through the
    validator up to ``cap`` in a fixed order and the first passing one is
    returned.  For non-abelian G only "first-inverse" survives.
    """
    cap = W.cap if cap is None else cap
    grp = W.group

    def make(conv):
        idx = 0 if conv.startswith("first") else -1
        inv = conv.endswith("inverse")

        def rule(b):
            g = W.to_tuple(b)[idx]
            return GroupSimplex(b.degree - 1, grp.inv(g) if inv else g)

        return TwistingFunction(W, G, rule, name=f"wbar-{conv}")

    if convention is not None:
        if convention not in WBAR_CONVENTIONS:
            raise GroupError(f"unknown W-bar convention {convention!r}")
        return make(convention)
    for conv in WBAR_CONVENTIONS:
        tau = make(conv)
        if not validate_twisting_function(tau, cap):
            return tau
    raise GroupError("no W-bar projection satisfies the twisting identities")


def validate_twisting_function(tau, cap):
    """All twisting identities on every simplex of degree 1..cap."""
    B, G = tau.base, tau.group
    violations = []
    for n in range(1, cap + 1):
        for b in B.simplices(n):
            try:
                t = tau(b)
            except (GroupError, SimplexError) as exc:
                violations.append(f"tau({b!r}) undefined: {exc}")
                continue
            if n >= 2:
                lhs = G.face(t, 0)
                rhs = G.mul(G.inv(tau(B.face(b, 0))), tau(B.face(b, 1)))
                if lhs != rhs:
                    violations.append(f"d0 tau({b!r}) = {lhs!r} != tau(d0 b)^-1 tau(d1 b) = {rhs!r}")
                for i in range(1, n):
                    if G.face(t, i) != tau(B.face(b, i + 1)):
                        violations.append(f"d{i} tau({b!r}) != tau(d{i + 1} b)")
            for i in range(n):
                if G.degeneracy(t, i) != tau(B.degeneracy(b, i + 1)):
                    violations.append(f"s{i} tau({b!r}) != tau(s{i + 1} b)")
        for c in B.simplices(n - 1):
            if tau(B.degeneracy(c, 0)) != G.unit(n - 1):
                violations.append(f"tau(s0 {c!r}) is not the identity")
    return violations


class RawTwisting(TwistingFunction):
    """Values taken literally on every simplex (no fill-in); for testing validators."""

    def _eval(self, b):
        return self.rule(b)


def induced_group_map(tau, loop):
    """q_tau: Omega B -> G with q(b-bar) = tau(b), extended multiplicatively."""
    G = tau.group

    def q(w):
        out = G.unit(w.degree)
        for b, e in w.letters:
            v = tau(b)
            out = G.mul(out, v if e == 1 else G.inv(v))
        return out

    return q


def validate_group_map(q, source, target, samples):
    violations = []
    for w in samples:
        n = w.degree
        for i in range(n + 1):
            if n and q(source.face(w, i)) != target.face(q(w), i):
                violations.append(f"q does not commute with d{i} on {w!r}")
            if q(source.degeneracy(w, i)) != target.degeneracy(q(w), i):
                violations.append(f"q does not commute with s{i} on {w!r}")
    for a in samples:
        for b in samples:
            if a.degree == b.degree and q(source.mul(a, b)) != target.mul(q(a), q(b)):
                violations.append(f"q not multiplicative on {a!r}, {b!r}")
    return violations


# ---------------------------------------------------------------------------
# reduced base


class ReducedBase(GeneratedSimplicialSet):
    """B with all vertices identified to a single vertex ``*``."""

    def __init__(self, B):
        self.B = B
        self.name = f"reduce({B.name})"
        self.cap = B.cap

    def generators(self, n):
        if n == 0:
            return [BASEPOINT]
        return self.B.generators(n)

    def gen_degree(self, gen):
        return 0 if gen == BASEPOINT else self.B.gen_degree(gen)

    def gen_face(self, gen, i):
        f = self.B._gen_face(gen, i)
        if f.gen_degree == 0:
            return SimplexRef(f.degree, f.degens, BASEPOINT)
        return f

    def project(self, b):
        if b.gen_degree == 0:
            return SimplexRef(b.degree, b.degens, BASEPOINT)
        return b


def reduce_base(B):
    """(reduced space, simplex projection)."""
    if isinstance(B, GeneratedSimplicialSet) and len(B.generators(0)) == 1:
        return B, (lambda b: b)
    R = ReducedBase(B)
    return R, R.project


def transport_twisting(tau, R, project):
    """The twisting function on the reduced base induced by tau."""
    lift = {}

    def rule(b):
        if b not in lift:
            for c in tau.base.nondegenerate(b.degree):
                if project(c) == b:
                    lift[b] = c
                    break
            else:
                raise GroupError(f"{b!r} has no preimage")
        return tau(lift[b])

    return TwistingFunction(R, tau.group, rule, name=f"reduced-{tau.name}")
