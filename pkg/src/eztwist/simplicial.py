"""Simplicial sets with Eilenberg-Zilber canonical forms.

A simplex of a generated simplicial set is stored as ``SimplexRef(degree,
degens, gen)``: the nondegenerate generator ``gen`` with the strictly
increasing degeneracy index set ``degens`` applied as
``s_{a_p} ... s_{a_1} gen``.  That pair is unique, so simplices hash and
compare by value.

Other spaces (products, opposites, simplicial groups, twisted products)
implement the same small protocol::

    face(s, i)  degeneracy(s, i)  degen_set(s)  is_degenerate(s)
    nondegenerate(n)  simplices(n)  boundary(s)  basis(n)

Every simplex object carries its own ``degree``.
"""

from __future__ import annotations

import itertools
import json
import re
from functools import lru_cache
from typing import Hashable, Iterable, NamedTuple

from .chains import Chain


class SimplexError(ValueError):
    """Invalid simplex, index or space description."""


class CapExceeded(SimplexError):
    """A degree above the declared cap of a space was requested."""


class SimplexRef(NamedTuple):
    degree: int
    degens: tuple
    gen: Hashable

    @property
    def gen_degree(self):
        return self.degree - len(self.degens)

    def to_json(self):
        return {"degens": list(self.degens), "gen": gen_to_json(self.gen)}

    def __repr__(self):
        if not self.degens:
            return f"<{self.gen!r}>"
        ops = "".join(f"s{j}" for j in reversed(self.degens))
        return f"<{ops} {self.gen!r}>"


class Pair(NamedTuple):
    """Simplex of a product space: two simplices of equal degree."""

    x: object
    y: object

    @property
    def degree(self):
        return self.x.degree

    def to_json(self):
        return {"pair": [basis_to_json(self.x), basis_to_json(self.y)]}


def gen_to_json(gen):
    if isinstance(gen, tuple):
        return [gen_to_json(g) for g in gen]
    return gen


def gen_from_json(obj):
    if isinstance(obj, list):
        return tuple(gen_from_json(g) for g in obj)
    return obj


def basis_to_json(b):
    return b.to_json()


def surjection(n, degens):
    """Monotone surjection [n] -> [n - |degens|] with repeats at ``degens``."""
    out = [0] * (n + 1)
    v = 0
    for j in range(n):
        if j not in degens:
            v += 1
        out[j + 1] = v
    return out


def degens_of_surjection(sigma):
    return tuple(j for j in range(len(sigma) - 1) if sigma[j] == sigma[j + 1])


# ---------------------------------------------------------------------------
# base protocol


class SimplicialSet:
    """Base class; subclasses provide face/degeneracy on their simplices."""

    name = "?"
    cap = None

    def face(self, s, i):
        raise NotImplementedError

    def degeneracy(self, s, i):
        raise NotImplementedError

    def degen_set(self, s):
        """Indices j with s in the image of s_j."""
        n = s.degree
        return tuple(j for j in range(n) if self.degeneracy(self.face(s, j), j) == s)

    def is_degenerate(self, s):
        return bool(self.degen_set(s))

    def nondegenerate(self, n):
        raise SimplexError(f"{self.name}: level {n} is not enumerable")

    def simplices(self, n):
        """All n-simplices, degenerate ones included."""
        out = []
        for k in range(n + 1):
            for g in self.nondegenerate(k):
                for d in itertools.combinations(range(n), n - k):
                    out.append(iter_degeneracy(self, g, d))
        return out

    def basis(self, n):
        return self.nondegenerate(n) if n >= 0 else []

    def boundary(self, s):
        """Normalized differential of a basis simplex."""
        n = s.degree
        out = Chain()
        if n == 0:
            return out
        for i in range(n + 1):
            f = self.face(s, i)
            if not self.is_degenerate(f):
                out.add_term(f, -1 if i & 1 else 1)
        return out

    def check_cap(self, n):
        if self.cap is not None and n > self.cap:
            raise CapExceeded(f"{self.name}: degree {n} exceeds cap {self.cap}")

    def __repr__(self):
        return self.name


def face(X, s, i):
    if not 0 <= i <= s.degree:
        raise SimplexError(f"face index {i} out of range for degree {s.degree}")
    return X.face(s, i)


def degeneracy(X, s, i):
    if not 0 <= i <= s.degree:
        raise SimplexError(f"degeneracy index {i} out of range for degree {s.degree}")
    return X.degeneracy(s, i)


def iter_face(X, s, p, q):
    """d_p d_{p+1} ... d_q s; the empty range q = p - 1 returns s."""
    n = s.degree
    if not (0 <= p <= q + 1 <= n + 1):
        raise SimplexError(f"invalid face range {p}..{q} on degree {n}")
    # d_p d_{p+1} = d_p d_p, so the composite deletes positions p..q
    for _ in range(q - p + 1):
        s = X.face(s, p)
    return s


def iter_degeneracy(X, s, alpha: Iterable[int]):
    """s_{a_p} ... s_{a_1} s for strictly increasing alpha."""
    prev = -1
    for a in alpha:
        if a <= prev or a > s.degree:
            raise SimplexError(f"invalid degeneracy index set {tuple(alpha)}")
        s = X.degeneracy(s, a)
        prev = a
    return s


# ---------------------------------------------------------------------------
# generated spaces


class GeneratedSimplicialSet(SimplicialSet):
    """Space given by nondegenerate generators and their faces.

    Subclasses implement ``generators(n)`` and ``gen_face(gen, i)``; the
    latter returns a SimplexRef of degree one less.
    """

    def generators(self, n):
        raise NotImplementedError

    def gen_face(self, gen, i):
        raise NotImplementedError

    def gen_degree(self, gen):
        raise NotImplementedError

    def simplex(self, gen, degens=()):
        return SimplexRef(self.gen_degree(gen) + len(degens), tuple(degens), gen)

    def nondegenerate(self, n):
        self.check_cap(n)
        return [SimplexRef(n, (), g) for g in self.generators(n)]

    def degen_set(self, s):
        return s.degens

    def is_degenerate(self, s):
        return bool(s.degens)

    def degeneracy(self, s, i):
        D = s.degens
        return SimplexRef(
            s.degree + 1,
            tuple(j for j in D if j < i) + (i,) + tuple(j + 1 for j in D if j >= i),
            s.gen,
        )

    def face(self, s, i):
        D = s.degens
        n = s.degree
        if i in D or (i - 1) in D:
            nd = [j for j in D if j < i - 1]
            if (i - 1) in D and i in D:
                nd.append(i - 1)
            nd.extend(j - 1 for j in D if j > i)
            return SimplexRef(n - 1, tuple(nd), s.gen)
        sigma = surjection(n, D)
        k = sigma[i]
        g = self._gen_face(s.gen, k)
        # sigma with position i removed and values above k lowered
        sig2 = [v if v < k else v - 1 for v in sigma[:i]] + [v - 1 for v in sigma[i + 1:]]
        E = g.degens
        nd = tuple(
            j for j in range(n - 1)
            if sig2[j] == sig2[j + 1] or sig2[j] in E
        )
        return SimplexRef(n - 1, nd, g.gen)

    def _gen_face(self, gen, i):
        return _cached_gen_face(self, gen, i)

    def to_json(self, cap=None):
        cap = self.cap if cap is None else cap
        if cap is None:
            raise SimplexError("to_json needs a cap")
        gens = {str(n): [gen_to_json(g) for g in self.generators(n)] for n in range(cap + 1)}
        faces = {}
        for n in range(1, cap + 1):
            for g in self.generators(n):
                faces[json.dumps(gen_to_json(g))] = [
                    self._gen_face(g, i).to_json() for i in range(n + 1)
                ]
        return {"name": self.name, "cap": cap, "generators": gens, "faces": faces}


@lru_cache(maxsize=None)
def _cached_gen_face(X, gen, i):
    f = X.gen_face(gen, i)
    if not isinstance(f, SimplexRef):
        raise SimplexError(f"{X.name}: face of {gen!r} is not a simplex reference")
    return f


class FiniteSimplicialSet(GeneratedSimplicialSet):
    """Simplicial set given by explicit generator and face tables."""

    def __init__(self, name, cap, generators, faces):
        self.name = name
        self.cap = cap
        self._gens = {int(n): list(ids) for n, ids in generators.items()}
        self._degree = {}
        for n, ids in self._gens.items():
            for g in ids:
                if g in self._degree:
                    raise SimplexError(f"generator {g!r} listed twice")
                self._degree[g] = n
        self._faces = {}
        for g, fs in faces.items():
            if g not in self._degree:
                raise SimplexError(f"faces given for unknown generator {g!r}")
            self._faces[g] = list(fs)

    @classmethod
    def from_json(cls, obj):
        gens = {n: [gen_from_json(g) for g in ids] for n, ids in obj["generators"].items()}
        known = {g for ids in gens.values() for g in ids}
        faces = {}
        for key, fs in obj.get("faces", {}).items():
            g = key
            if g not in known:
                try:
                    g = gen_from_json(json.loads(key))
                except ValueError:
                    pass
            faces[g] = [
                {"degens": tuple(f.get("degens", ())), "gen": gen_from_json(f["gen"])}
                for f in fs
            ]
        X = cls(obj.get("name", "json"), obj.get("cap"), gens, {})
        for g, fs in faces.items():
            if g not in X._degree:
                raise SimplexError(f"faces given for unknown generator {g!r}")
            X._faces[g] = [
                SimplexRef(X._degree[g] - 1, f["degens"], f["gen"]) for f in fs
            ]
        return X

    def generators(self, n):
        self.check_cap(n)
        return list(self._gens.get(n, []))

    def gen_degree(self, gen):
        try:
            return self._degree[gen]
        except KeyError:
            raise SimplexError(f"{self.name}: unknown generator {gen!r}") from None

    def gen_face(self, gen, i):
        n = self.gen_degree(gen)
        fs = self._faces.get(gen)
        if fs is None or len(fs) != n + 1:
            raise SimplexError(f"{self.name}: face table of {gen!r} incomplete")
        return fs[i]


class StandardSimplex(GeneratedSimplicialSet):
    """Delta[n]; generators are strictly increasing vertex tuples."""

    def __init__(self, n):
        self.n = n
        self.name = f"Delta:{n}"
        self.cap = None

    def generators(self, k):
        if k > self.n:
            return []
        return list(itertools.combinations(range(self.n + 1), k + 1))

    def nondegenerate(self, k):
        return [SimplexRef(k, (), g) for g in self.generators(k)]

    def gen_degree(self, gen):
        return len(gen) - 1

    def gen_face(self, gen, i):
        return SimplexRef(len(gen) - 2, (), gen[:i] + gen[i + 1:])

    @property
    def top(self):
        """The fundamental simplex iota_n."""
        return SimplexRef(self.n, (), tuple(range(self.n + 1)))

    def from_vertices(self, verts):
        verts = tuple(verts)
        degens = tuple(j for j in range(len(verts) - 1) if verts[j] == verts[j + 1])
        gen = tuple(v for j, v in enumerate(verts) if j == 0 or verts[j - 1] != v)
        return SimplexRef(len(verts) - 1, degens, gen)


BASEPOINT = "*"


class BarSimplex(GeneratedSimplicialSet):
    """Delta[n] with all vertices identified to one vertex ``*``."""

    def __init__(self, n):
        self.n = n
        self.name = f"barDelta:{n}"
        self.cap = None

    def generators(self, k):
        if k == 0:
            return [BASEPOINT]
        if k > self.n:
            return []
        return list(itertools.combinations(range(self.n + 1), k + 1))

    def nondegenerate(self, k):
        return [SimplexRef(k, (), g) for g in self.generators(k)]

    def gen_degree(self, gen):
        return 0 if gen == BASEPOINT else len(gen) - 1

    def gen_face(self, gen, i):
        f = gen[:i] + gen[i + 1:]
        if len(f) == 1:
            return SimplexRef(0, (), BASEPOINT)
        return SimplexRef(len(f) - 1, (), f)

    @property
    def top(self):
        """The fundamental simplex e_n."""
        return SimplexRef(self.n, (), tuple(range(self.n + 1)))


def std_delta(n):
    return StandardSimplex(n)


def bar_delta(n):
    return BarSimplex(n)


def vertices(s):
    """Vertex sequence of a simplex of Delta[n] or barDelta[n]."""
    if s.gen == BASEPOINT:
        return None
    sigma = surjection(s.degree, s.degens)
    return tuple(s.gen[v] for v in sigma)


# ---------------------------------------------------------------------------
# products and opposites


class ProductSpace(SimplicialSet):
    def __init__(self, X, Y):
        self.X = X
        self.Y = Y
        self.name = f"product({X.name},{Y.name})"
        caps = [c for c in (X.cap, Y.cap) if c is not None]
        self.cap = min(caps) if caps else None

    def face(self, s, i):
        return Pair(self.X.face(s.x, i), self.Y.face(s.y, i))

    def degeneracy(self, s, i):
        return Pair(self.X.degeneracy(s.x, i), self.Y.degeneracy(s.y, i))

    def degen_set(self, s):
        dy = self.Y.degen_set(s.y)
        return tuple(j for j in self.X.degen_set(s.x) if j in dy)

    def is_degenerate(self, s):
        dx = self.X.degen_set(s.x)
        if not dx:
            return False
        dy = self.Y.degen_set(s.y)
        return any(j in dy for j in dx)

    def nondegenerate(self, n):
        self.check_cap(n)
        xs = self.X.simplices(n)
        ys = self.Y.simplices(n)
        out = []
        for x in xs:
            dx = self.X.degen_set(x)
            for y in ys:
                dy = self.Y.degen_set(y)
                if not any(j in dy for j in dx):
                    out.append(Pair(x, y))
        return out

    def simplices(self, n):
        return [Pair(x, y) for x in self.X.simplices(n) for y in self.Y.simplices(n)]


def product(X, Y):
    return ProductSpace(X, Y)


class OppositeSpace(SimplicialSet):
    """Same simplices; d~_k = d_{n-k} and s~_k = s_{n-k}."""

    def __init__(self, X):
        self.base = X
        self.name = f"opposite({X.name})"
        self.cap = X.cap

    def face(self, s, i):
        return self.base.face(s, s.degree - i)

    def degeneracy(self, s, i):
        return self.base.degeneracy(s, s.degree - i)

    def degen_set(self, s):
        n = s.degree
        return tuple(sorted(n - 1 - j for j in self.base.degen_set(s)))

    def is_degenerate(self, s):
        return self.base.is_degenerate(s)

    def nondegenerate(self, n):
        return self.base.nondegenerate(n)

    def simplices(self, n):
        return self.base.simplices(n)


def opposite(X):
    if isinstance(X, OppositeSpace):
        return X.base
    if isinstance(X, ProductSpace):
        return ProductSpace(opposite(X.X), opposite(X.Y))
    return OppositeSpace(X)


def point_identification(Y):
    """Canonical isomorphism Delta[0] x Y -> Y on simplices."""
    return lambda s: s.y


# ---------------------------------------------------------------------------
# validation


def validate_simplicial(X, cap, samples=None):
    """Check the simplicial identities; returns a list of violation strings."""
    violations = []

    def _check(s):
        n = s.degree
        try:
            fs = [X.face(s, i) for i in range(n + 1)] if n > 0 else []
        except (SimplexError, KeyError, IndexError) as exc:
            violations.append(f"{s!r}: face lookup failed ({exc})")
            return
        for i, f in enumerate(fs):
            if f.degree != n - 1:
                violations.append(f"{s!r}: d{i} has degree {f.degree}, expected {n - 1}")
                return
        for j in range(n + 1):
            for i in range(j):
                if n < 2:
                    continue
                lhs = X.face(fs[j], i)
                rhs = X.face(fs[i], j - 1)
                if lhs != rhs:
                    violations.append(
                        f"{s!r}: d{i} d{j} = {lhs!r} but d{j - 1} d{i} = {rhs!r}"
                    )
        for j in range(n + 1):
            sj = X.degeneracy(s, j)
            if X.face(sj, j) != s or X.face(sj, j + 1) != s:
                violations.append(f"{s!r}: d{j} s{j} or d{j + 1} s{j} is not the identity")
            if not X.is_degenerate(sj):
                violations.append(f"{s!r}: s{j} image not detected as degenerate")
            for i in range(n + 2):
                if i < j:
                    ok = X.face(sj, i) == X.degeneracy(X.face(s, i), j - 1)
                elif i > j + 1:
                    ok = X.face(sj, i) == X.degeneracy(X.face(s, i - 1), j)
                else:
                    continue
                if not ok:
                    violations.append(f"{s!r}: d{i} s{j} violates the mixed identity")

    if samples is None:
        samples = []
        for n in range(cap + 1):
            samples.extend(X.nondegenerate(n))
    for s in samples:
        if s.degree <= cap:
            _check(s)
    return violations


# ---------------------------------------------------------------------------
# mini-language


_TOKEN = re.compile(r"\s*([A-Za-z_]+(?::[^,()\s]+)?|\(|\)|,)")


def parse_space(text, loader=None):
    """Resolve ``Delta:n``, ``barDelta:n``, ``Wbar:k``, ``product(A,B)``,
    ``opposite(A)`` or a path to a JSON space description."""
    text = text.strip()
    if text.endswith(".json"):
        with open(text) as fh:
            return FiniteSimplicialSet.from_json(json.load(fh))
    tokens = [t for t in _TOKEN.findall(text)]
    if "".join(tokens) != text.replace(" ", ""):
        raise SimplexError(f"cannot parse space {text!r}")
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise SimplexError(f"unexpected end of {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok in ("product", "opposite"):
            _expect("(")
            a = expr()
            if tok == "product":
                _expect(",")
                b = expr()
                _expect(")")
                return ProductSpace(a, b)
            _expect(")")
            return opposite(a)
        head, _, arg = tok.partition(":")
        if head == "Delta":
            return StandardSimplex(_int(arg))
        if head == "barDelta":
            return BarSimplex(_int(arg))
        if head == "Wbar":
            from .groups import cyclic_group, wbar

            order, _, cap = arg.partition("@")
            return wbar(cyclic_group(_int(order)), cap=_int(cap) if cap else 6)
        raise SimplexError(f"unknown space {tok!r}")

    def _expect(t):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != t:
            raise SimplexError(f"expected {t!r} in {text!r}")
        pos += 1

    def _int(s):
        try:
            v = int(s)
        except ValueError:
            raise SimplexError(f"bad integer {s!r} in {text!r}") from None
        if v < 0:
            raise SimplexError(f"negative dimension in {text!r}")
        return v

    X = expr()
    if pos != len(tokens):
        raise SimplexError(f"trailing input in {text!r}")
    return X
