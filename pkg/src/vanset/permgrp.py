"""Permutation groups: stabilizer chains, element enumeration, conjugacy classes.

Permutations act on the right.  A permutation is stored as the tuple of images
of the points ``0..n-1`` and the product ``p * q`` means "apply p, then q",
so ``(p * q)[i] == q[p[i]]``.  Conjugation ``x ** g`` is ``g^-1 * x * g``.

Hot loops work on plain tuples; :class:`Permutation` is a ``tuple`` subclass,
so both compare and hash identically and can be mixed freely as dict keys.
"""
from __future__ import annotations

import dataclasses
import math
import re
from functools import reduce
from typing import Callable, Iterable, Sequence

from . import config
from .errors import ConsistencyError, InputError, ResourceError

Perm = tuple  # internal alias: a tuple of images


def _mul(p: Perm, q: Perm) -> Perm:
    return tuple(map(q.__getitem__, p))


def _inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _order(p: Perm) -> int:
    seen = bytearray(len(p))
    result = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = 1
            i = p[i]
            length += 1
        result = math.lcm(result, length)
    return result


class Permutation(tuple):
    """A bijection of ``{0, ..., n-1}`` given by its image array."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if not images:
            raise InputError("permutation degree must be at least 1")
        if sorted(images) != list(range(len(images))):
            raise InputError(f"not a permutation: {images!r}")
        return super().__new__(cls, images)

    @classmethod
    def _trusted(cls, images: Perm) -> Permutation:
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-indexed cycles; points not mentioned are fixed."""
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __mul__(self, other: Perm) -> Permutation:  # type: ignore[override]
        if len(self) != len(other):
            raise InputError("degree mismatch in product")
        return Permutation._trusted(_mul(self, other))

    def __rmul__(self, other):  # tuple * int would otherwise repeat the tuple
        return NotImplemented

    def __pow__(self, k) -> Permutation:
        if isinstance(k, tuple):
            # conjugation x ** g = g^-1 x g
            return Permutation._trusted(_mul(_mul(_inv(k), self), k))
        k = int(k)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result: Perm = tuple(range(len(self)))
        while k:
            if k & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            k >>= 1
        return Permutation._trusted(result)

    def inverse(self) -> Permutation:
        return Permutation._trusted(_inv(self))

    def order(self) -> int:
        return _order(self)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen or self[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            i = self[start]
            while i != start:
                cyc.append(i)
                seen.add(i)
                i = self[i]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        """1-indexed disjoint-cycle notation, ``()`` for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={len(self)})"


def element_order(p: Perm) -> int:
    """Order of ``p``: the lcm of its cycle lengths."""
    return _order(p)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-indexed disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Points may be separated by blanks or commas.  The empty string and ``()``
    denote the identity.
    """
    if degree < 1:
        raise InputError("degree must be at least 1")
    s = text.strip()
    pos = 0
    cycles: list[list[int]] = []
    used: set[int] = set()
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise InputError(f"malformed cycle notation at column {pos + 1}: {text!r}")
        body = m.group(1).replace(",", " ").split()
        cyc = []
        for tok in body:
            if not tok.isdigit():
                raise InputError(f"bad point {tok!r} in {text!r}")
            pt = int(tok)
            if not 1 <= pt <= degree:
                raise InputError(f"point {pt} out of range 1..{degree}")
            if pt in used:
                raise InputError(f"point {pt} repeated in {text!r}")
            used.add(pt)
            cyc.append(pt - 1)
        if cyc:
            cycles.append(cyc)
        pos = m.end()
    return Permutation.from_cycles(cycles, degree)


# ---------------------------------------------------------------------------
# stabilizer chain


class _Chain:
    """Base and strong generating set, built by deterministic Schreier-Sims."""

    def __init__(self, degree: int):
        self.degree = degree
        self.identity: Perm = tuple(range(degree))
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []
        self.trans_inv: list[dict[int, Perm]] = []

    def copy(self) -> _Chain:
        c = _Chain(self.degree)
        c.base = list(self.base)
        c.gens = [list(g) for g in self.gens]
        c.trans = list(self.trans)
        c.trans_inv = list(self.trans_inv)
        return c

    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            beta = g[self.base[level]]
            inv = self.trans_inv[level].get(beta)
            if inv is None:
                return g, level
            g = _mul(g, inv)
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        h, level = self.strip(g)
        return level == len(self.base) and h == self.identity

    def _orbit(self, level: int) -> None:
        b = self.base[level]
        trans = {b: self.identity}
        queue = [b]
        gens = self.gens[level]
        for pt in queue:
            u = trans[pt]
            for s in gens:
                img = s[pt]
                if img not in trans:
                    trans[img] = _mul(u, s)
                    queue.append(img)
        self.trans[level] = trans
        self.trans_inv[level] = {pt: _inv(u) for pt, u in trans.items()}

    def _add_strong(self, h: Perm, lo: int, upto: int) -> None:
        """Add ``h`` (fixing base[:upto]) to levels lo..upto, extending the base."""
        if upto == len(self.base):
            moved = next(i for i in range(self.degree) if h[i] != i)
            self.base.append(moved)
            self.gens.append([])
            self.trans.append({})
            self.trans_inv.append({})
        for level in range(lo, upto + 1):
            # generators at level l must fix base[:l]; h fixes base[:upto]
            self.gens[level].append(h)
            self._orbit(level)

    def add_generator(self, g: Perm) -> bool:
        """Extend the group by ``g``; returns False if ``g`` was already a member."""
        h, j = self.strip(g)
        if j == len(self.base) and h == self.identity:
            return False
        # h fixes base[:j]; as a new strong generator it belongs to levels 0..j
        self._add_strong(h, 0, j)
        self._complete(j)
        return True

    def _complete(self, i: int) -> None:
        while i >= 0:
            restart = None
            trans = self.trans[i]
            inv = self.trans_inv[i]
            for beta, u in list(trans.items()):
                for s in self.gens[i]:
                    img = s[beta]
                    sg = _mul(_mul(u, s), inv[img])
                    if sg == self.identity:
                        continue
                    h, j = self.strip(sg, i + 1)
                    if j < len(self.base) or h != self.identity:
                        self._add_strong(h, i + 1, j)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain.

    Values are treated as immutable.  Derived data (elements, classes,
    lattices, tables) is memoized in ``_cache`` by the modules that compute
    it.
    """

    def __init__(self, generators: Iterable[Perm], degree: int | None = None,
                 _chain: _Chain | None = None):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise InputError("degree required for a group without generators")
            degree = len(gens[0])
        if degree < 1:
            raise InputError("degree must be at least 1")
        for g in gens:
            if len(g) != degree:
                raise InputError(f"generator degree {len(g)} != {degree}")
        self.degree = degree
        ident = tuple(range(degree))
        self.generators: tuple[Permutation, ...] = tuple(
            Permutation._trusted(g) for g in gens if g != ident
        )
        if _chain is None:
            _chain = _Chain(degree)
            for g in self.generators:
                _chain.add_generator(g)
        self._chain = _chain
        self.order: int = _chain.order()
        self._cache: dict = {}

    # -- basic queries -----------------------------------------------------
    @property
    def identity(self) -> Permutation:
        return Permutation._trusted(self._chain.identity)

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._chain.base)

    def transversal_sizes(self) -> list[int]:
        return [len(t) for t in self._chain.trans]

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            return False
        return self._chain.contains(tuple(g))

    __contains__ = contains

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(_mul(a, b) == _mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def subgroup(self, gens: Iterable[Perm]) -> PermGroup:
        """Subgroup generated by ``gens`` (assumed to lie in this group)."""
        return PermGroup(gens, self.degree)

    def extended(self, gens: Iterable[Perm]) -> PermGroup:
        """Group generated by this group and ``gens``, reusing the chain."""
        chain = self._chain.copy()
        new = list(self.generators)
        for g in gens:
            if chain.add_generator(tuple(g)):
                new.append(g)
        return PermGroup(new, self.degree, _chain=chain)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.order <= other.order and all(other.contains(g) for g in self.generators)

    def same_as(self, other: PermGroup) -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    def cached(self, key, compute: Callable):
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = compute()
            return val

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermGroup(<{gens}>, degree={self.degree}, order={self.order})"


def build_group(generators: Sequence[Perm], degree: int | None = None) -> PermGroup:
    """Group generated by ``generators``; all must share one degree."""
    if not generators and degree is None:
        raise InputError("empty generator list needs an explicit degree")
    degrees = {len(g) for g in generators}
    if len(degrees) > 1:
        raise InputError(f"inconsistent generator degrees {sorted(degrees)}")
    return PermGroup(generators, degree)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup([], degree)


# ---------------------------------------------------------------------------
# element enumeration


@dataclasses.dataclass(frozen=True)
class _Elements:
    perms: list[Perm]
    index: dict[Perm, int]


def _element_data(G: PermGroup, cap: int | None = None) -> _Elements:
    cap = config.get().cap_elements if cap is None else cap
    if G.order > cap:
        raise ResourceError(f"group order {G.order} exceeds element cap {cap}")
    data = G._cache.get("elements")
    if data is None:
        chain = G._chain
        elems: list[Perm] = [chain.identity]
        for level in reversed(range(len(chain.base))):
            reps = list(chain.trans[level].values())
            elems = [_mul(s, u) for s in elems for u in reps]
        if len(elems) != G.order:
            raise ConsistencyError("enumeration does not match chain order")
        index = {p: i for i, p in enumerate(elems)}
        if len(index) != len(elems):
            raise ConsistencyError("duplicate elements in enumeration")
        data = G._cache["elements"] = _Elements(elems, index)
    return data


def elements(G: PermGroup, cap: int | None = None) -> list[Permutation]:
    """All elements of ``G`` exactly once, in transversal-product order."""
    return [Permutation._trusted(p) for p in _element_data(G, cap).perms]


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclasses.dataclass(frozen=True)
class ConjugacyClass:
    index: int
    representative: Permutation
    size: int
    element_order: int
    power_map: tuple[int, ...]  # power_map[s] = class of representative**s, s < exponent


@dataclasses.dataclass(frozen=True)
class _ClassData:
    classes: list[ConjugacyClass]
    class_id: list[int]  # element index -> class index
    members: list[list[int]]  # class index -> element indices
    exponent: int


def _class_data(G: PermGroup) -> _ClassData:
    data = G._cache.get("classes")
    if data is not None:
        return data
    el = _element_data(G)
    perms, index = el.perms, el.index
    n = len(perms)
    conj = [(_inv(g), g) for g in G.generators]
    raw_id = [-1] * n
    orbits: list[list[int]] = []
    for start in range(n):
        if raw_id[start] >= 0:
            continue
        cid = len(orbits)
        raw_id[start] = cid
        orbit = [start]
        for idx in orbit:
            x = perms[idx]
            for gi, g in conj:
                y = index[tuple(map(g.__getitem__, map(x.__getitem__, gi)))]
                if raw_id[y] < 0:
                    raw_id[y] = cid
                    orbit.append(y)
        orbits.append(orbit)

    keyed = []
    for orbit in orbits:
        rep = min(perms[i] for i in orbit)
        keyed.append(((_order(rep), len(orbit), rep), orbit))
    keyed.sort(key=lambda t: t[0])
    class_id = [0] * n
    members = []
    for ci, (_, orbit) in enumerate(keyed):
        for idx in orbit:
            class_id[idx] = ci
        members.append(sorted(orbit))
    exponent = reduce(math.lcm, (k[0] for k, _ in keyed), 1)

    classes = []
    for ci, ((order, size, rep), _) in enumerate(keyed):
        powers = [class_id[index[G._chain.identity]]]
        x = rep
        for _ in range(1, order):
            powers.append(class_id[index[x]])
            x = _mul(x, rep)
        pmap = tuple(powers[s % order] for s in range(exponent))
        classes.append(ConjugacyClass(ci, Permutation._trusted(rep), size, order, pmap))
    data = G._cache["classes"] = _ClassData(classes, class_id, members, exponent)
    return data


def conjugacy_classes(G: PermGroup) -> list[ConjugacyClass]:
    """Conjugacy classes sorted by (element order, size, least representative)."""
    return _class_data(G).classes


def exponent(G: PermGroup) -> int:
    """Least common multiple of the element orders."""
    return _class_data(G).exponent


def class_of(G: PermGroup, classes=None, g: Perm | None = None) -> int:
    """Index of the class containing ``g``.

    ``classes`` is accepted for call-site symmetry and otherwise ignored;
    ``class_of(G, g)`` also works.
    """
    if g is None:
        g, classes = classes, None
    data = _class_data(G)
    idx = _element_data(G).index.get(tuple(g))
    if idx is None:
        raise InputError(f"{Permutation._trusted(tuple(g)).cycle_string()} is not in the group")
    return data.class_id[idx]


def class_members(G: PermGroup, ci: int) -> list[Permutation]:
    perms = _element_data(G).perms
    return [Permutation._trusted(perms[i]) for i in _class_data(G).members[ci]]


def class_support(G: PermGroup, H: PermGroup) -> frozenset[int]:
    """Indices of the classes of ``G`` meeting the subgroup ``H``.

    For a normal subgroup this is exactly the set of classes it is the union of.
    """
    return frozenset(c.index for c in conjugacy_classes(G) if H.contains(c.representative))


# ---------------------------------------------------------------------------
# subgroup constructions


def commutator(a: Perm, b: Perm) -> Permutation:
    """``a^-1 b^-1 a b``."""
    return Permutation._trusted(_mul(_mul(_inv(a), _inv(b)), _mul(a, b)))


def normal_closure(G: PermGroup, S: Iterable[Perm]) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    N = trivial_group(G.degree)
    pending = [tuple(s) for s in S]
    while pending:
        fresh = [s for s in pending if not N.contains(s)]
        if not fresh:
            break
        N = N.extended(fresh)
        pending = [_mul(_mul(_inv(g), n), g) for n in N.generators for g in G.generators]
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    return G.cached("derived", lambda: normal_closure(
        G, [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]))


def commutator_subgroup(A: PermGroup, B: PermGroup, ambient: PermGroup) -> PermGroup:
    """``[A, B]`` for ``A, B`` normal in ``ambient``."""
    return normal_closure(ambient, [commutator(a, b) for a in A.generators for b in B.generators])


def center(G: PermGroup) -> PermGroup:
    def compute():
        perms = _element_data(G).perms
        gens = G.generators
        central = [x for x in perms if all(_mul(x, g) == _mul(g, x) for g in gens)]
        return G.subgroup(central)
    return G.cached("center", compute)


def centralizer_order(G: PermGroup, g: Perm) -> int:
    """Number of elements of ``G`` commuting with ``g`` (direct count)."""
    g = tuple(g)
    return sum(1 for x in _element_data(G).perms if _mul(x, g) == _mul(g, x))


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    return all(N.contains(_mul(_mul(_inv(g), n), g)) for n in N.generators for g in G.generators)


class Quotient:
    """``G/N`` realized as the action of ``G`` on the right cosets of ``N``.

    Coset 0 is ``N`` itself, so the image ``q`` of ``g`` sends coset 0 to the
    coset containing ``g``; :meth:`lift` uses this to pull elements back.
    """

    def __init__(self, G: PermGroup, N: PermGroup):
        cfg = config.get()
        if G.order % N.order:
            raise InputError("N is not a subgroup of G")
        idx = G.order // N.order
        if idx > cfg.cap_quotient_degree:
            raise ResourceError(f"quotient degree {idx} exceeds cap {cfg.cap_quotient_degree}")
        if not is_normal(G, N):
            raise InputError("coset action requires a normal subgroup")
        el = _element_data(G)
        perms, index = el.perms, el.index
        nperms = _element_data(N).perms
        label = [-1] * len(perms)
        reps: list[Perm] = []
        for i, g in enumerate(perms):
            if label[i] >= 0:
                continue
            c = len(reps)
            reps.append(g)
            for n in nperms:
                label[index[_mul(n, g)]] = c
        if len(reps) != idx or label[index[G._chain.identity]] != 0:
            raise ConsistencyError("coset enumeration failed")
        self.parent = G
        self.kernel = N
        self.reps = reps
        self._label = label
        self._index = index
        self.group = PermGroup([self.image(g) for g in G.generators], idx)

    @property
    def index(self) -> int:
        return len(self.reps)

    def coset_of(self, g: Perm) -> int:
        return self._label[self._index[tuple(g)]]

    def image(self, g: Perm) -> Permutation:
        g = tuple(g)
        return Permutation._trusted(tuple(self.coset_of(_mul(r, g)) for r in self.reps))

    def lift(self, q: Perm) -> Permutation:
        """A preimage in ``G`` of the quotient element ``q``."""
        return Permutation._trusted(self.reps[q[0]])

    def preimage(self, H: PermGroup) -> PermGroup:
        """Full preimage in ``G`` of a subgroup ``H`` of the quotient."""
        return self.kernel.extended(self.lift(h) for h in H.generators)

    def image_of(self, H: PermGroup) -> PermGroup:
        """Image in the quotient of a subgroup ``H`` of ``G``."""
        return PermGroup([self.image(h) for h in H.generators], self.index)


def quotient(G: PermGroup, N: PermGroup) -> Quotient:
    """Memoized :class:`Quotient` of ``G`` by the normal subgroup ``N``."""
    cache: list[Quotient] = G._cache.setdefault("quotients", [])
    for q in cache:
        if q.kernel.order == N.order and all(q.kernel.contains(g) for g in N.generators):
            return q
    q = Quotient(G, N)
    cache.append(q)
    return q


def coset_action(G: PermGroup, N: PermGroup) -> PermGroup:
    """Permutation image of ``G`` acting on the cosets of the normal subgroup ``N``."""
    return quotient(G, N).group
