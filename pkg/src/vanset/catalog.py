"""Concrete groups: family constructors, the default corpus, and ``.grp`` files."""
from __future__ import annotations

import dataclasses
import math
import re
from pathlib import Path
from typing import Callable

from . import config
from .errors import ConsistencyError, InputError
from .permgrp import Permutation, PermGroup, build_group, parse_permutation
from .structure import is_prime, prime_factors


@dataclasses.dataclass(frozen=True)
class NamedGroup:
    name: str
    group: PermGroup
    tags: frozenset[str] = frozenset()

    @property
    def order(self) -> int:
        return self.group.order

    def listing(self) -> dict:
        return {"name": self.name, "order": self.order, "tags": sorted(self.tags)}


def _perm(images) -> Permutation:
    return Permutation(list(images))


def _cycle(points: list[int], degree: int, offset: int = 0) -> Permutation:
    return Permutation.from_cycles([[offset + p for p in points]], degree)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


# ---------------------------------------------------------------------------
# families


def cyclic(n: int) -> NamedGroup:
    _need(n >= 1, "cyclic(n) needs n >= 1")
    gens = [_cycle(list(range(n)), n)] if n > 1 else []
    return NamedGroup(f"C{n}", build_group(gens, n), frozenset({"cyclic", "abelian"}))


def abelian(invariants: list[int]) -> NamedGroup:
    """Direct product of cyclic groups of the given orders, on disjoint points."""
    _need(bool(invariants) and all(n >= 1 for n in invariants), "abelian type needs positive orders")
    degree = sum(invariants)
    gens, off = [], 0
    for n in invariants:
        if n > 1:
            gens.append(_cycle(list(range(n)), degree, off))
        off += n
    name = "x".join(f"C{n}" for n in invariants)
    return NamedGroup(name, build_group(gens, degree), frozenset({"abelian"}))


def dihedral(n: int) -> NamedGroup:
    """Symmetries of the n-gon, order ``2n``; ``n = 2`` is the Klein group on 4 points."""
    _need(n >= 2, "dihedral(n) needs n >= 2")
    if n == 2:
        gens = [Permutation.from_cycles([[0, 1], [2, 3]], 4), Permutation.from_cycles([[0, 2], [1, 3]], 4)]
        return NamedGroup("D4", build_group(gens, 4), frozenset({"dihedral", "abelian"}))
    rot = _cycle(list(range(n)), n)
    refl = _perm([(-i) % n for i in range(n)])
    tags = {"dihedral"}
    if n % 2:
        tags.add("frobenius-family")
    return NamedGroup(f"D{2 * n}", build_group([rot, refl], n), frozenset(tags))


def dicyclic(n: int) -> NamedGroup:
    """``<a, x | a^2n = 1, x^2 = a^n, x^-1 a x = a^-1>`` of order ``4n`` in its
    right regular representation; ``n = 2`` is the quaternion group."""
    _need(n >= 2, "dicyclic(n) needs n >= 2")
    m = 2 * n

    def encode(i: int, j: int) -> int:
        return (i % m) + m * j

    def times(i: int, j: int, k: int, l: int) -> int:  # noqa: E741
        if j == 0:
            return encode(i + k, l)
        if l == 0:
            return encode(i - k, 1)
        return encode(i - k + n, 0)

    elems = [(i, j) for j in (0, 1) for i in range(m)]
    a = _perm(times(i, j, 1, 0) for i, j in elems)
    x = _perm(times(i, j, 0, 1) for i, j in elems)
    name = "Q8" if n == 2 else f"Q{4 * n}"
    return NamedGroup(name, build_group([a, x], 2 * m), frozenset({"dicyclic"}))


def symmetric(n: int) -> NamedGroup:
    _need(1 <= n <= 8, "symmetric(n) needs 1 <= n <= 8")
    gens = []
    if n >= 2:
        gens = [_cycle([0, 1], n), _cycle(list(range(n)), n)]
    return NamedGroup(f"S{n}", build_group(gens, n), frozenset({"symmetric"}))


def alternating(n: int) -> NamedGroup:
    _need(1 <= n <= 8, "alternating(n) needs 1 <= n <= 8")
    gens = [_cycle([0, 1, k], n) for k in range(2, n)]
    tags = {"alternating"}
    if n >= 5:
        tags |= {"simple", "lie-type"} if n in (5, 6, 8) else {"simple"}
    return NamedGroup(f"A{n}", build_group(gens, n), frozenset(tags))


def _primitive_root(p: int) -> int:
    factors = prime_factors(p - 1)
    return next(g for g in range(1, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factors))


def affine_frobenius(p: int, d: int) -> NamedGroup:
    """``C_p : C_d`` acting on ``F_p`` by ``x -> r^((p-1)/d) x + b``."""
    _need(is_prime(p) and p > 2, "affine_frobenius(p, d) needs an odd prime p")
    _need(d > 1 and (p - 1) % d == 0, "affine_frobenius(p, d) needs d > 1 dividing p - 1")
    u = pow(_primitive_root(p), (p - 1) // d, p)
    gens = [_perm((x + 1) % p for x in range(p)), _perm(u * x % p for x in range(p))]
    return NamedGroup(f"Frob({p},{d})", build_group(gens, p), frozenset({"frobenius-family"}))


# finite fields GF(p^k), elements encoded as base-p digit vectors
_PRIMITIVE = {4: (2, [1, 1]), 8: (2, [1, 1, 0]), 9: (3, [1, 1])}  # x^k = sum c_i x^i


class _Field:
    def __init__(self, q: int):
        if is_prime(q):
            self.p, self.k = q, 1
            g = _primitive_root(q)
            self.exp = [pow(g, i, q) for i in range(q - 1)]
        else:
            p, low = _PRIMITIVE[q]
            self.p, self.k = p, len(low)
            vec = [1] + [0] * (self.k - 1)
            self.exp = []
            for _ in range(q - 1):
                self.exp.append(self._encode(vec))
                top = vec[-1]
                vec = [0] + vec[:-1]
                vec = [(v + top * c) % p for v, c in zip(vec, low)]
        self.q = q
        self.log = {v: i for i, v in enumerate(self.exp)}
        if len(self.log) != q - 1:
            raise ConsistencyError(f"polynomial for GF({q}) is not primitive")

    def _encode(self, vec: list[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(vec))

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def add(self, a: int, b: int) -> int:
        return self._encode([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        return self.exp[(-self.log[a]) % (self.q - 1)]


def psl2(q: int) -> NamedGroup:
    """``PSL(2, q)`` acting on the ``q + 1`` points of the projective line
    (point ``q`` is infinity)."""
    _need(q in (4, 5, 7, 8, 9, 11), "psl2(q) supports q in {4, 5, 7, 8, 9, 11}")
    F = _Field(q)
    inf = q
    w = F.exp[1]
    shift = _perm([F.add(x, 1) for x in range(q)] + [inf])
    scale = _perm([F.mul(F.mul(w, w), x) for x in range(q)] + [inf])
    # x -> -1/x swaps 0 and infinity
    invert = _perm([inf] + [F.neg(F.inv(x)) for x in range(1, q)] + [0])
    order = q * (q * q - 1) // math.gcd(2, q - 1)
    G = build_group([shift, scale, invert], q + 1)
    if G.order != order:
        raise ConsistencyError(f"PSL(2,{q}) construction gave order {G.order}")
    return NamedGroup(f"PSL(2,{q})", G, frozenset({"simple", "lie-type"}))


def direct_product(A: NamedGroup, B: NamedGroup) -> NamedGroup:
    m, n = A.group.degree, B.group.degree
    gens = [_perm(list(g) + list(range(m, m + n))) for g in A.group.generators]
    gens += [_perm(list(range(m)) + [m + x for x in g]) for g in B.group.generators]
    return NamedGroup(f"{A.name}x{B.name}", build_group(gens, m + n), frozenset({"product"}))


def sl23() -> NamedGroup:
    """``SL(2, 3)`` acting on the 8 nonzero vectors of ``F_3^2``."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(m):
        return _perm(pos[((m[0] * a + m[1] * b) % 3, (m[2] * a + m[3] * b) % 3)] for a, b in vecs)

    G = build_group([act((1, 1, 0, 1)), act((1, 0, 1, 1))], 8)
    return NamedGroup("SL(2,3)", G, frozenset())


M11_GENERATORS = ["(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"]


def m11() -> NamedGroup:
    G = build_group([parse_permutation(g, 11) for g in M11_GENERATORS], 11)
    return NamedGroup("M11", G, frozenset({"simple", "sporadic", "stretch"}))


def a8() -> NamedGroup:
    g = alternating(8)
    return NamedGroup("A8", g.group, g.tags | {"stretch"})


# ---------------------------------------------------------------------------
# files


def parse_group_text(text: str, name: str = "group") -> NamedGroup:
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise InputError(f"line {lineno}: expected 'degree N', got {line!r}")
            degree = int(m.group(1))
            if degree < 1:
                raise InputError(f"line {lineno}: degree must be positive")
            continue
        try:
            gens.append(parse_permutation(line, degree))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise InputError("missing 'degree N' line")
    return NamedGroup(name, build_group(gens, degree), frozenset({"file"}))


def load_group_file(path: str | Path) -> NamedGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_group_text(text, path.stem)


# ---------------------------------------------------------------------------
# corpus and name resolution

EXAMPLE_TAGGED = frozenset({"S4", "S5", "A5", "A6", "PSL(2,7)"})


def _tagged(g: NamedGroup) -> NamedGroup:
    if g.name in EXAMPLE_TAGGED:
        return dataclasses.replace(g, tags=g.tags | {"paper-example"})
    return g


def default_corpus() -> list[NamedGroup]:
    """The deterministic verification corpus (M11 and A8 only with ``stretch``)."""
    out = [cyclic(n) for n in range(1, 65)]
    out += [dihedral(n) for n in range(2, 33)]
    out += [dicyclic(n) for n in range(2, 17)]
    out += [symmetric(n) for n in range(3, 7)]
    out += [alternating(n) for n in range(4, 7)]
    out.append(sl23())
    for p in (5, 7, 11, 13):
        out += [affine_frobenius(p, d) for d in range(2, p) if (p - 1) % d == 0]
    out += [psl2(q) for q in (4, 5, 7, 8, 9, 11)]
    c2 = cyclic(2)
    out += [direct_product(c2, dihedral(n)) for n in range(2, 17)]
    if config.get().stretch:
        out += [m11(), a8()]
    return [_tagged(g) for g in out]


_FAMILIES: dict[str, tuple[int, Callable[..., NamedGroup]]] = {
    "cyclic": (1, cyclic),
    "dihedral": (1, dihedral),
    "dicyclic": (1, dicyclic),
    "symmetric": (1, symmetric),
    "alternating": (1, alternating),
    "affine": (2, affine_frobenius),
    "psl2": (1, psl2),
}


def make(family: str, *params: int) -> NamedGroup:
    """Build a group by family name, e.g. ``make("dihedral", 5)``."""
    if family == "abelian":
        return _tagged(abelian(list(params)))
    if family == "sl23":
        _need(not params, "sl23 takes no parameters")
        return sl23()
    if family in ("m11", "M11"):
        return m11()
    if family not in _FAMILIES:
        raise InputError(f"unknown family {family!r}")
    arity, fn = _FAMILIES[family]
    _need(len(params) == arity, f"{family} takes {arity} parameter(s)")
    return _tagged(fn(*params))


_ALIAS = [
    (r"C(\d+)", "cyclic"),
    (r"D(\d+)", "dihedral-order"),
    (r"Q(\d+)", "dicyclic-order"),
    (r"S(\d+)", "symmetric"),
    (r"A(\d+)", "alternating"),
    (r"PSL\(2,(\d+)\)", "psl2"),
    (r"Frob\((\d+),(\d+)\)", "affine"),
]


def resolve(target: str) -> NamedGroup:
    """Catalog name (``S4``, ``D10``, ``dihedral:5``, ``affine:7,3``, ``M11``)
    or a path to a ``.grp`` file."""
    t = target.strip()
    if t.endswith(".grp") or "/" in t or Path(t).is_file():
        return load_group_file(t)
    if t in ("SL(2,3)", "sl23"):
        return sl23()
    if t.upper() == "M11":
        _need(config.get().stretch, "M11 requires --stretch")
        return m11()
    if t == "A8":
        _need(config.get().stretch, "A8 requires --stretch")
        return _tagged(a8())
    m = re.fullmatch(r"C2xD(\d+)", t)
    if m and int(m.group(1)) % 2 == 0:
        return direct_product(cyclic(2), dihedral(int(m.group(1)) // 2))
    if ":" in t:
        family, _, rest = t.partition(":")
        try:
            params = [int(x) for x in rest.split(",")] if rest else []
        except ValueError:
            raise InputError(f"bad parameters in {target!r}") from None
        return make(family, *params)
    for pattern, family in _ALIAS:
        m = re.fullmatch(pattern, t)
        if not m:
            continue
        nums = [int(x) for x in m.groups()]
        if family == "dihedral-order":
            _need(nums[0] % 2 == 0, f"dihedral order must be even in {target!r}")
            return make("dihedral", nums[0] // 2)
        if family == "dicyclic-order":
            _need(nums[0] % 4 == 0, f"dicyclic order must be divisible by 4 in {target!r}")
            return make("dicyclic", nums[0] // 4)
        return make(family, *nums)
    raise InputError(f"unknown group {target!r}")
