"""Normal subgroups and structural predicates.

Normal subgroups are found as unions of conjugacy classes: every normal
subgroup is the join of the normal closures of the classes it contains, so
closing those closures under products gives the whole lattice.
"""
from __future__ import annotations

import dataclasses
from typing import Iterator

from . import config
from .errors import ConsistencyError, InputError, ResourceError
from .permgrp import (
    PermGroup,
    _class_data,
    _element_data,
    _inv,
    _mul,
    _order,
    build_group,
    center,
    commutator_subgroup,
    conjugacy_classes,
    derived_subgroup,
    parse_permutation,
    quotient,
    trivial_group,
)

STABILIZED = "stabilized-below-G"


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_group_order(n: int, p: int) -> bool:
    return p_part(n, p) == n


# ---------------------------------------------------------------------------
# lattice


@dataclasses.dataclass(frozen=True)
class NormalSubgroupLattice:
    group: PermGroup
    subgroups: list[PermGroup]  # sorted by (order, sorted class support)
    class_support: list[frozenset[int]]

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self) -> Iterator[PermGroup]:
        return iter(self.subgroups)

    def orders(self) -> list[int]:
        return [N.order for N in self.subgroups]

    def includes(self, i: int, j: int) -> bool:
        """True if subgroup ``i`` is contained in subgroup ``j``."""
        return self.class_support[i] <= self.class_support[j]

    def index_of(self, H: PermGroup) -> int:
        """Position of the normal subgroup ``H`` (any generating set)."""
        for i, N in enumerate(self.subgroups):
            if N.order == H.order and all(N.contains(g) for g in H.generators):
                return i
        raise InputError("subgroup is not a member of the normal lattice")

    def support_index(self, support: frozenset[int]) -> int | None:
        for i, s in enumerate(self.class_support):
            if s == support:
                return i
        return None

    def intersection(self, i: int, j: int) -> int:
        idx = self.support_index(self.class_support[i] & self.class_support[j])
        if idx is None:
            raise ConsistencyError("lattice not closed under intersection")
        return idx

    def join(self, i: int, j: int) -> int:
        sizes = [c.size for c in conjugacy_classes(self.group)]
        si, sj = self.class_support[i], self.class_support[j]
        order = (self.subgroups[i].order * self.subgroups[j].order
                 // sum(sizes[c] for c in si & sj))
        for k, s in enumerate(self.class_support):
            if self.subgroups[k].order == order and si | sj <= s:
                return k
        raise ConsistencyError("lattice not closed under join")

    def proper_nontrivial(self) -> list[int]:
        return [i for i, N in enumerate(self.subgroups)
                if 1 < N.order < self.group.order]


def _support(G: PermGroup, H: PermGroup) -> frozenset[int]:
    return frozenset(c.index for c in conjugacy_classes(G) if H.contains(c.representative))


def normal_subgroups(G: PermGroup) -> NormalSubgroupLattice:
    """Every normal subgroup of ``G`` with the classes it is a union of."""
    cached = G._cache.get("lattice")
    if cached is not None:
        return cached
    cap = config.get().cap_lattice
    classes = conjugacy_classes(G)
    data = _class_data(G)
    perms = _element_data(G).perms
    sizes = [c.size for c in classes]

    found: dict[frozenset[int], PermGroup] = {frozenset({0}): trivial_group(G.degree)}
    for c in classes[1:]:
        N = trivial_group(G.degree)
        for idx in data.members[c.index]:
            x = perms[idx]
            if not N.contains(x):
                N = N.extended([x])
        found.setdefault(_support(G, N), N)

    def order_of(s):
        return sum(sizes[i] for i in s)

    frontier = list(found)
    while frontier:
        new = []
        keys = list(found)
        for a in frontier:
            for b in keys:
                if a <= b or b <= a:
                    continue
                target = order_of(a) * order_of(b) // order_of(a & b)
                if any(order_of(s) == target and a | b <= s for s in found):
                    continue
                J = found[a].extended(found[b].generators)
                s = _support(G, J)
                if s not in found:
                    found[s] = J
                    new.append(s)
                    if len(found) > cap:
                        raise ResourceError(f"normal-subgroup lattice exceeds cap {cap}")
            keys = list(found)
        frontier = new

    for s, N in found.items():
        if order_of(s) != N.order:
            raise ConsistencyError("normal subgroup is not a union of its classes")
    items = sorted(found.items(), key=lambda kv: (kv[1].order, sorted(kv[0])))
    lattice = NormalSubgroupLattice(G, [N for _, N in items], [s for s, _ in items])
    if lattice.subgroups[-1].order != G.order:
        raise ConsistencyError("lattice is missing the whole group")
    G._cache["lattice"] = lattice
    return lattice


# ---------------------------------------------------------------------------
# series


def derived_series(G: PermGroup) -> list[PermGroup]:
    """``G, G', G'', ...`` until two consecutive terms agree or 1 is reached."""
    def compute():
        series = [G]
        while not series[-1].is_trivial():
            D = derived_subgroup(series[-1])
            if D.order == series[-1].order:
                series.append(D)
                break
            series.append(D)
        return series
    return G.cached("derived_series", compute)


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].is_trivial()


def derived_length(G: PermGroup) -> int | None:
    """Number of steps to reach 1, or None if ``G`` is not solvable."""
    series = derived_series(G)
    return len(series) - 1 if series[-1].is_trivial() else None


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    def compute():
        series = [G]
        while not series[-1].is_trivial():
            C = commutator_subgroup(series[-1], G, G)
            if C.order == series[-1].order:
                series.append(C)
                break
            series.append(C)
        return series
    return G.cached("lower_central", compute)


def is_nilpotent(G: PermGroup) -> bool:
    return lower_central_series(G)[-1].is_trivial()


def nilpotency_class(G: PermGroup) -> int | None:
    series = lower_central_series(G)
    return len(series) - 1 if series[-1].is_trivial() else None


# ---------------------------------------------------------------------------
# Sylow subgroups, cores, Fitting


def _normalizes(g, H: PermGroup) -> bool:
    gi = _inv(g)
    return all(H.contains(_mul(_mul(gi, h), g)) for h in H.generators)


def _is_p_element(g, p: int) -> bool:
    return is_p_group_order(_order(g), p)


def sylow_subgroup(G: PermGroup, p: int) -> PermGroup:
    """A Sylow ``p``-subgroup, grown one normalizing ``p``-element at a time."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")

    def compute():
        target = p_part(G.order, p)
        P = trivial_group(G.degree)
        perms = _element_data(G).perms
        while P.order < target:
            for g in perms:
                if _is_p_element(g, p) and not P.contains(g) and _normalizes(g, P):
                    P = P.extended([g])
                    break
            else:
                raise ConsistencyError(f"no p-element extends the {p}-subgroup of order {P.order}")
        if P.order != target:
            raise ConsistencyError("Sylow subgroup has the wrong order")
        return P
    return G.cached(("sylow", p), compute)


def p_core(G: PermGroup, p: int) -> PermGroup:
    """Largest normal ``p``-subgroup ``O_p(G)``."""
    lattice = normal_subgroups(G)
    best = lattice.subgroups[0]
    for N in lattice:
        if is_p_group_order(N.order, p) and N.order > best.order:
            best = N
    return best


def fitting_subgroup(G: PermGroup) -> PermGroup:
    """Product of the ``p``-cores over the primes dividing ``|G|``."""
    def compute():
        F = trivial_group(G.degree)
        for p in prime_factors(G.order):
            O = p_core(G, p)
            if not O.is_trivial():
                F = F.extended(O.generators)
        return F
    return G.cached("fitting", compute)


def fitting_series(G: PermGroup) -> tuple[list[PermGroup], int | str]:
    """Upper Fitting series ``F_1 < F_2 < ...`` and the Fitting height.

    ``F_{i+1}`` is the preimage of the Fitting subgroup of ``G/F_i``.  The
    height is the number of terms when ``G`` is reached, or ``STABILIZED`` if
    the series stops below ``G`` (exactly when ``G`` is not solvable).
    """
    def compute():
        if G.is_trivial():
            return [], 0
        series = [fitting_subgroup(G)]
        if series[0].is_trivial():  # G/1 = G, so the series is stuck at 1
            return series, STABILIZED
        while series[-1].order < G.order:
            Q = quotient(G, series[-1])
            nxt = Q.preimage(fitting_subgroup(Q.group))
            if nxt.order == series[-1].order:
                return series, STABILIZED
            series.append(nxt)
        return series, len(series)
    return G.cached("fitting_series", compute)


def fitting_height(G: PermGroup) -> int | str:
    return fitting_series(G)[1]


def chief_series(G: PermGroup) -> list[PermGroup]:
    """A chief series ``1 = N_0 < N_1 < ... < G``, refined upward.

    Each step takes the smallest normal subgroup properly containing the
    previous term, i.e. a minimal normal subgroup of the successive quotient.
    """
    lattice = normal_subgroups(G)
    chain = [0]
    while lattice.subgroups[chain[-1]].order < G.order:
        cur = chain[-1]
        above = [j for j in range(len(lattice))
                 if j != cur and lattice.includes(cur, j)]
        chain.append(min(above, key=lambda j: lattice.subgroups[j].order))
    return [lattice.subgroups[i] for i in chain]


def chief_factor_orders(G: PermGroup) -> list[int]:
    series = chief_series(G)
    return [b.order // a.order for a, b in zip(series, series[1:])]


def is_supersolvable(G: PermGroup) -> bool:
    return all(is_prime(f) for f in chief_factor_orders(G))


def normal_p_complement(G: PermGroup, p: int) -> PermGroup | None:
    """Normal subgroup of order ``|G|/|G|_p``, or None."""
    target = G.order // p_part(G.order, p)
    for N in normal_subgroups(G):
        if N.order == target:
            return N
    return None


# ---------------------------------------------------------------------------
# named isomorphism types


_NAMED_GENERATORS = {
    "1": (1, []),
    "C2": (2, ["(1 2)"]),
    "V4": (4, ["(1 2)(3 4)", "(1 3)(2 4)"]),
    "A4": (4, ["(1 2 3)", "(2 3 4)"]),
    "S4": (4, ["(1 2)", "(1 2 3 4)"]),
    "A5": (5, ["(1 2 3)", "(3 4 5)"]),
    "S5": (5, ["(1 2)", "(1 2 3 4 5)"]),
}
NAMED_TARGETS = tuple(_NAMED_GENERATORS)
_reference_cache: dict[str, PermGroup] = {}


def reference_group(name: str) -> PermGroup:
    if name not in _NAMED_GENERATORS:
        raise InputError(f"unknown target {name!r}; expected one of {NAMED_TARGETS}")
    if name not in _reference_cache:
        deg, gens = _NAMED_GENERATORS[name]
        _reference_cache[name] = build_group([parse_permutation(g, deg) for g in gens], deg)
    return _reference_cache[name]


def _order_profile(G: PermGroup) -> list[tuple[int, int]]:
    return sorted((c.element_order, c.size) for c in conjugacy_classes(G))


def _extends_to_isomorphism(R: PermGroup, images: list, target_order: int) -> bool:
    ident = R._chain.identity
    tgt_ident = tuple(range(len(images[0]))) if images else None
    phi = {ident: tgt_ident}
    queue = [ident]
    gens = list(R.generators)
    for x in queue:
        fx = phi[x]
        for r, img in zip(gens, images):
            y = _mul(x, r)
            fy = _mul(fx, img)
            seen = phi.get(y)
            if seen is None:
                phi[y] = fy
                queue.append(y)
            elif seen != fy:
                return False
    return len(phi) == target_order and len(set(phi.values())) == target_order


def is_isomorphic_named(G: PermGroup, target: str) -> bool:
    """Decide ``G`` isomorphic to one of ``NAMED_TARGETS``.

    Cheap invariants first (order, multiset of class orders and sizes), then a
    backtracking search for images of the reference generators.
    """
    R = reference_group(target)
    if G.order != R.order:
        return False
    if G.order == 1:
        return True
    if _order_profile(G) != _order_profile(R):
        return False
    gens = list(R.generators)
    perms = _element_data(G).perms
    by_order: dict[int, list] = {}
    for g in perms:
        by_order.setdefault(_order(g), []).append(g)
    candidates = [by_order.get(_order(r), []) for r in gens]
    prod_orders = {(i, j): _order(_mul(gens[i], gens[j]))
                   for i in range(len(gens)) for j in range(i + 1, len(gens))}

    def search(k: int, chosen: list) -> bool:
        if k == len(gens):
            return _extends_to_isomorphism(R, chosen, G.order)
        for c in candidates[k]:
            if any(_order(_mul(chosen[i], c)) != prod_orders[(i, k)] for i in range(k)):
                continue
            if search(k + 1, chosen + [c]):
                return True
        return False

    return search(0, [])


# ---------------------------------------------------------------------------
# report


@dataclasses.dataclass(frozen=True)
class StructureReport:
    order: int
    solvable: bool
    derived_length: int | None
    nilpotent: bool
    supersolvable: bool
    metabelian: bool
    fitting_subgroup: PermGroup
    fitting_height: int | str
    o2: PermGroup
    normal_p_complement: dict[int, PermGroup | None]
    center_order: int
    chief_factors: list[int]
    normal_subgroup_orders: list[int]


def structure_report(G: PermGroup) -> StructureReport:
    def compute():
        dl = derived_length(G)
        primes = sorted(set(prime_factors(G.order)) | {2})
        return StructureReport(
            order=G.order,
            solvable=dl is not None,
            derived_length=dl,
            nilpotent=is_nilpotent(G),
            supersolvable=is_supersolvable(G),
            metabelian=dl is not None and dl <= 2,
            fitting_subgroup=fitting_subgroup(G),
            fitting_height=fitting_height(G),
            o2=p_core(G, 2),
            normal_p_complement={p: normal_p_complement(G, p) for p in primes},
            center_order=center(G).order,
            chief_factors=chief_factor_orders(G),
            normal_subgroup_orders=normal_subgroups(G).orders(),
        )
    return G.cached("structure_report", compute)


def cyclic_sylows(G: PermGroup) -> bool:
    """True if every Sylow subgroup of ``G`` is cyclic."""
    for p in prime_factors(G.order):
        P = sylow_subgroup(G, p)
        if not any(_order(g) == P.order for g in _element_data(P).perms):
            return False
    return True

