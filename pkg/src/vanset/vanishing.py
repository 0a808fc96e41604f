"""Vanishing classes, the pairwise gcd profile of their orders, and prime graphs."""
from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Iterable

from .chartab import CharacterTable
from .structure import prime_factors


@dataclasses.dataclass(frozen=True)
class VanishingProfile:
    vanishing_class_indices: tuple[int, ...]
    orders: tuple[int, ...]  # element order of each vanishing class, same order
    vo: frozenset[int]
    pairwise_gcd_max: int
    satisfies_star: bool
    satisfies_star_star: bool
    vo_pairwise_coprime: bool
    witnesses: dict[int, tuple[int, int]]  # class -> (row, class) with a zero value
    vacuous: bool  # no vanishing classes at all (abelian group)

    @property
    def count(self) -> int:
        return len(self.vanishing_class_indices)


def pairwise_gcd_max(orders: Iterable[int]) -> int:
    """Largest gcd over unordered pairs of entries; 0 with fewer than two."""
    orders = list(orders)
    return max((math.gcd(a, b) for a, b in itertools.combinations(orders, 2)), default=0)


def vo_pairwise_coprime(vo: Iterable[int]) -> bool:
    return all(math.gcd(a, b) == 1 for a, b in itertools.combinations(sorted(set(vo)), 2))


def vanishing_profile(table: CharacterTable) -> VanishingProfile:
    witnesses: dict[int, tuple[int, int]] = {}
    for row in range(len(table)):
        for j in table.zeros(row):
            witnesses.setdefault(j, (row, j))
    idx = tuple(sorted(witnesses))
    orders = tuple(table.classes[j].element_order for j in idx)
    gmax = pairwise_gcd_max(orders)
    return VanishingProfile(
        vanishing_class_indices=idx,
        orders=orders,
        vo=frozenset(orders),
        pairwise_gcd_max=gmax,
        satisfies_star=gmax <= 1,
        satisfies_star_star=gmax <= 2,
        vo_pairwise_coprime=vo_pairwise_coprime(orders),
        witnesses=witnesses,
        vacuous=not idx,
    )


def max_vanishing_classes_per_character(table: CharacterTable) -> int:
    return max((len(table.zeros(r)) for r in range(len(table))), default=0)


# ---------------------------------------------------------------------------
# prime graphs


@dataclasses.dataclass(frozen=True)
class PrimeGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]

    def to_dot(self, name: str = "G") -> str:
        comps = "; ".join("{" + ", ".join(map(str, c)) + "}" for c in self.components)
        lines = [f"// components: {len(self.components)}" + (f" {comps}" if comps else ""),
                 f'graph "{name}" {{']
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{a}" -- "{b}";' for a, b in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def prime_graph(values: Iterable[int]) -> PrimeGraph:
    """Primes dividing some value, joined when their product divides some value."""
    values = sorted(set(values))
    if any(v < 1 for v in values):
        raise ValueError("prime graph needs positive integers")
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for v in values:
        ps = prime_factors(v)
        vertices.update(ps)
        edges.update(itertools.combinations(ps, 2))
    uf = _UnionFind(vertices)
    for a, b in edges:
        uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for v in sorted(vertices):
        groups.setdefault(uf.find(v), []).append(v)
    components = tuple(sorted(tuple(c) for c in groups.values()))
    return PrimeGraph(tuple(sorted(vertices)), tuple(sorted(edges)), components)


def vanishing_prime_graph(profile: VanishingProfile) -> PrimeGraph:
    return prime_graph(profile.vo)
