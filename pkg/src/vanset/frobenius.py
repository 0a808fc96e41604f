"""Frobenius, 2-Frobenius and nearly 2-Frobenius structure."""
from __future__ import annotations

import dataclasses
import itertools
import math

from . import config
from .errors import ConsistencyError, ResourceError
from .permgrp import (
    PermGroup,
    _element_data,
    _mul,
    _order,
    quotient,
    trivial_group,
)
from .structure import (
    NAMED_TARGETS,
    cyclic_sylows,
    is_isomorphic_named,
    is_nilpotent,
    is_prime,
    normal_subgroups,
)


@dataclasses.dataclass(frozen=True)
class FrobeniusDecomposition:
    kernel: PermGroup
    complement: PermGroup
    kernel_abelian: bool
    complement_order: int


class _Mod:
    """``G/N`` with the maps needed here; the trivial ``N`` avoids the regular
    representation by using ``G`` itself."""

    def __init__(self, G: PermGroup, N: PermGroup):
        self.trivial = N.is_trivial()
        self.q = None if self.trivial else quotient(G, N)
        self.group = G if self.trivial else self.q.group

    def preimage(self, H: PermGroup) -> PermGroup:
        return H if self.trivial else self.q.preimage(H)

    def image_of(self, H: PermGroup) -> PermGroup:
        return H if self.trivial else self.q.image_of(H)


# ---------------------------------------------------------------------------
# complements


class _Budget:
    def __init__(self):
        self.left = config.get().cap_search

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise ResourceError(f"complement search exceeds cap {config.get().cap_search}")


def _greedy_complement(candidates: list, m: int, degree: int, budget: _Budget) -> PermGroup | None:
    H = trivial_group(degree)
    for g in candidates:
        if H.order == m:
            break
        if H.contains(g):
            continue
        budget.spend()
        J = H.extended([g])
        if m % J.order == 0:
            H = J
    return H if H.order == m else None


def _seeded_complement(candidates: list, m: int, degree: int, budget: _Budget) -> PermGroup | None:
    for k in (1, 2, 3):
        for seeds in itertools.combinations(candidates, k):
            budget.spend()
            J = trivial_group(degree).extended(seeds)
            if J.order == m:
                return J
    return None


def find_complement(G: PermGroup, K: PermGroup) -> PermGroup | None:
    """A subgroup of order ``|G:K|`` meeting the normal subgroup ``K`` trivially,
    assuming ``gcd(|K|, |G:K|) = 1``."""
    m = G.order // K.order
    if math.gcd(m, K.order) != 1:
        raise ValueError("complement search needs a coprime normal subgroup")
    # with coprime orders, meeting K trivially is automatic for order | m
    candidates = [g for g in _element_data(G).perms if m % _order(g) == 0 and _order(g) > 1]
    budget = _Budget()
    H = _greedy_complement(candidates, m, G.degree, budget)
    if H is None:
        H = _seeded_complement(candidates, m, G.degree, budget)
    return H


def _fixed_point_free(K: PermGroup, H: PermGroup) -> bool:
    """``C_K(h) = 1`` for every non-identity ``h`` in ``H``; checking elements of
    prime order suffices since ``C_K(h)`` lies in ``C_K(h^k)``."""
    kperms = _element_data(K).perms[1:]
    for h in _element_data(H).perms[1:]:
        if not is_prime(_order(h)):
            continue
        for k in kperms:
            if _mul(h, k) == _mul(k, h):
                return False
    return True


def _verify(G: PermGroup, d: FrobeniusDecomposition) -> None:
    K, H = d.kernel, d.complement
    if K.order * H.order != G.order or any(K.contains(h) for h in H.generators if _order(h) > 1):
        raise ConsistencyError("decomposition does not factor the group")
    if not all(G.contains(g) for g in H.generators):
        raise ConsistencyError("complement is not a subgroup")


def frobenius_with_kernel(G: PermGroup, K: PermGroup) -> FrobeniusDecomposition | None:
    """The decomposition of ``G`` with kernel ``K`` (a normal subgroup), if any."""
    if K.is_trivial() or K.order == G.order or math.gcd(K.order, G.order // K.order) != 1:
        return None
    H = find_complement(G, K)
    if H is None:
        raise ConsistencyError("coprime normal subgroup without a complement")
    if not _fixed_point_free(K, H):
        return None
    d = FrobeniusDecomposition(K, H, K.is_abelian(), H.order)
    _verify(G, d)
    return d


def frobenius_decomposition(G: PermGroup) -> FrobeniusDecomposition | None:
    """Kernel and complement if ``G`` is a Frobenius group, else None.

    Normal subgroups are tried smallest first; since a Frobenius kernel is
    unique, the first success is the kernel.
    """
    def compute():
        lattice = normal_subgroups(G)
        for i in lattice.proper_nontrivial():
            d = frobenius_with_kernel(G, lattice.subgroups[i])
            if d is not None:
                return d
        return None
    return G.cached("frobenius", compute)


def is_frobenius(G: PermGroup) -> bool:
    return frobenius_decomposition(G) is not None


def _quotient_frobenius_kernel(G: PermGroup, N: PermGroup) -> PermGroup | None:
    """Preimage ``L`` of the Frobenius kernel of ``G/N``, or None."""
    mod = _Mod(G, N)
    d = frobenius_decomposition(mod.group)
    return None if d is None else mod.preimage(d.kernel)


# ---------------------------------------------------------------------------
# 2-Frobenius


def is_2_frobenius(G: PermGroup) -> tuple[bool, tuple[PermGroup, PermGroup] | None]:
    """``(True, (F, L))`` when ``G/F`` is Frobenius with kernel ``L/F`` and ``L``
    is Frobenius with kernel ``F``."""
    def compute():
        lattice = normal_subgroups(G)
        for i in lattice.proper_nontrivial():
            F = lattice.subgroups[i]
            L = _quotient_frobenius_kernel(G, F)
            if L is None:
                continue
            dL = frobenius_decomposition(L)
            if dL is not None and dL.kernel.same_as(F):
                return True, (F, L)
        return False, None
    return G.cached("2-frobenius", compute)


def is_nearly_2_frobenius(G: PermGroup) -> tuple[bool, tuple[PermGroup, ...] | None]:
    """``(True, (F, F1, F2, L))`` for the nearly 2-Frobenius configuration:
    ``F = F1 x F2`` nilpotent, ``G/F`` and ``G/F1`` Frobenius with kernels
    ``L/F`` and ``L/F1``, and ``G/F2`` 2-Frobenius."""
    def compute():
        lattice = normal_subgroups(G)
        n = len(lattice)
        for i, j in itertools.product(range(n - 1), repeat=2):
            if lattice.intersection(i, j) != 0:
                continue
            F = lattice.subgroups[lattice.join(i, j)]
            if F.order == G.order or not is_nilpotent(F):
                continue
            F1, F2 = lattice.subgroups[i], lattice.subgroups[j]
            L = _quotient_frobenius_kernel(G, F)
            if L is None:
                continue
            L1 = _quotient_frobenius_kernel(G, F1)
            if L1 is None or not L1.same_as(L):
                continue
            if is_2_frobenius(_Mod(G, F2).group)[0]:
                return True, (F, F1, F2, L)
        return False, None
    return G.cached("nearly-2-frobenius", compute)


# ---------------------------------------------------------------------------
# complement classification

COMPLEMENT_TYPES = tuple(t for t in NAMED_TARGETS if t != "C2")


def complement_classification(H: PermGroup) -> tuple[PermGroup, str] | None:
    """A normal ``N`` of ``H`` with cyclic Sylow subgroups and ``H/N`` of one of
    the types in ``COMPLEMENT_TYPES``; the smallest quotient wins.  None means
    no such pair exists."""
    lattice = normal_subgroups(H)
    for N in reversed(lattice.subgroups):
        if not cyclic_sylows(N):
            continue
        Q = _Mod(H, N).group if N.order < H.order else trivial_group(1)
        for t in COMPLEMENT_TYPES:
            if is_isomorphic_named(Q, t):
                return N, t
    return None
