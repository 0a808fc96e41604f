"""Theorem harness: evaluates the vanishing-class theorems and the supporting
lemma checks on concrete groups and aggregates a JSON verdict report.

Each check returns a :class:`TheoremVerdict` whose ``status`` is one of
``pass``, ``fail``, ``not-applicable`` (with the failed hypothesis named in
the witness), ``flagged`` or ``resource-error``.
"""
from __future__ import annotations

import dataclasses
import json
import math
from typing import Callable, Iterable

import numpy as np

from . import config
from .catalog import NamedGroup
from .chartab import CharacterTable, character_table, p_defect_zero
from .errors import InputError, ResourceError
from .frobenius import (
    FrobeniusDecomposition,
    complement_classification,
    frobenius_decomposition,
    frobenius_with_kernel,
    is_2_frobenius,
    is_nearly_2_frobenius,
)
from .permgrp import PermGroup, _element_data, _mul, _order, class_of, conjugacy_classes, quotient
from .structure import (
    StructureReport,
    derived_length,
    fitting_height,
    fitting_series,
    is_isomorphic_named,
    is_nilpotent,
    is_prime,
    nilpotency_class,
    normal_subgroups,
    prime_factors,
    structure_report,
)
from .vanishing import (
    VanishingProfile,
    max_vanishing_classes_per_character,
    vanishing_prime_graph,
    vanishing_profile,
)

THEOREM_IDS = ("A", "B", "C", "L2.1", "L2.2", "C2.3", "L2.4", "L2.5", "L2.6",
               "Brauer", "T2.10", "T4.1", "T4.2", "L2.9")
STATUSES = ("pass", "fail", "not-applicable", "flagged", "resource-error")


@dataclasses.dataclass(frozen=True)
class TheoremVerdict:
    group: str
    theorem: str
    status: str
    witness: dict

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "status": self.status, "witness": self.witness}


def subgroup_json(H: PermGroup | None) -> dict | None:
    if H is None:
        return None
    return {"order": H.order, "generators": [g.cycle_string() for g in H.generators]}


def _na(name: str, theorem: str, hypothesis: str) -> TheoremVerdict:
    return TheoremVerdict(name, theorem, "not-applicable", {"hypothesis": hypothesis})


def _verdict(name: str, theorem: str, ok: bool, witness: dict) -> TheoremVerdict:
    return TheoremVerdict(name, theorem, "pass" if ok else "fail", witness)


class GroupData:
    """Lazily computed analysis of one group shared by all checks."""

    def __init__(self, named: NamedGroup):
        self.named = named
        self.name = named.name
        self.G = named.group

    @property
    def table(self) -> CharacterTable:
        return character_table(self.G)

    @property
    def profile(self) -> VanishingProfile:
        return self.G.cached("vanishing_profile", lambda: vanishing_profile(self.table))

    @property
    def structure(self) -> StructureReport:
        return structure_report(self.G)

    @property
    def frob(self) -> FrobeniusDecomposition | None:
        return frobenius_decomposition(self.G)

    @property
    def abelian(self) -> bool:
        return self.G.is_abelian()

    def vanishing_set(self) -> set[int]:
        return set(self.profile.vanishing_class_indices)


# ---------------------------------------------------------------------------
# main theorems


def check_theorem_A(name: str, profile: VanishingProfile, structure: StructureReport) -> TheoremVerdict:
    if profile.vacuous:
        return _na(name, "A", "non-abelian")
    if not profile.satisfies_star_star:
        return _na(name, "A", "star-star")
    return _verdict(name, "A", structure.solvable, {
        "vanishing_orders": list(profile.orders),
        "pairwise_gcd_max": profile.pairwise_gcd_max,
        "solvable": structure.solvable,
    })


def _is_s4_frobenius(frob: FrobeniusDecomposition | None) -> bool:
    return (frob is not None and frob.kernel_abelian
            and is_isomorphic_named(frob.complement, "S4"))


def check_theorem_B(name: str, profile: VanishingProfile, structure: StructureReport,
                    frob: FrobeniusDecomposition | None) -> TheoremVerdict:
    if profile.vacuous:
        return _na(name, "B", "non-abelian")
    if not profile.satisfies_star_star:
        return _na(name, "B", "star-star")
    N2 = structure.normal_p_complement.get(2)
    witness: dict = {"normal_2_complement": subgroup_json(N2)}
    results = []
    if structure.supersolvable:
        dl = derived_length(N2) if N2 is not None else None
        witness["a"] = {"complement_derived_length": dl}
        results.append("pass" if dl is not None and dl <= 2 else "fail")
    if structure.o2.is_trivial():
        fh = fitting_height(N2) if N2 is not None else None
        branch: dict = {"complement_fitting_height": fh}
        if isinstance(fh, int) and fh <= 3:
            results.append("pass")
            branch["case"] = "i"
        elif _is_s4_frobenius(frob):
            results.append("flagged")
            branch["case"] = "ii"
            branch["kernel"] = subgroup_json(frob.kernel)
            branch["complement"] = subgroup_json(frob.complement)
        else:
            results.append("fail")
        witness["b"] = branch
    if not results:
        return _na(name, "B", "supersolvable-or-O2-trivial")
    status = "fail" if "fail" in results else "flagged" if "flagged" in results else "pass"
    return TheoremVerdict(name, "B", status, witness)


def check_corollary_C(name: str, profile: VanishingProfile,
                      frob: FrobeniusDecomposition | None) -> TheoremVerdict:
    if profile.vacuous:
        return _na(name, "C", "non-abelian")
    lhs = profile.satisfies_star
    rhs = frob is not None and frob.kernel_abelian and frob.complement_order == 2
    return _verdict(name, "C", lhs == rhs, {
        "satisfies_star": lhs,
        "frobenius_abelian_kernel_order_two_complement": rhs,
        "kernel": subgroup_json(frob.kernel) if frob else None,
    })


# ---------------------------------------------------------------------------
# lemma suite


def _quotient_order(x, N: PermGroup) -> int:
    """Order of ``xN`` in ``G/N``."""
    k, y = 1, x
    while not N.contains(y):
        y = _mul(y, x)
        k += 1
    return k


def check_lemma_2_1(d: GroupData) -> TheoremVerdict:
    """Vanishing classes of a quotient pull back to vanishing classes, and the
    gcd properties pass to quotients."""
    G = d.G
    lattice = normal_subgroups(G)
    classes = conjugacy_classes(G)
    van = d.vanishing_set()
    checked = []
    for i in lattice.proper_nontrivial():
        N = lattice.subgroups[i]
        Q = quotient(G, N)
        if Q.group.is_abelian():
            continue
        qprof = vanishing_profile(character_table(Q.group))
        qvan = set(qprof.vanishing_class_indices)
        for c in classes:
            qc = class_of(Q.group, Q.image(c.representative))
            if qc in qvan and c.index not in van:
                return _verdict(d.name, "L2.1", False, {"normal_subgroup": subgroup_json(N), "class": c.index})
        if d.profile.satisfies_star_star and not qprof.satisfies_star_star:
            return _verdict(d.name, "L2.1", False, {"normal_subgroup": subgroup_json(N), "property": "star-star"})
        if d.profile.satisfies_star and not qprof.satisfies_star:
            return _verdict(d.name, "L2.1", False, {"normal_subgroup": subgroup_json(N), "property": "star"})
        checked.append(N.order)
    if not checked:
        return _na(d.name, "L2.1", "non-abelian-proper-quotient")
    return _verdict(d.name, "L2.1", True, {"normal_subgroup_orders": checked})


def check_lemma_2_2(d: GroupData) -> TheoremVerdict:
    """Normal ``N < M`` with ``M - N`` a single class."""
    if not d.structure.solvable:
        return _na(d.name, "L2.2", "solvable")
    G = d.G
    lattice = normal_subgroups(G)
    pairs = []
    for j, M in enumerate(lattice.subgroups):
        for i in lattice.proper_nontrivial():
            N = lattice.subgroups[i]
            if i == j or not lattice.includes(i, j):
                continue
            diff = lattice.class_support[j] - lattice.class_support[i]
            if len(diff) != 1:
                continue
            idx = M.order // N.order
            if math.gcd(idx, N.order) == 1:
                dM = frobenius_with_kernel(M, N)
                ok = dM is not None and is_prime(dM.complement_order)
                pairs.append({"case": "a", "M": M.order, "N": N.order, "ok": ok})
                if not ok:
                    return _verdict(d.name, "L2.2", False, {"M": subgroup_json(M), "N": subgroup_json(N), "case": "a"})
            if M.order == G.order:
                f = d.frob
                ok = f is not None and f.kernel_abelian and f.complement_order == 2
                pairs.append({"case": "b", "M": M.order, "N": N.order, "ok": ok})
                if not ok:
                    return _verdict(d.name, "L2.2", False, {"N": subgroup_json(N), "case": "b"})
    if not pairs:
        return _na(d.name, "L2.2", "single-class-difference")
    return _verdict(d.name, "L2.2", True, {"pairs": pairs})


def check_corollary_2_3(d: GroupData) -> TheoremVerdict:
    """A nilpotent normal ``K`` meeting Van(G) contains a vanishing element whose
    order is divisible by every prime dividing ``|K|``."""
    G = d.G
    lattice = normal_subgroups(G)
    classes = conjugacy_classes(G)
    van = d.vanishing_set()
    checked = []
    for i in range(1, len(lattice)):
        K = lattice.subgroups[i]
        inside = lattice.class_support[i] & van
        if not inside or not is_nilpotent(K):
            continue
        rad = math.prod(prime_factors(K.order))
        hits = [c for c in sorted(inside) if classes[c].element_order % rad == 0]
        if not hits:
            return _verdict(d.name, "C2.3", False, {"K": subgroup_json(K), "vanishing_classes": sorted(inside)})
        checked.append({"K": K.order, "class": hits[0]})
    if not checked:
        return _na(d.name, "C2.3", "nilpotent-normal-meeting-Van")
    return _verdict(d.name, "C2.3", True, {"checked": checked})


def check_lemma_2_4(d: GroupData) -> TheoremVerdict:
    """Non-vanishing elements of a solvable group are 2-elements modulo F(G) and,
    if G is not nilpotent, lie in the penultimate Fitting term."""
    if not d.structure.solvable:
        return _na(d.name, "L2.4", "solvable")
    series, height = fitting_series(d.G)
    F = d.structure.fitting_subgroup
    van = d.vanishing_set()
    penult = series[-2] if len(series) >= 2 else None
    nonvan = []
    for c in conjugacy_classes(d.G):
        if c.index in van:
            continue
        k = _quotient_order(c.representative, F)
        if k & (k - 1):
            return _verdict(d.name, "L2.4", False, {"class": c.index, "order_mod_fitting": k})
        if not d.structure.nilpotent and not penult.contains(c.representative):
            return _verdict(d.name, "L2.4", False, {"class": c.index, "penultimate_fitting_term": subgroup_json(penult)})
        nonvan.append(c.index)
    return _verdict(d.name, "L2.4", True, {"non_vanishing_classes": nonvan, "fitting_height": height})


def _is_nonabelian_simple(G: PermGroup) -> bool:
    return not G.is_abelian() and len(normal_subgroups(G)) == 2


def check_lemma_2_5(d: GroupData) -> TheoremVerdict:
    """Defect-zero characters of simple groups: every prime for the Lie-type
    members, primes ``p >= 5`` otherwise."""
    if not _is_nonabelian_simple(d.G):
        return _na(d.name, "L2.5", "non-abelian-simple")
    lie = "lie-type" in d.named.tags
    table = d.table
    found = {}
    for p in prime_factors(d.G.order):
        if not lie and p < 5:
            continue
        rows = [r for r in range(len(table)) if p_defect_zero(table, r, p)]
        if not rows:
            return _verdict(d.name, "L2.5", False, {"prime": p, "lie_type": lie})
        found[str(p)] = table.degrees[rows[0]]
    return _verdict(d.name, "L2.5", True, {"lie_type": lie, "defect_zero_degree": found})


def check_lemma_2_6(d: GroupData) -> TheoremVerdict:
    """If a normal ``N`` has a ``p``-defect-zero character then its elements of
    order divisible by ``p`` are vanishing in ``G``."""
    G = d.G
    lattice = normal_subgroups(G)
    classes = conjugacy_classes(G)
    van = d.vanishing_set()
    checked = []
    for i in range(1, len(lattice)):
        N = lattice.subgroups[i]
        if N.is_abelian():
            continue
        tN = d.table if N.order == G.order else character_table(N)
        for p in prime_factors(N.order):
            if not any(p_defect_zero(tN, r, p) for r in range(len(tN))):
                continue
            for c in sorted(lattice.class_support[i]):
                if classes[c].element_order % p == 0 and c not in van:
                    return _verdict(d.name, "L2.6", False, {"N": subgroup_json(N), "prime": p, "class": c})
            checked.append({"N": N.order, "prime": p})
    if not checked:
        return _na(d.name, "L2.6", "normal-defect-zero")
    return _verdict(d.name, "L2.6", True, {"checked": checked})


def check_brauer(d: GroupData) -> TheoremVerdict:
    """A ``p``-defect-zero character vanishes on every class of order divisible by ``p``."""
    table = d.table
    rows = 0
    for p in prime_factors(d.G.order):
        for r in range(len(table)):
            if not p_defect_zero(table, r, p):
                continue
            rows += 1
            for j, c in enumerate(table.classes):
                if c.element_order % p == 0 and not table.values[r][j].is_zero():
                    return _verdict(d.name, "Brauer", False, {"row": r, "prime": p, "class": j})
    if not rows:
        return _na(d.name, "Brauer", "defect-zero-character")
    return _verdict(d.name, "Brauer", True, {"defect_zero_pairs": rows})


def _small_normal(G: PermGroup) -> list[PermGroup]:
    return [Z for Z in normal_subgroups(G) if Z.order <= 2]


def _mod(G: PermGroup, Z: PermGroup) -> PermGroup:
    return G if Z.is_trivial() else quotient(G, Z).group


def _shape_b_i(G: PermGroup) -> PermGroup | None:
    for Z in _small_normal(G):
        f = frobenius_decomposition(_mod(G, Z))
        if f and f.complement_order == 2 and f.kernel_abelian and f.kernel.order % 2:
            return Z
    return None


def _shape_b_ii(G: PermGroup) -> tuple[PermGroup, int] | None:
    for Z in _small_normal(G):
        Q = _mod(G, Z)
        for F in normal_subgroups(Q):
            idx = Q.order // F.order
            if idx > 2:
                continue
            f = frobenius_decomposition(F)
            if f is None or f.complement_order != 3:
                continue
            c = nilpotency_class(f.kernel)
            if c is None or c > 2:
                continue
            if idx == 2 and not any(_order(g) == 2 and not F.contains(g)
                                    for g in _element_data(Q).perms):
                continue
            return Z, F.order
    return None


def check_theorem_2_10(d: GroupData) -> TheoremVerdict:
    """Groups whose characters each vanish on at most two classes."""
    if d.abelian:
        return _na(d.name, "T2.10", "non-abelian")
    m = max_vanishing_classes_per_character(d.table)
    if m > 2:
        return _na(d.name, "T2.10", "at-most-two-zeros")
    G = d.G
    if G.order == 60 and is_isomorphic_named(G, "A5"):
        return _verdict(d.name, "T2.10", True, {"case": "a", "type": "A5"})
    if G.order == 168 and _is_nonabelian_simple(G):
        return _verdict(d.name, "T2.10", True, {"case": "a", "type": "PSL(2,7)"})
    if not d.structure.solvable:
        return _verdict(d.name, "T2.10", False, {"max_zeros": m, "solvable": False})
    Z = _shape_b_i(G)
    if Z is not None:
        return _verdict(d.name, "T2.10", True, {"case": "b-i", "Z": Z.order})
    hit = _shape_b_ii(G)
    if hit is not None:
        return _verdict(d.name, "T2.10", True, {"case": "b-ii", "Z": hit[0].order, "F": hit[1]})
    return _verdict(d.name, "T2.10", False, {"max_zeros": m, "solvable": True})


def check_theorem_4_1(d: GroupData) -> TheoremVerdict:
    """Solvable groups: Gamma(G) has at most two components, and a disconnected
    Gamma(G) means Frobenius or nearly 2-Frobenius."""
    if not d.structure.solvable:
        return _na(d.name, "T4.1", "solvable")
    graph = vanishing_prime_graph(d.profile)
    k = len(graph.components)
    witness: dict = {"components": [list(c) for c in graph.components]}
    if k > 2:
        return _verdict(d.name, "T4.1", False, witness)
    if k == 2:
        if d.frob is not None:
            witness["frobenius_kernel"] = subgroup_json(d.frob.kernel)
        else:
            ok, wit = is_nearly_2_frobenius(d.G)
            if not ok:
                return _verdict(d.name, "T4.1", False, witness)
            F, F1, F2, L = wit
            witness["nearly_2_frobenius"] = {k: subgroup_json(v) for k, v in
                                             zip(("F", "F1", "F2", "L"), (F, F1, F2, L))}
            two, fl = is_2_frobenius(d.G)
            if two:
                witness["2_frobenius"] = {"F": subgroup_json(fl[0]), "L": subgroup_json(fl[1])}
    return _verdict(d.name, "T4.1", True, witness)


def check_theorem_4_2(d: GroupData) -> TheoremVerdict:
    """Frobenius complements have a normal subgroup with cyclic Sylow subgroups
    and quotient of one of the listed types."""
    f = d.frob
    if f is None:
        return _na(d.name, "T4.2", "frobenius")
    hit = complement_classification(f.complement)
    if hit is None:
        return _verdict(d.name, "T4.2", False, {"complement": subgroup_json(f.complement)})
    N, kind = hit
    return _verdict(d.name, "T4.2", True, {"N": N.order, "quotient_type": kind,
                                            "complement_order": f.complement_order})


def check_lemma_suite(d: GroupData) -> list[TheoremVerdict]:
    return [_guard(d.name, tid, fn, d) for tid, fn in LEMMA_CHECKS]


LEMMA_CHECKS: list[tuple[str, Callable[[GroupData], TheoremVerdict]]] = [
    ("L2.1", check_lemma_2_1),
    ("L2.2", check_lemma_2_2),
    ("C2.3", check_corollary_2_3),
    ("L2.4", check_lemma_2_4),
    ("L2.5", check_lemma_2_5),
    ("L2.6", check_lemma_2_6),
    ("Brauer", check_brauer),
    ("T2.10", check_theorem_2_10),
    ("T4.1", check_theorem_4_1),
    ("T4.2", check_theorem_4_2),
]


# ---------------------------------------------------------------------------
# number-theoretic bound


def lemma_2_9(p: int, f: int) -> bool:
    """Whether ``f < (q - 2)/2`` for ``q = p**f``; requires ``p`` prime and ``q >= 32``."""
    if not is_prime(p) or f < 1:
        raise InputError("lemma_2_9 needs a prime p and a positive f")
    q = p ** f
    if q < 32:
        raise InputError(f"lemma_2_9 needs q = p^f >= 32, got {q}")
    return 2 * f < q - 2


def _primes_upto(n: int) -> list[int]:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(x) for x in np.nonzero(sieve)[0]]


def check_lemma_2_9(limit: int = 10 ** 6) -> TheoremVerdict:
    count = 0
    for p in _primes_upto(limit):
        q, f = p, 1
        while q <= limit:
            if q >= 32:
                count += 1
                if not lemma_2_9(p, f):
                    return _verdict("*", "L2.9", False, {"p": p, "f": f})
            q *= p
            f += 1
    return _verdict("*", "L2.9", True, {"prime_powers_checked": count, "limit": limit})


# ---------------------------------------------------------------------------
# corpus runs


def _guard(name: str, theorem: str, fn, *args) -> TheoremVerdict:
    try:
        return fn(*args)
    except ResourceError as exc:
        return TheoremVerdict(name, theorem, "resource-error", {"error": str(exc)})


def verify_group(named: NamedGroup) -> list[TheoremVerdict]:
    d = GroupData(named)
    try:
        profile, structure = d.profile, d.structure
    except ResourceError as exc:
        return [TheoremVerdict(d.name, t, "resource-error", {"error": str(exc)})
                for t in THEOREM_IDS if t != "L2.9"]
    out = [
        _guard(d.name, "A", check_theorem_A, d.name, profile, structure),
        _guard(d.name, "B", lambda: check_theorem_B(d.name, profile, structure, d.frob)),
        _guard(d.name, "C", lambda: check_corollary_C(d.name, profile, d.frob)),
    ]
    out += check_lemma_suite(d)
    return out


def _summary(verdicts: Iterable[TheoremVerdict]) -> dict:
    keys = {"pass": "pass", "fail": "fail", "flagged": "flagged",
            "not-applicable": "na", "resource-error": "resource_error"}
    counts = {v: 0 for v in keys.values()}
    by_theorem: dict[str, dict[str, int]] = {}
    for v in verdicts:
        counts[keys[v.status]] += 1
        row = by_theorem.setdefault(v.theorem, {k: 0 for k in keys.values()})
        row[keys[v.status]] += 1
    counts["by_theorem"] = {t: by_theorem[t] for t in THEOREM_IDS if t in by_theorem}
    return counts


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    groups: list[dict]
    global_verdicts: list[TheoremVerdict]
    summary: dict

    def all_verdicts(self) -> list[TheoremVerdict]:
        out = [TheoremVerdict(g["group"], v["theorem"], v["status"], v["witness"])
               for g in self.groups for v in g["verdicts"]]
        return out + list(self.global_verdicts)

    def to_json(self) -> dict:
        return {"groups": self.groups,
                "global": [v.to_json() for v in self.global_verdicts],
                "summary": self.summary}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @property
    def exit_code(self) -> int:
        if self.summary["fail"]:
            return 1
        if self.summary["resource_error"]:
            return 3
        return 0


_RANK = {t: i for i, t in enumerate(THEOREM_IDS)}


def run_corpus(corpus: Iterable[NamedGroup], cfg: config.Config | None = None,
               include_global: bool = True) -> VerificationReport:
    with config.use(cfg or config.get()):
        entries = []
        for pos, named in enumerate(corpus):
            verdicts = sorted(verify_group(named), key=lambda v: _RANK[v.theorem])
            entries.append(((named.name, named.order, pos), {
                "group": named.name,
                "order": named.order,
                "verdicts": [v.to_json() for v in verdicts],
            }, verdicts))
        entries.sort(key=lambda e: e[0])
        glob = [check_lemma_2_9()] if include_global else []
        flat = [v for _, _, vs in entries for v in vs] + glob
        return VerificationReport([e[1] for e in entries], glob, _summary(flat))
