"""Character tables by the Dixon-Schneider method.

Outline: the class multiplication matrices ``M_i`` commute, and their common
eigenvectors over ``F_p`` (``p = 1 mod e``) are the central characters
``omega_chi``.  Degrees come from the orthogonality relation, residues of the
character values from ``chi(g_i) = d * omega_i / |C_i|``, and exact values
are recovered in ``Z[zeta_e]`` from the eigenvalue multiplicities of each
element, computed with the power maps.
"""
from __future__ import annotations

import dataclasses
import math
import random

import numpy as np

from . import config
from .cyclotomic import Cyclotomic
from .errors import ConsistencyError, ResourceError
from .permgrp import (
    ConjugacyClass,
    PermGroup,
    _class_data,
    _element_data,
    _inv,
    _mul,
    conjugacy_classes,
)
from .permgrp import exponent as _exponent
from .structure import is_prime, prime_factors


@dataclasses.dataclass(frozen=True)
class CharacterTable:
    group_order: int
    classes: list[ConjugacyClass]
    degrees: list[int]
    values: list[list[Cyclotomic]]  # rows: characters, columns: classes
    exponent: int
    dixon_prime: int
    root: int  # image of zeta_e in F_p
    residues: list[list[int]]  # chi(g_i) mod p as read off the eigenvectors

    @property
    def class_sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def __len__(self) -> int:
        return len(self.values)

    def zeros(self, row: int) -> list[int]:
        return [j for j, v in enumerate(self.values[row]) if v.is_zero()]


# ---------------------------------------------------------------------------
# arithmetic helpers


def exponent(G: PermGroup) -> int:
    return _exponent(G)


def _primitive_root(p: int) -> int:
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


def dixon_prime_for(order: int, e: int) -> int:
    """Smallest prime ``p = 1 (mod e)`` with ``p > 2 sqrt(order)``."""
    limit = config.get().cap_dixon_prime
    p = e + 1
    while p * p <= 4 * order or not is_prime(p):
        p += e
        if p > limit:
            raise ResourceError(f"no Dixon prime below search limit {limit}")
    return p


def dixon_prime(G: PermGroup) -> int:
    return dixon_prime_for(G.order, exponent(G))


def class_constants(G: PermGroup) -> np.ndarray:
    """``a[i, j, k] = #{(x, y) : x in C_i, y in C_j, x y = z_k}`` for the fixed
    representative ``z_k`` of class ``k``."""
    def compute():
        classes = conjugacy_classes(G)
        data = _class_data(G)
        el = _element_data(G)
        cid = data.class_id
        index = el.index
        inverses = [_inv(x) for x in el.perms]
        r = len(classes)
        a = np.zeros((r, r, r), dtype=np.int64)
        xi_classes = np.array(cid, dtype=np.int64)
        for k, c in enumerate(classes):
            z = c.representative
            yj = np.fromiter((cid[index[_mul(xinv, z)]] for xinv in inverses),
                             dtype=np.int64, count=len(inverses))
            np.add.at(a[:, :, k], (xi_classes, yj), 1)
        return a
    return G.cached("class_constants", compute)


# -- linear algebra over F_p ----------------------------------------------------


def _rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = A.copy() % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right kernel of ``A`` over ``F_p``."""
    R, pivots = _rref(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for row, c in enumerate(pivots):
            basis[c, j] = (-R[row, f]) % p
    return basis


def _echelon_columns(B: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Re-basis the column space of ``B`` so the pivot rows form an identity."""
    R, pivots = _rref(B.T, p)
    return R[: len(pivots)].T.copy(), pivots


def _charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial over ``F_p``, highest degree first."""
    H = A.copy() % p
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.nonzero(H[m:, m - 1])[0]
        if not len(nz):
            continue
        i = m + nz[0]
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), -1, p)
        for r in range(m + 1, n):
            t = int(H[r, m - 1]) * inv % p
            if t:
                H[r] = (H[r] - t * H[m]) % p
                H[:, m] = (H[:, m] + t * H[:, r]) % p
    # recurrence for the characteristic polynomial of an upper Hessenberg matrix
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] * (m + 1)  # highest degree first
        for i, c in enumerate(prev):
            cur[i] = (cur[i] + c) % p
            cur[i + 1] = (cur[i + 1] - c * int(H[m - 1, m - 1])) % p
        t = 1
        for i in range(1, m):
            t = t * int(H[m - i, m - i - 1]) % p
            coef = t * int(H[m - i - 1, m - 1]) % p
            if coef:
                q = polys[m - i - 1]
                off = len(cur) - len(q)
                for k, c in enumerate(q):
                    cur[off + k] = (cur[off + k] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in poly:
        val = (val * xs + c) % p
    return [int(x) for x in np.nonzero(val == 0)[0]]


def _split(B: np.ndarray, pivots: list[int], M: np.ndarray, p: int) -> list[tuple[np.ndarray, list[int]]] | None:
    """Eigenspaces of ``M`` restricted to span(B); None if ``M`` is scalar there."""
    A = (M @ B)[pivots] % p
    d = A.shape[0]
    roots = _roots(_charpoly(A, p), p)
    if len(roots) == 1:
        return None
    parts = []
    total = 0
    for lam in roots:
        N = _nullspace((A - lam * np.eye(d, dtype=np.int64)) % p, p)
        total += N.shape[1]
        parts.append(_echelon_columns((B @ N) % p, p))
    if total != d:
        raise ConsistencyError("class matrix is not diagonalizable over F_p")
    return parts


def _common_eigenvectors(mats: list[np.ndarray], p: int, r: int) -> list[np.ndarray]:
    cfg = config.get()
    rng = random.Random(cfg.seed)
    done: list[np.ndarray] = []
    todo = [(np.eye(r, dtype=np.int64), list(range(r)), 1)]
    while todo:
        B, piv, start = todo.pop()
        if B.shape[1] == 1:
            done.append(B[:, 0])
            continue
        parts = None
        for i in range(start, len(mats)):
            parts = _split(B, piv, mats[i], p)
            if parts is not None:
                todo.extend((PB, Ppiv, i + 1) for PB, Ppiv in parts)
                break
        if parts is None:
            for _ in range(cfg.cap_split_rounds):
                coeffs = [rng.randrange(p) for _ in mats]
                combo = sum(c * m for c, m in zip(coeffs, mats)) % p
                parts = _split(B, piv, combo, p)
                if parts is not None:
                    todo.extend((PB, Ppiv, len(mats)) for PB, Ppiv in parts)
                    break
            else:
                raise ResourceError(f"eigenspace of dimension {B.shape[1]} did not split")
    return done


# ---------------------------------------------------------------------------


def _lift(residues: np.ndarray, classes: list[ConjugacyClass], e: int, p: int, lam: int,
          degrees: list[int]) -> list[list[Cyclotomic]]:
    """Exact values from residues: for ``g`` of order ``o``, the multiplicity of
    ``zeta_o**t`` as an eigenvalue is ``o^-1 sum_s chi(g^s) mu^(-t s)``."""
    nrows = residues.shape[0]
    columns = []
    bound = np.array(degrees, dtype=np.int64)[:, None]
    for c in classes:
        o = c.element_order
        mu_inv = pow(lam, -(e // o), p)
        ts = np.outer(np.arange(o), np.arange(o)) % o
        w = np.array([pow(mu_inv, k, p) for k in range(o)], dtype=np.int64)[ts]
        powers = residues[:, [c.power_map[s] for s in range(o)]]
        mult = (powers @ w.T) % p * pow(o, -1, p) % p
        if (mult > bound).any():
            raise ConsistencyError("eigenvalue multiplicity exceeds the degree")
        full = np.zeros((nrows, e), dtype=np.int64)
        full[:, np.arange(o) * (e // o)] = mult
        columns.append([Cyclotomic.from_exponents(e, full[i]) for i in range(nrows)])
    return [[columns[j][i] for j in range(len(classes))] for i in range(nrows)]


def character_table(G: PermGroup) -> CharacterTable:
    """Irreducible characters of ``G`` with exact values in ``Z[zeta_e]``.

    Rows are sorted by degree, then by coefficient vectors, with the trivial
    character pinned first.
    """
    cached = G._cache.get("character_table")
    if cached is not None:
        return cached
    classes = conjugacy_classes(G)
    r = len(classes)
    e = exponent(G)
    p = dixon_prime_for(G.order, e)
    lam = pow(_primitive_root(p), (p - 1) // e, p)
    sizes = [c.size for c in classes]
    inverse_class = [c.power_map[-1] for c in classes]

    a = class_constants(G)
    mats = [a[i] % p for i in range(r)]
    vectors = _common_eigenvectors(mats, p, r)
    if len(vectors) != r:
        raise ConsistencyError(f"found {len(vectors)} central characters for {r} classes")

    max_deg = math.isqrt(G.order)
    found = []
    for v in vectors:
        omega = [int(x) for x in v]
        if omega[0] != 1:
            raise ConsistencyError("central character not normalized at the identity")
        s = sum(omega[i] * omega[inverse_class[i]] * pow(sizes[i], -1, p) for i in range(r)) % p
        target = G.order * pow(s, -1, p) % p
        degs = [d for d in range(1, max_deg + 1) if d * d % p == target]
        if len(degs) != 1:
            raise ConsistencyError(f"degree congruence has {len(degs)} roots")
        d = degs[0]
        found.append((d, [d * omega[i] * pow(sizes[i], -1, p) % p for i in range(r)]))
    degs = [d for d, _ in found]
    lifted = _lift(np.array([res for _, res in found], dtype=np.int64), classes, e, p, lam, degs)
    rows = [(d, vals, res) for (d, res), vals in zip(found, lifted)]

    def key(row):
        d, vals, _ = row
        trivial = all(v == 1 for v in vals)
        return (d, not trivial, tuple(v.coeffs for v in vals))

    rows.sort(key=key)
    degrees = [d for d, _, _ in rows]
    if sum(d * d for d in degrees) != G.order:
        raise ConsistencyError("sum of squared degrees differs from the group order")
    table = CharacterTable(
        group_order=G.order,
        classes=classes,
        degrees=degrees,
        values=[vals for _, vals, _ in rows],
        exponent=e,
        dixon_prime=p,
        root=lam,
        residues=[res for _, _, res in rows],
    )
    G._cache["character_table"] = table
    return table


def is_zero(v: Cyclotomic) -> bool:
    return v.is_zero()


def p_defect_zero(table: CharacterTable, row: int, p: int) -> bool:
    """True iff ``p`` does not divide ``|G| / chi(1)``."""
    return (table.group_order // table.degrees[row]) % p != 0
