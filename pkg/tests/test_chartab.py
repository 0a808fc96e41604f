from __future__ import annotations

import numpy as np
import pytest

import oracle
from vanset import config
from vanset.catalog import m11, resolve
from vanset.chartab import (
    character_table, class_constants, dixon_prime, dixon_prime_for, exponent, p_defect_zero,
)
from vanset.cyclotomic import Cyclotomic
from vanset.errors import ResourceError
from vanset.permgrp import class_members, conjugacy_classes, elements
from vanset.structure import prime_factors


@pytest.mark.parametrize("name,e", [("S4", 12), ("A5", 30), ("C7", 7), ("Q8", 4), ("S5", 60)])
def test_exponent(name, e):
    assert exponent(resolve(name).group) == e


@pytest.mark.parametrize("name,p", [("S4", 13), ("A5", 31), ("C3", 7)])
def test_dixon_prime(name, p):
    assert dixon_prime(resolve(name).group) == p


def test_dixon_prime_search_cap():
    with config.use(config.Config(cap_dixon_prime=50)):
        with pytest.raises(ResourceError):
            dixon_prime_for(10 ** 6, 7)


def test_class_constants_s3():
    G = resolve("S3").group
    a = class_constants(G)
    # classes: identity, transpositions, 3-cycles
    assert a[1, 1, 0] == 3
    assert a[0, 2, 2] == 1
    assert a[2, 2, 0] == 2


@pytest.mark.parametrize("name", ["S4", "A5", "D12", "SL(2,3)"])
def test_class_constants_independent_of_representative(name):
    G = resolve(name).group
    a = class_constants(G)
    cls = conjugacy_classes(G)
    members = [[tuple(x) for x in class_members(G, c.index)] for c in cls]
    cid = {x: i for i, m in enumerate(members) for x in m}
    els = [tuple(x) for x in elements(G)]
    for k, m in enumerate(members):
        z = m[-1]  # a second representative
        b = np.zeros((len(cls), len(cls)), dtype=np.int64)
        for x in els:
            b[cid[x], cid[oracle.mul(oracle.inv(x), z)]] += 1
        assert np.array_equal(b, a[:, :, k])
    sizes = np.array([c.size for c in cls])
    # each x in C_i has exactly one partner y = x^-1 z
    assert np.array_equal(a.sum(axis=1), np.repeat(sizes[:, None], len(cls), axis=1))


def test_s3_table():
    t = character_table(resolve("S3").group)
    assert t.degrees == [1, 1, 2]
    assert [int(v) for v in t.values[2]] == [2, 0, -1]
    assert t.values[2][1].is_zero()


def test_trivial_row_first():
    for name in ["S4", "A5", "Q8", "C5"]:
        t = character_table(resolve(name).group)
        assert all(v == 1 for v in t.values[0])


@pytest.mark.parametrize("name,degrees", [
    ("S4", [1, 1, 2, 3, 3]),
    ("A5", [1, 3, 3, 4, 5]),
    ("S5", [1, 1, 4, 4, 5, 5, 6]),
    ("SL(2,3)", [1, 1, 1, 2, 2, 2, 3]),
    ("Frob(5,4)", [1, 1, 1, 1, 4]),
])
def test_degrees(name, degrees):
    assert sorted(character_table(resolve(name).group).degrees) == degrees


def test_m11_table():
    t = character_table(m11().group)
    assert len(t) == 10
    assert sorted(t.degrees) == [1, 10, 10, 10, 11, 16, 16, 44, 45, 55]
    (row,) = [r for r in range(len(t)) if t.degrees[r] == 45]
    assert p_defect_zero(t, row, 3)


@pytest.mark.parametrize("name", ["S3", "S4", "A5", "Q8", "D10", "SL(2,3)", "Frob(7,3)", "C2xD12", "Q12"])
def test_matches_oracle(name):
    G = resolve(name).group
    t = character_table(G)
    o = oracle.OracleTable(G.generators, G.degree, [c.representative for c in t.classes])
    assert o.e == t.exponent
    assert sorted(tuple(v.coeffs for v in row) for row in t.values) == o.rows


def test_p_defect_zero():
    t = character_table(resolve("A5").group)
    (five,) = [r for r in range(len(t)) if t.degrees[r] == 5]
    assert p_defect_zero(t, five, 5)
    assert not p_defect_zero(t, five, 2)
    s4 = character_table(resolve("S4").group)
    assert not any(p_defect_zero(s4, r, 2) for r in range(len(s4)))


def _inner(t, a, b):
    tot = Cyclotomic.from_int(t.exponent, 0)
    for j, c in enumerate(t.classes):
        tot = tot + a[j] * b[j].conj() * c.size
    return tot


@pytest.mark.parametrize("name", ["S4", "A5", "Q16", "Frob(13,4)", "PSL(2,7)"])
def test_orthogonality(name):
    t = character_table(resolve(name).group)
    n = t.group_order
    for i in range(len(t)):
        for k in range(i, len(t)):
            assert _inner(t, t.values[i], t.values[k]) == (n if i == k else 0)
    cols = list(zip(*t.values))
    for i in range(len(cols)):
        for k in range(len(cols)):
            s = sum((cols[i][r] * cols[k][r].conj() for r in range(len(t))), Cyclotomic.from_int(t.exponent, 0))
            assert s == (n // t.classes[i].size if i == k else 0)


@pytest.mark.parametrize("name", ["S4", "A5", "SL(2,3)", "D16"])
def test_residues_consistent(name):
    t = character_table(resolve(name).group)
    for r in range(len(t)):
        assert [v.reduce_mod(t.dixon_prime, t.root) for v in t.values[r]] == [x % t.dixon_prime for x in t.residues[r]]
    assert pow(t.root, t.exponent, t.dixon_prime) == 1
    assert all(pow(t.root, t.exponent // q, t.dixon_prime) != 1 for q in prime_factors(t.exponent))


def test_degree_identities():
    for name in ["D20", "Q24", "Frob(11,5)", "A4"]:
        t = character_table(resolve(name).group)
        assert sum(d * d for d in t.degrees) == t.group_order
        assert all(t.group_order % d == 0 for d in t.degrees)
        assert len(t.degrees) == len(t.classes)
