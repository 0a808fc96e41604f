from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from vanset import build_group, conjugacy_classes, parse_permutation
from vanset.catalog import m11, resolve
from vanset.errors import InputError, ResourceError
from vanset.permgrp import (
    Permutation, PermGroup, center, class_members, derived_subgroup, elements, element_order,
    is_normal, quotient,
)


@pytest.mark.parametrize("text,degree,images", [
    ("(1 2 3)(4 5)", 5, (1, 2, 0, 4, 3)),
    ("", 4, (0, 1, 2, 3)),
    ("()", 3, (0, 1, 2)),
    ("(1,3)", 3, (2, 1, 0)),
])
def test_parse(text, degree, images):
    assert tuple(parse_permutation(text, degree)) == images


def test_parse_five_cycle_on_eight_points():
    p = parse_permutation("(1 2 3 4 5)", 8)
    assert p.order() == 5
    assert tuple(p)[5:] == (5, 6, 7)


@pytest.mark.parametrize("text,degree", [
    ("(1 9)", 5), ("(1 2 1)", 5), ("(1 2)(2 3)", 5), ("(1 2", 5), ("1 2)", 5), ("(a b)", 5), ("(0 1)", 3),
])
def test_parse_errors(text, degree):
    with pytest.raises(InputError):
        parse_permutation(text, degree)


def test_cycle_string_roundtrip():
    p = parse_permutation("(1 4)(2 5 3)", 6)
    assert parse_permutation(p.cycle_string(), 6) == p


def test_product_is_right_action():
    a = parse_permutation("(1 2)", 3)
    b = parse_permutation("(2 3)", 3)
    # apply a first, then b: 1 -> 2 -> 3
    assert (a * b)[0] == 2


@pytest.mark.parametrize("gens,degree,order", [
    (["(1 2)", "(1 2 3 4)"], 4, 24),
    (["(1 2 3)", "(3 4 5)"], 5, 60),
    (["(1 2)(3 4)", "(1 3)(2 4)"], 4, 4),
])
def test_orders(gens, degree, order):
    G = build_group([parse_permutation(g, degree) for g in gens])
    assert G.order == order
    assert G.order == len(oracle.closure([tuple(g) for g in G.generators], degree))


def test_m11_order():
    # brute-force closure gives 7920
    assert m11().group.order == 7920


def test_mixed_degrees_rejected():
    with pytest.raises(InputError):
        build_group([Permutation([1, 0]), Permutation([1, 0, 2])])


def test_elements_cap():
    G = m11().group
    assert len(elements(G, cap=10000)) == 7920
    with pytest.raises(ResourceError, match="7920"):
        elements(G, cap=1000)


def test_klein_elements():
    G = build_group([parse_permutation("(1 2)(3 4)", 4), parse_permutation("(1 3)(2 4)", 4)])
    els = elements(G)
    assert len(els) == 4 and all(element_order(g) <= 2 for g in els)


def test_membership():
    G = resolve("S4").group
    assert all(G.contains(g) for g in G.generators)
    assert G.contains(G.identity)
    assert not G.contains(tuple(range(5)))  # wrong degree
    A4 = resolve("A4").group
    assert not A4.contains(parse_permutation("(1 2)", 4))


# class sizes and element orders come from the brute-force oracle
CLASS_DATA = {
    "S3": [(1, 1), (3, 2), (2, 3)],
    "S4": [(1, 1), (3, 2), (6, 2), (8, 3), (6, 4)],
    "A5": [(1, 1), (15, 2), (20, 3), (12, 5), (12, 5)],
    "D10": [(1, 1), (5, 2), (2, 5), (2, 5)],
    "Q8": [(1, 1), (1, 2), (2, 4), (2, 4), (2, 4)],
    "SL(2,3)": [(1, 1), (1, 2), (4, 3), (4, 3), (6, 4), (4, 6), (4, 6)],
}


@pytest.mark.parametrize("name", sorted(CLASS_DATA))
def test_class_data(name):
    cls = conjugacy_classes(resolve(name).group)
    assert [(c.size, c.element_order) for c in cls] == CLASS_DATA[name]


@pytest.mark.parametrize("name", ["S4", "A5", "D12", "Q8", "C12", "Frob(7,3)", "SL(2,3)"])
def test_classes_match_oracle_partition(name):
    G = resolve(name).group
    els = oracle.closure([tuple(g) for g in G.generators], G.degree)
    ours = {frozenset(tuple(x) for x in class_members(G, c.index)) for c in conjugacy_classes(G)}
    assert ours == set(oracle.classes(els))


def _check_class_invariants(G: PermGroup):
    cls = conjugacy_classes(G)
    assert cls[0].representative.is_identity()
    assert sum(c.size for c in cls) == G.order
    keys = [(c.element_order, c.size, tuple(c.representative)) for c in cls]
    assert keys[1:] == sorted(keys[1:])
    els = elements(G)
    for c in cls:
        g = c.representative
        cent = sum(1 for x in els if x * g == g * x)
        assert c.size * cent == G.order
        assert c.element_order == math.lcm(*(len(z) for z in g.cycles()), 1)
        assert c.power_map[1 % len(c.power_map)] == c.index  # powers are taken mod the exponent
        assert c.power_map[0] == 0
        for s in range(2, min(len(c.power_map), 7)):
            target = cls[c.power_map[s]]
            assert target.element_order == c.element_order // math.gcd(c.element_order, s)


@pytest.mark.parametrize("name", ["S4", "A5", "D12", "Q16", "Frob(5,4)", "SL(2,3)"])
def test_class_invariants(name):
    _check_class_invariants(resolve(name).group)


@st.composite
def small_groups(draw):
    n = draw(st.integers(2, 6))
    k = draw(st.integers(1, 3))
    gens = [tuple(draw(st.permutations(range(n)))) for _ in range(k)]
    return n, gens


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_random_groups_against_closure(data):
    n, gens = data
    G = build_group([Permutation(g) for g in gens], degree=n)
    brute = oracle.closure(gens, n)
    assert G.order == len(brute)
    assert {tuple(x) for x in elements(G)} == brute
    assert len(conjugacy_classes(G)) == len(oracle.classes(brute))
    _check_class_invariants(G)


def test_center_and_derived():
    assert center(resolve("Q8").group).order == 2
    assert derived_subgroup(resolve("S4").group).order == 12
    assert center(resolve("D12").group).order == 2


def test_quotient_roundtrip():
    S4 = resolve("S4").group
    V4 = derived_subgroup(derived_subgroup(S4))
    assert is_normal(S4, V4)
    Q = quotient(S4, V4)
    assert Q.index == 6
    assert Q.group.order == 6
    for g in S4.generators:
        assert S4.contains(Q.lift(Q.image(g)))
        assert Q.coset_of(Q.lift(Q.image(g))) == Q.coset_of(g)
    assert Q.preimage(Q.image_of(V4)).order == 4
