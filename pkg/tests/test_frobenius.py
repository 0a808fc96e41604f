from __future__ import annotations

import pytest

import oracle
from vanset import config
from vanset.catalog import default_corpus, resolve
from vanset.errors import ResourceError
from vanset.frobenius import (
    complement_classification, find_complement, frobenius_decomposition, frobenius_with_kernel,
    is_2_frobenius, is_frobenius, is_nearly_2_frobenius,
)
from vanset.permgrp import elements, trivial_group
from vanset.structure import fitting_subgroup, normal_subgroups


@pytest.mark.parametrize("name,kernel,complement,abelian", [
    ("S3", 3, 2, True),
    ("A4", 4, 3, True),
    ("D10", 5, 2, True),
    ("Frob(5,4)", 5, 4, True),
    ("Frob(13,6)", 13, 6, True),
])
def test_frobenius_examples(name, kernel, complement, abelian):
    d = frobenius_decomposition(resolve(name).group)
    assert d is not None
    assert (d.kernel.order, d.complement.order, d.kernel_abelian) == (kernel, complement, abelian)
    assert d.complement_order == complement


@pytest.mark.parametrize("name", ["S4", "Q8", "A5", "C6", "D12", "SL(2,3)", "S5"])
def test_not_frobenius(name):
    assert frobenius_decomposition(resolve(name).group) is None


def test_complement_meets_kernel_trivially():
    G = resolve("Frob(7,6)").group
    d = frobenius_decomposition(G)
    K = {tuple(x) for x in elements(d.kernel)}
    H = {tuple(x) for x in elements(d.complement)}
    assert K & H == {tuple(G.identity)}
    assert len(K) * len(H) == G.order


def test_frobenius_with_wrong_kernel():
    G = resolve("S4").group
    V4 = fitting_subgroup(G)
    assert frobenius_with_kernel(G, V4) is None
    A4 = resolve("A4").group
    assert frobenius_with_kernel(A4, fitting_subgroup(A4)) is not None


def test_find_complement():
    A4 = resolve("A4").group
    H = find_complement(A4, fitting_subgroup(A4))
    assert H is not None and H.order == 3
    S4 = resolve("S4").group
    with pytest.raises(ValueError):
        find_complement(S4, fitting_subgroup(S4))  # orders 4 and 6 are not coprime


def test_search_cap():
    # the complement of C3 in D12 is a Klein group, so it needs two generators
    G = resolve("D12").group
    (K,) = [N for N in normal_subgroups(G) if N.order == 3]
    assert find_complement(G, K).order == 4
    with config.use(config.Config(cap_search=1)):
        with pytest.raises(ResourceError):
            find_complement(G, K)


def _frobenius_candidates():
    return [g.name for g in default_corpus() if 1 < g.order <= 40 and not g.group.is_abelian()]


@pytest.mark.parametrize("name", _frobenius_candidates())
def test_frobenius_matches_definition(name):
    # complement by definition: H meets every conjugate H^g (g outside H) trivially
    G = resolve(name).group
    brute = oracle.frobenius_complement_orders(oracle.closure([tuple(g) for g in G.generators], G.degree),
                                               G.degree)
    d = frobenius_decomposition(G)
    if d is None:
        assert not brute
    else:
        assert brute == {d.complement.order}


def test_two_frobenius_s4():
    ok, (F, L) = is_2_frobenius(resolve("S4").group)
    assert ok and F.order == 4 and L.order == 12


@pytest.mark.parametrize("name", ["S3", "C6", "D10", "A5", "Q8"])
def test_not_two_frobenius(name):
    assert is_2_frobenius(resolve(name).group) == (False, None)


def test_nearly_two_frobenius():
    ok, (F, F1, F2, L) = is_nearly_2_frobenius(resolve("S4").group)
    assert ok and F.order == 4 and L.order == 12
    assert {F1.order, F2.order} == {4, 1}
    for name in ["D10", "C6", "S3", "A5"]:
        assert not is_nearly_2_frobenius(resolve(name).group)[0]


def test_two_frobenius_implies_nearly():
    for g in default_corpus():
        if g.order > 200:
            continue
        if is_2_frobenius(g.group)[0]:
            assert is_nearly_2_frobenius(g.group)[0], g.name


@pytest.mark.parametrize("name,n_order,kind", [
    ("C2", 2, "1"),
    ("C3", 3, "1"),
    ("Q8", 2, "V4"),
    ("Q12", 12, "1"),
    ("SL(2,3)", 2, "A4"),
    ("S4", 1, "S4"),
    ("A5", 1, "A5"),
])
def test_complement_classification(name, n_order, kind):
    N, t = complement_classification(resolve(name).group)
    assert (N.order, t) == (n_order, kind)


def test_complement_classification_failure():
    assert complement_classification(resolve("D8").group)[1] == "V4"
    assert complement_classification(resolve("D12").group)[1] == "V4"
    # every cyclic normal subgroup leaves a quotient outside the list
    assert complement_classification(resolve("abelian:3,3").group) is None
    assert complement_classification(resolve("abelian:2,2,2,2").group) is None


def test_frobenius_complements_in_corpus_classify():
    for g in default_corpus():
        if g.order > 200:
            continue
        d = frobenius_decomposition(g.group)
        if d is not None:
            assert complement_classification(d.complement) is not None, g.name


def test_trivial_group():
    assert not is_frobenius(trivial_group(3))
    assert len(normal_subgroups(trivial_group(3))) == 1
