from __future__ import annotations

import dataclasses
import json

import pytest

from vanset import config
from vanset.catalog import resolve
from vanset.chartab import character_table
from vanset.errors import InputError
from vanset.frobenius import FrobeniusDecomposition, frobenius_decomposition
from vanset.permgrp import trivial_group
from vanset.structure import (
    is_isomorphic_named, is_solvable, normal_subgroups, reference_group, structure_report,
)
from vanset.vanishing import pairwise_gcd_max, vanishing_profile
from vanset.verifier import (
    STATUSES, THEOREM_IDS, GroupData, check_brauer, check_corollary_C, check_lemma_2_4,
    check_lemma_2_5, check_lemma_2_9, check_theorem_2_10, check_theorem_4_1, check_theorem_A,
    check_theorem_B, VerificationReport, lemma_2_9, run_corpus, verify_group,
)


def verdicts(name):
    return {v.theorem: v for v in verify_group(resolve(name))}


@pytest.mark.parametrize("name,status", [("S4", "pass"), ("A5", "not-applicable"), ("D8", "pass"),
                                         ("C6", "not-applicable")])
def test_theorem_a(name, status):
    assert verdicts(name)["A"].status == status


def test_theorem_a_witness_d8():
    w = verdicts("D8")["A"].witness
    assert sorted(w["vanishing_orders"]) == [2, 2, 4] and w["pairwise_gcd_max"] == 2


def test_theorem_b():
    v = verdicts("D12")["B"]
    assert v.status == "pass" and v.witness["normal_2_complement"]["order"] == 3
    v = verdicts("D10")["B"]
    assert v.status == "pass" and v.witness["b"] == {"complement_fitting_height": 1, "case": "i"}
    v = verdicts("S4")["B"]
    assert v.status == "not-applicable" and v.witness["hypothesis"] == "supersolvable-or-O2-trivial"


@pytest.mark.parametrize("name", ["S3", "S4", "D14", "D10", "A4", "Q8"])
def test_corollary_c(name):
    v = verdicts(name)["C"]
    assert v.status == "pass"


def test_corollary_c_dihedral_kernel():
    w = verdicts("D14")["C"].witness
    assert w["satisfies_star"] and w["kernel"]["order"] == 7


def test_lemma_suite_examples():
    s4 = verdicts("S4")
    assert s4["T4.1"].status == "pass"
    assert s4["T4.1"].witness["components"] == [[2], [3]]
    assert s4["T4.1"].witness["2_frobenius"]["F"]["order"] == 4
    assert s4["T4.1"].witness["2_frobenius"]["L"]["order"] == 12
    assert s4["L2.4"].status == "pass" and s4["L2.4"].witness["non_vanishing_classes"] == [0, 1]
    a5 = verdicts("A5")
    assert a5["L2.5"].status == "pass"
    assert a5["L2.5"].witness["defect_zero_degree"] == {"2": 4, "3": 3, "5": 5}
    assert a5["T2.10"].witness == {"case": "a", "type": "A5"}
    assert a5["A"].status == "not-applicable"


def test_lemma_2_5_non_lie_type():
    # A7 is simple but not of Lie type here; only p >= 5 is required
    d = GroupData(resolve("A7"))
    v = check_lemma_2_5(d)
    assert v.status == "pass" and not v.witness["lie_type"]
    assert set(v.witness["defect_zero_degree"]) == {"5", "7"}


def test_every_verdict_well_formed():
    for name in ["S4", "A5", "C6", "D10"]:
        vs = verify_group(resolve(name))
        assert [v.theorem for v in vs] == list(THEOREM_IDS[:-1])
        for v in vs:
            assert v.status in STATUSES
            if v.status == "not-applicable":
                assert "hypothesis" in v.witness
            json.dumps(v.to_json())


@pytest.mark.parametrize("p,f,expected", [(2, 5, True), (37, 1, True), (2, 6, True), (5, 3, True)])
def test_lemma_2_9(p, f, expected):
    assert lemma_2_9(p, f) is expected


@pytest.mark.parametrize("p,f", [(3, 2), (4, 3), (31, 1), (2, 0)])
def test_lemma_2_9_preconditions(p, f):
    with pytest.raises(InputError):
        lemma_2_9(p, f)


def test_check_lemma_2_9():
    v = check_lemma_2_9(limit=10 ** 4)
    assert v.status == "pass" and v.group == "*"
    assert v.witness["prime_powers_checked"] > 1000


# ---------------------------------------------------------------------------
# forged inputs: fail and flagged verdicts must carry witnesses that replay


def test_forged_theorem_a_failure_replays():
    a5 = resolve("A5").group
    forged = dataclasses.replace(vanishing_profile(character_table(a5)), satisfies_star_star=True,
                                 pairwise_gcd_max=2, orders=(2, 3, 4))
    v = check_theorem_A("A5", forged, structure_report(a5))
    assert v.status == "fail"
    assert pairwise_gcd_max(v.witness["vanishing_orders"]) <= 2
    assert v.witness["solvable"] is False and not is_solvable(a5)


def test_forged_theorem_b_flagged_replays():
    s4 = resolve("S4").group
    prof = vanishing_profile(character_table(s4))
    forged_structure = dataclasses.replace(structure_report(s4), o2=trivial_group(4), supersolvable=False,
                                           normal_p_complement={2: None, 3: None})
    V4 = reference_group("V4")
    frob = FrobeniusDecomposition(V4, reference_group("S4"), True, 24)
    v = check_theorem_B("forged", prof, forged_structure, frob)
    assert v.status == "flagged"
    b = v.witness["b"]
    assert b["case"] == "ii"
    assert is_isomorphic_named(frob.complement, "S4") and b["complement"]["order"] == 24
    assert frob.kernel.is_abelian() and b["kernel"]["order"] == 4


def test_forged_theorem_b_failure():
    s4 = resolve("S4").group
    prof = vanishing_profile(character_table(s4))
    forged = dataclasses.replace(structure_report(s4), supersolvable=True,
                                 normal_p_complement={2: s4, 3: None})
    v = check_theorem_B("forged", prof, forged, None)
    assert v.status == "fail" and v.witness["a"]["complement_derived_length"] == 3


def test_forged_corollary_c_failure_replays():
    d10 = resolve("D10").group
    prof = vanishing_profile(character_table(d10))
    v = check_corollary_C("D10", prof, None)
    assert v.status == "fail"
    assert v.witness["satisfies_star"] and not v.witness["frobenius_abelian_kernel_order_two_complement"]
    assert frobenius_decomposition(d10) is not None  # the real decomposition restores the iff


def test_resource_error_becomes_verdict():
    with config.use(config.Config(cap_elements=10)):
        vs = verify_group(resolve("S4"))
    assert {v.status for v in vs} == {"resource-error"}


def test_run_corpus_small():
    names = ["S4", "S3", "D10"]
    rep = run_corpus([resolve(n) for n in names])
    assert [g["group"] for g in rep.groups] == ["D10", "S3", "S4"]
    assert all(v.status == "pass" for v in rep.all_verdicts() if v.theorem == "C")
    assert rep.summary["fail"] == 0 and rep.exit_code == 0
    assert rep.summary["by_theorem"]["C"]["pass"] == 3
    assert rep.global_verdicts[0].theorem == "L2.9"


def test_run_corpus_a5():
    rep = run_corpus([resolve("A5")], include_global=False)
    got = {v["theorem"]: v for v in rep.groups[0]["verdicts"]}
    assert got["A"]["status"] == "not-applicable"
    assert got["L2.5"]["status"] == "pass"
    assert got["T2.10"]["witness"]["case"] == "a"
    assert rep.global_verdicts == []


def test_exit_code_precedence():
    with config.use(config.Config(cap_elements=10)):  # S3 fits, S4 does not
        rep = run_corpus([resolve("S3"), resolve("S4")], include_global=False)
    assert rep.summary["resource_error"] > 0 and rep.exit_code == 3
    both = VerificationReport([], [], dict(rep.summary, fail=1))
    assert both.exit_code == 1


def test_check_helpers_directly():
    d = GroupData(resolve("D10"))
    assert check_brauer(d).status == "pass"
    assert check_lemma_2_4(d).status == "pass"
    assert check_theorem_4_1(d).witness == {"components": [[2]]}
    assert check_theorem_2_10(d).witness["case"] == "b-i"
    assert len(normal_subgroups(d.G)) == 3
