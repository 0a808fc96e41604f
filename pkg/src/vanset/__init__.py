"""Vanishing conjugacy classes of finite permutation groups.

Exact character tables (Dixon-Schneider over cyclotomic integers), vanishing
class profiles, structural predicates and a theorem-verification harness.
"""
from .catalog import NamedGroup, default_corpus, load_group_file, make, resolve
from .chartab import CharacterTable, character_table, p_defect_zero
from .config import Config
from .cyclotomic import Cyclotomic
from .errors import ConsistencyError, InputError, ResourceError, VansetError
from .frobenius import frobenius_decomposition, is_2_frobenius, is_nearly_2_frobenius
from .permgrp import Permutation, PermGroup, build_group, conjugacy_classes, parse_permutation
from .structure import normal_subgroups, structure_report
from .vanishing import PrimeGraph, VanishingProfile, prime_graph, vanishing_prime_graph, vanishing_profile
from .verifier import TheoremVerdict, run_corpus

__all__ = [
    "CharacterTable", "Config", "ConsistencyError", "Cyclotomic", "InputError", "NamedGroup",
    "PermGroup", "Permutation", "PrimeGraph", "ResourceError", "TheoremVerdict",
    "VanishingProfile", "VansetError", "build_group", "character_table", "conjugacy_classes",
    "default_corpus", "frobenius_decomposition", "is_2_frobenius", "is_nearly_2_frobenius",
    "load_group_file", "make", "normal_subgroups", "p_defect_zero", "parse_permutation",
    "prime_graph", "resolve", "run_corpus", "structure_report", "vanishing_prime_graph",
    "vanishing_profile",
]
