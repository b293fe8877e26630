"""Finite groups, HeLP audits and lemma checks."""

from ._core import (
    Group,
    GroupError,
    audit,
    corpus_group,
    corpus_manifest,
    genuine_element_passes,
    lemma_ledger,
    parse_group,
    read_group,
    trivial_pa,
)

__all__ = [
    "Group",
    "GroupError",
    "audit",
    "corpus_group",
    "corpus_manifest",
    "genuine_element_passes",
    "lemma_ledger",
    "parse_group",
    "read_group",
    "trivial_pa",
]
