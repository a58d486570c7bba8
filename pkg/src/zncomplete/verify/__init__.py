"""Verification campaigns, auditors and proof replays."""

from .audits import (
    CLAIMS,
    audit_chowla,
    audit_final_inequality,
    audit_lemma_eh,
    audit_mainlemma,
    audit_olson_identities,
    run_audit,
)
from .campaigns import check_conjecture, max_incomplete_size, verify_theorem
from .combinatorics import colex_rank, colex_unrank, enumerate_subsets
from .parallel import BudgetExceededError
from .replay import ProofTrace, antisymmetric_partition, replay_lemma_eh, replay_main_proof
from .report import AuditReport, Witness, evaluate_claim, recheck

__all__ = [
    "CLAIMS",
    "AuditReport",
    "BudgetExceededError",
    "ProofTrace",
    "Witness",
    "antisymmetric_partition",
    "audit_chowla",
    "audit_final_inequality",
    "audit_lemma_eh",
    "audit_mainlemma",
    "audit_olson_identities",
    "check_conjecture",
    "colex_rank",
    "colex_unrank",
    "enumerate_subsets",
    "evaluate_claim",
    "max_incomplete_size",
    "recheck",
    "replay_lemma_eh",
    "replay_main_proof",
    "run_audit",
    "verify_theorem",
]
