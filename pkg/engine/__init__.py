"""
验证引擎模块
"""

from .identity_verifier import (
    EXIT_CODES, CellRecord, CellStatus, GridSpec, IdentityQuery, IdentityVerifier,
    ProgressReporter, QueryOptions, Verdict, VerdictKind,
)

__all__ = [
    'EXIT_CODES',
    'CellRecord',
    'CellStatus',
    'GridSpec',
    'IdentityQuery',
    'IdentityVerifier',
    'ProgressReporter',
    'QueryOptions',
    'Verdict',
    'VerdictKind'
]
