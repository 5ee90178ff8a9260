"""
Verification checks for QuantumTruth.

Each check runs one family of exact identities at a given N and reports
pass, fail or error.
"""

from .base import Check, CheckParams, CheckReport

__all__ = ['Check', 'CheckParams', 'CheckReport']
