"""Verification suites run by the verify-all command."""
