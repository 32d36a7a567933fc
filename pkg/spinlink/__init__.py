"""Exact verification of complexified quaternion and octonion generator identities."""

__version__ = "0.1.0"
