"""Argument checks shared by the public functions."""

from __future__ import annotations

import numbers


class BudgetExceeded(RuntimeError):
    """Raised when a requested computation would exceed its configured cap."""


DEFAULT_BUDGET = 10**8


def check_piece_length(a, minimum=2):
    if isinstance(a, bool) or not isinstance(a, numbers.Integral):
        raise TypeError(f"piece length must be an integer, got {a!r}")
    a = int(a)
    if a < minimum:
        raise ValueError(f"piece length must be >= {minimum}, got {a}")
    return a


def check_positive(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_bits(bits):
    """Normalise a bit string given as str or a sequence of 0/1."""
    if isinstance(bits, str):
        s = bits.strip()
    else:
        s = "".join(str(int(b)) for b in bits)
    if any(c not in "01" for c in s):
        raise ValueError(f"bit string may only contain 0 and 1: {bits!r}")
    return s


def check_budget(needed, budget):
    if budget is not None and needed > budget:
        raise BudgetExceeded(f"requested size {needed} exceeds budget {budget}")
