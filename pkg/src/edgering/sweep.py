"""The parameter sweep used by the certification checks."""

from __future__ import annotations

from itertools import combinations_with_replacement

from .classify import CompactClass


def groups(max_len=2, max_entry=2):
    """Non-increasing tuples with 1..max_len entries in 1..max_entry."""
    out = []
    for size in range(1, max_len + 1):
        for t in combinations_with_replacement(range(max_entry, 0, -1), size):
            out.append(tuple(t))
    return out


def type1_classes(max_m=4, max_entry=2):
    out = []
    for m in range(2, max_m + 1):
        for t in combinations_with_replacement(range(max_entry, 0, -1), m):
            out.append(CompactClass.type1(t))
    return out


def type2_classes(max_len=2, max_entry=2, s_values=(0, 2, 4)):
    out = []
    for a, b in combinations_with_replacement(groups(max_len, max_entry), 2):
        for s in s_values:
            out.append(CompactClass.type2(a, b, s))
    return out


def type3_classes(max_len=2, max_entry=2):
    return [CompactClass.type3(a, b, c) for a, b, c in combinations_with_replacement(groups(max_len, max_entry), 3)]


def sweep_classes():
    """Type 1 with m<=4, p_i<=2; type 2 with m,n<=2, entries<=2, s in {0,2,4}; type 3 with m,n,k<=2, entries<=2."""
    return type1_classes() + type2_classes() + type3_classes()
