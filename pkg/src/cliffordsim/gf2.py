"""Small GF(2) helpers on integer bitsets."""

from __future__ import annotations

from typing import Iterable


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of rows given as integer bitsets."""
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def affine_closed(vectors: Iterable[int]) -> bool:
    """True iff the set is a coset ``v0 + W`` of a GF(2) subspace ``W``."""
    vs = set(vectors)
    if not vs:
        return True
    v0 = next(iter(vs))
    diffs = {v ^ v0 for v in vs}
    return all((a ^ b) in diffs for a in diffs for b in diffs)
