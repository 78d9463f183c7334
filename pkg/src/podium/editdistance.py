"""Word-level edit distance with optional block shifts.

`levenshtein` is the plain insert/delete/substitute distance used by WER.
`shifted_edit_distance` interleaves it with greedy block shifts (each shift
costs one edit) in the style of the classic translation-edit-rate scorer:
repeatedly apply the shift that reduces the remaining edit distance the most,
stop when no shift reduces it, and charge the final edit distance on top.
"""

from __future__ import annotations

from typing import Sequence

MAX_SHIFT_SIZE = 10
MAX_SHIFT_DIST = 50


def levenshtein(a: Sequence[str], b: Sequence[str]) -> int:
    """Edit distance between token sequences, unit cost for ins/del/sub."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, tok_a in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, tok_b in enumerate(b, start=1):
            cost = 0 if tok_a == tok_b else 1
            current[j] = min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost)
        previous = current
    return previous[-1]


def _matching_blocks(hyp: Sequence[str], ref: Sequence[str]):
    """Yield (hyp_start, ref_start, length) for every shiftable block.

    A block is a contiguous hypothesis subsequence that exactly matches a
    reference subsequence, capped at MAX_SHIFT_SIZE words and MAX_SHIFT_DIST
    positions of displacement.
    """
    for i in range(len(hyp)):
        for j in range(len(ref)):
            if abs(i - j) > MAX_SHIFT_DIST:
                continue
            length = 0
            while (
                i + length < len(hyp)
                and j + length < len(ref)
                and hyp[i + length] == ref[j + length]
                and length < MAX_SHIFT_SIZE
            ):
                length += 1
                yield i, j, length


def _apply_shift(words: list[str], start: int, length: int, target: int) -> list[str]:
    """Move words[start:start+length] so the block begins at the
    reference-aligned position `target` of the remaining words."""
    block = words[start : start + length]
    rest = words[:start] + words[start + length :]
    return rest[:target] + block + rest[target:]


def _best_shift(hyp: list[str], ref: Sequence[str], current: int):
    """Return (reduction, shifted_hyp) for the best candidate shift.

    Ties are broken by earliest hypothesis position, then earliest reference
    position, then longest block.
    """
    best_key = None
    best_words = None
    for i, j, length in _matching_blocks(hyp, ref):
        if i == j:
            continue
        shifted = _apply_shift(hyp, i, length, j)
        reduction = current - levenshtein(shifted, ref)
        key = (reduction, -i, -j, length)
        if best_key is None or key > best_key:
            best_key = key
            best_words = shifted
    if best_key is None:
        return 0, hyp
    return best_key[0], best_words


def shifted_edit_distance(hyp: Sequence[str], ref: Sequence[str]) -> int:
    """Total edits to turn `hyp` into `ref`: greedy block shifts + Levenshtein."""
    words = list(hyp)
    shifts = 0
    distance = levenshtein(words, ref)
    while distance > 0:
        reduction, shifted = _best_shift(words, ref, distance)
        if reduction <= 0:
            break
        shifts += 1
        words = shifted
        distance -= reduction
    return shifts + distance
