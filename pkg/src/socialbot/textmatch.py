"""Fuzzy string matching for instance-name correction.

Similarity is the max of a normalized-edit-distance score and a token-set
overlap ratio, computed over whitespace-collapsed, case-folded strings.

The Levenshtein inner loop is the one hot path in the engine (it scans every
knowledge-base name of a topic per correction), so it comes in two flavors:
a compiled Cython kernel and a pure-Python fallback, selected at import.
Set SOCIALBOT_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
from typing import Callable, Iterable, Optional

if os.environ.get("SOCIALBOT_PURE_PYTHON") == "1":
    from socialbot._editdist_py import levenshtein

    KERNEL = "pure-python"
else:
    try:
        from socialbot._editdist import levenshtein  # type: ignore[no-redef]

        KERNEL = "compiled"
    except ImportError:
        from socialbot._editdist_py import levenshtein  # type: ignore[no-redef]

        KERNEL = "pure-python"


def normalize(text: str) -> str:
    return " ".join(text.split()).casefold()


def edit_similarity(a: str, b: str) -> float:
    """1 - dist/maxlen over normalized strings; 1.0 when both are empty."""
    a, b = normalize(a), normalize(b)
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def token_overlap(a: str, b: str) -> float:
    """Jaccard ratio of the normalized token sets."""
    ta, tb = set(normalize(a).split()), set(normalize(b).split())
    if not ta and not tb:
        return 1.0
    if not ta or not tb:
        return 0.0
    return len(ta & tb) / len(ta | tb)


def similarity(a: str, b: str) -> float:
    return max(edit_similarity(a, b), token_overlap(a, b))


def best_match(
    raw: str,
    candidates: Iterable[str],
    *,
    popularity: Optional[Callable[[str], float]] = None,
) -> tuple[Optional[str], float]:
    """Candidate with the highest similarity to `raw`.

    Ties break toward the more popular candidate (per `popularity`, higher
    wins), then lexicographically. Returns (None, 0.0) for no candidates.
    """
    key = normalize(raw)
    klen = len(key)
    best: Optional[str] = None
    best_score = -1.0
    best_pop = 0.0
    for cand in candidates:
        ckey = normalize(cand)
        score = token_overlap(key, ckey)
        # The length gap bounds edit similarity from above; run the DP only
        # when it could still beat or tie the best seen so far.
        longest = max(klen, len(ckey))
        bound = 1.0 if longest == 0 else 1.0 - abs(klen - len(ckey)) / longest
        if bound > score and bound >= best_score:
            dist_sim = 1.0 if longest == 0 else 1.0 - levenshtein(key, ckey) / longest
            score = max(score, dist_sim)
        pop = popularity(cand) if popularity else 0.0
        if (
            best is None
            or (score, pop) > (best_score, best_pop)
            or ((score, pop) == (best_score, best_pop) and cand < best)
        ):
            best, best_score, best_pop = cand, score, pop
    return best, (best_score if best is not None else 0.0)
