"""Search the exponent signs of a unit against a reference log|u|^2.

log|u|^2 is linear in the signs, so each term is evaluated once with
nu = +1 and the 2^m sign vectors are scanned as subset sums, meeting in
the middle: both halves are enumerated, one is sorted, and every value of
the other is matched by binary search.
"""

import itertools
import logging
from decimal import Decimal
from typing import List, Optional, Sequence, Union

import mpmath
import numpy as np

from src.errors import Ambiguous, NoMatch
from src.gammaeval.point import DEFAULT_SETTINGS, GammaSettings
from .evaluator import eval_term, log_abs_sq
from .spec import UnitTermSpec

logger = logging.getLogger(__name__)

MAX_SEARCH_TERMS = 24
DEFAULT_TOLERANCE = 1e-10

Reference = Union[str, int, float, mpmath.mpf]


def printed_tolerance(text: str) -> mpmath.mpf:
    """One unit in the last printed decimal of ``text``."""
    exponent = Decimal(text.strip().rstrip(".")).as_tuple().exponent
    return mpmath.mpf(10) ** min(0, exponent)


def _half_sums(logs: Sequence[float]) -> np.ndarray:
    """Subset sums of +-logs, indexed by the bit pattern of the minus signs."""
    sums = np.zeros(1)
    for value in logs:
        sums = np.concatenate([sums + value, sums - value])
    return sums


def _signs_from_index(index: int, m: int) -> List[int]:
    # bit j of the index set means term j carries nu = -1
    return [-1 if (index >> j) & 1 else 1 for j in range(m)]


def sign_search(
    terms: Sequence[UnitTermSpec],
    reference: Reference,
    prec: int,
    tolerance: Optional[Reference] = None,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> List[int]:
    """Find the signs nu whose product matches a reference log|u|^2.

    Args:
        terms: Terms of the unit; their own signs are ignored
        reference: Reference value of log|u|^2, a printed decimal string or a number
        prec: Evaluation precision in bits
        tolerance: Accepted absolute difference; defaults to one unit in the
            last printed decimal for a string reference, else 1e-10
        settings: Evaluator settings

    Returns:
        The matching sign vector, in term order

    Raises:
        NoMatch: If no sign vector matches
        Ambiguous: If several sign vectors match, with the full list
    """
    m = len(terms)
    if m == 0:
        raise ValueError("sign search needs at least one term")
    if m > MAX_SEARCH_TERMS:
        raise ValueError(f"sign search supports at most {MAX_SEARCH_TERMS} terms, got {m}")

    with mpmath.workprec(prec):
        if tolerance is None:
            tol = printed_tolerance(reference) if isinstance(reference, str) else mpmath.mpf(DEFAULT_TOLERANCE)
        else:
            tol = mpmath.mpf(tolerance)
        target = mpmath.mpf(reference)

    logs = [log_abs_sq(eval_term(t.with_sign(1), prec, settings)) for t in terms]
    logger.debug(f"sign search over {m} terms, log|term|^2 = {[mpmath.nstr(v, 10) for v in logs]}")

    split = m // 2
    left = _half_sums([float(v) for v in logs[:split]])
    right = _half_sums([float(v) for v in logs[split:]])
    order = np.argsort(right)
    right_sorted = right[order]

    # float candidates are widened, then confirmed at full precision
    slack = float(tol) + 1e-9 * max(1.0, float(sum(abs(v) for v in logs)))
    goal = float(target)
    matches = []
    for i, value in enumerate(left):
        lo = np.searchsorted(right_sorted, goal - value - slack, side="left")
        hi = np.searchsorted(right_sorted, goal - value + slack, side="right")
        for pos in range(lo, hi):
            index = i | (int(order[pos]) << split)
            signs = _signs_from_index(index, m)
            with mpmath.workprec(prec):
                total = mpmath.fsum(s * v for s, v in zip(signs, logs))
                if abs(total - target) < tol:
                    matches.append(signs)

    if not matches:
        raise NoMatch(f"no sign vector over {m} terms reproduces log|u|^2 = {reference}")
    if len(matches) > 1:
        raise Ambiguous(f"{len(matches)} sign vectors reproduce log|u|^2 = {reference}", matches)

    logger.info(f"sign search matched {matches[0]}")
    return matches[0]


def all_sign_vectors(m: int) -> List[List[int]]:
    """Every sign vector of length m, the brute-force counterpart of sign_search."""
    return [list(s) for s in itertools.product((1, -1), repeat=m)]
