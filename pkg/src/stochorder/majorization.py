"""Vector preorders (majorization and its weak variants), constructive
T-transform chains, and weak-order completions.

Conventions: ``x <=_m y`` (``FULL``) means the partial sums of the smallest
components of ``x`` dominate those of ``y`` and the totals agree; ``WEAK_SUP``
(``x <=^w y``) keeps only the bottom-sum family, ``WEAK_SUB`` (``x <=_w y``)
keeps only the top-sum family with reversed inequality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InternalError, OrderError, ParameterError

DEFAULT_TOL = 1e-12


class MajorizationMode(Enum):
    FULL = "full"
    WEAK_SUB = "weak_sub"
    WEAK_SUP = "weak_sup"


@dataclass(frozen=True)
class WeightVector:
    """Immutable finite real vector of coefficients.

    Entries may be negative (transformed coordinates such as ``log a_i``);
    operations that need nonnegativity enforce it themselves.
    """

    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) < 1:
            raise ParameterError("WeightVector needs at least one entry")
        vals = tuple(float(v) for v in self.values)
        if not all(np.isfinite(vals)):
            raise ParameterError(f"non-finite entry in {vals}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


VectorLike = WeightVector | Sequence[float] | np.ndarray


def as_weight_vector(v: VectorLike) -> WeightVector:
    if isinstance(v, WeightVector):
        return v
    return WeightVector(tuple(float(t) for t in np.atleast_1d(np.asarray(v, dtype=float))))


@dataclass(frozen=True)
class TChain:
    """Chain of vectors from the majorized endpoint up to the majorizing one.

    Consecutive (sorted) steps differ in at most two coordinates and are
    linked by a single T-transform.
    """

    steps: tuple[WeightVector, ...] = field()

    def __len__(self) -> int:
        return len(self.steps)


def sort_increasing(v: VectorLike) -> WeightVector:
    """Stable nondecreasing rearrangement."""
    arr = as_weight_vector(v).as_array()
    return WeightVector(tuple(np.sort(arr, kind="stable")))


def _slack(tol: float, *sums: float) -> float:
    return tol * (1.0 + max(abs(s) for s in sums))


def check_majorize(
    x: VectorLike,
    y: VectorLike,
    mode: MajorizationMode = MajorizationMode.FULL,
    tol: float = DEFAULT_TOL,
) -> bool:
    """True iff ``x`` is (weakly) majorized by ``y`` in the given mode.

    All sum comparisons carry a relative slack ``tol * (1 + |sum|)``.
    """
    if tol < 0:
        raise ParameterError("tol must be >= 0")
    xa = as_weight_vector(x).as_array()
    ya = as_weight_vector(y).as_array()
    if xa.shape != ya.shape:
        raise DimensionError(f"length mismatch: {len(xa)} vs {len(ya)}")
    xs = np.sort(xa)
    ys = np.sort(ya)
    bx = np.cumsum(xs)
    by = np.cumsum(ys)

    def bottom_family(upto: int) -> bool:
        return all(
            bx[j] >= by[j] - _slack(tol, bx[j], by[j]) for j in range(upto)
        )

    if mode is MajorizationMode.WEAK_SUP:
        return bottom_family(len(xs))
    if mode is MajorizationMode.WEAK_SUB:
        # top sums: sum_{i>=j} x_(i) <= sum_{i>=j} y_(i)
        tx = np.cumsum(xs[::-1])
        ty = np.cumsum(ys[::-1])
        return all(tx[j] <= ty[j] + _slack(tol, tx[j], ty[j]) for j in range(len(xs)))
    # FULL
    total_ok = abs(bx[-1] - by[-1]) <= _slack(tol, bx[-1], by[-1])
    return total_ok and bottom_family(len(xs) - 1)


def t_transform_chain(
    x: VectorLike, y: VectorLike, tol: float = DEFAULT_TOL
) -> TChain:
    """Constructive chain of T-transforms linking ``sort(x)`` to ``sort(y)``.

    Requires ``x <=_m y``. Classical reduction: repeatedly transfer mass
    between the extreme pair of differing coordinates; at most ``n - 1``
    transforms.
    """
    xv = as_weight_vector(x)
    yv = as_weight_vector(y)
    if not check_majorize(xv, yv, MajorizationMode.FULL, tol):
        raise OrderError("t_transform_chain requires x <=_m y")
    # internal work in decreasing arrangement; sortedness is preserved by
    # the extreme-pair transfer rule
    target = np.sort(xv.as_array())[::-1].copy()
    cur = np.sort(yv.as_array())[::-1].copy()
    n = len(cur)
    scale = 1.0 + float(np.max(np.abs(np.concatenate([target, cur]))))
    eps = tol * scale

    def to_step(desc: np.ndarray) -> WeightVector:
        return WeightVector(tuple(desc[::-1]))

    steps_rev = [to_step(cur)]
    for _ in range(n):
        diff = cur - target
        if np.max(np.abs(diff)) <= eps:
            break
        # largest index j with cur_j > target_j, then smallest k > j with
        # cur_k < target_k (decreasing arrangement)
        above = np.nonzero(diff > eps)[0]
        below = np.nonzero(diff < -eps)[0]
        j = above[-1]
        k = below[below > j][0]
        delta = min(cur[j] - target[j], target[k] - cur[k])
        cur[j] -= delta
        cur[k] += delta
        steps_rev.append(to_step(cur))
    else:  # pragma: no cover
        raise InternalError("T-transform reduction did not terminate in n steps")
    steps_rev[-1] = sort_increasing(xv)  # snap the endpoint exactly
    return TChain(tuple(reversed(steps_rev)))


def _dominance_family(c: np.ndarray, v: np.ndarray, tol: float) -> bool:
    """Partial-sum family of ``c majorizes v``: top sums of ``c`` dominate
    those of ``v`` (decreasing arrangement); total equality is not required
    here and is reported separately by callers that care."""
    tc = np.cumsum(np.sort(c)[::-1])
    tv = np.cumsum(np.sort(v)[::-1])
    return all(tc[j] >= tv[j] - _slack(tol, tc[j], tv[j]) for j in range(len(c)))


def weak_completion(
    u: VectorLike,
    v: VectorLike,
    mode: MajorizationMode,
    tol: float = DEFAULT_TOL,
) -> WeightVector:
    """Construct the sandwich vector ``c`` between ``u`` and ``v``.

    ``WEAK_SUP``: requires ``u <=^w v``; returns ``c >= u`` componentwise
    whose decreasing partial sums dominate those of ``v``.
    ``WEAK_SUB``: requires ``v <=_w u``; returns ``c <= u`` componentwise
    with the same dominance family, matching total sums when feasible.

    The dominance family is asserted before returning; the total-sum clause
    of full majorization cannot always hold (the endpoint totals may differ)
    and is deliberately not enforced.
    """
    ua = as_weight_vector(u).as_array()
    va = as_weight_vector(v).as_array()
    if ua.shape != va.shape:
        raise DimensionError(f"length mismatch: {len(ua)} vs {len(va)}")

    if mode is MajorizationMode.WEAK_SUP:
        if not check_majorize(ua, va, MajorizationMode.WEAK_SUP, tol):
            raise OrderError("weak_completion(WEAK_SUP) requires u <=^w v")
        c = ua.copy()
        tc = np.cumsum(np.sort(c)[::-1])
        tv = np.cumsum(np.sort(va)[::-1])
        # raising the largest coordinate lifts every top partial sum equally
        bump = float(np.max(tv - tc))
        if bump > 0:
            c[int(np.argmax(c))] += bump
        if not (np.all(c >= ua - _slack(tol, *c, *ua)) and _dominance_family(c, va, tol)):
            raise InternalError("weak_completion postcondition failed (WEAK_SUP)")
        return WeightVector(tuple(c))

    if mode is MajorizationMode.WEAK_SUB:
        if not check_majorize(va, ua, MajorizationMode.WEAK_SUB, tol):
            raise OrderError("weak_completion(WEAK_SUB) requires v <=_w u")
        order = np.argsort(ua, kind="stable")
        us = ua[order]
        vs = np.sort(va)
        c_s = us.copy()
        excess = float(np.sum(ua) - np.sum(va))
        for i in range(len(us)):  # lower the smallest coordinates first
            if excess <= 0:
                break
            d = min(excess, max(0.0, c_s[i] - vs[i]))
            c_s[i] -= d
            excess -= d
        if not _dominance_family(c_s, va, tol):
            # fallback: undo reductions from the largest coordinate down
            for i in range(len(us) - 1, -1, -1):
                c_s[i] = us[i]
                if _dominance_family(c_s, va, tol):
                    break
        c = np.empty_like(ua)
        c[order] = c_s
        if not (np.all(c <= ua + _slack(tol, *c, *ua)) and _dominance_family(c, va, tol)):
            raise InternalError("weak_completion postcondition failed (WEAK_SUB)")
        return WeightVector(tuple(c))

    raise ParameterError("weak_completion mode must be WEAK_SUB or WEAK_SUP")


class PreservationCase(Enum):
    """The four monotone/convexity cases of weak-order preservation."""

    I_CONVEX = "increasing_convex"
    I_CONCAVE = "increasing_concave"
    D_CONVEX = "decreasing_convex"
    D_CONCAVE = "decreasing_concave"


_CASE_ORDERS = {
    # case -> (premise mode, conclusion mode)
    PreservationCase.I_CONVEX: (MajorizationMode.WEAK_SUB, MajorizationMode.WEAK_SUB),
    PreservationCase.I_CONCAVE: (MajorizationMode.WEAK_SUP, MajorizationMode.WEAK_SUP),
    PreservationCase.D_CONVEX: (MajorizationMode.WEAK_SUP, MajorizationMode.WEAK_SUB),
    PreservationCase.D_CONCAVE: (MajorizationMode.WEAK_SUB, MajorizationMode.WEAK_SUP),
}


def check_transform_preservation(
    g,
    x: VectorLike,
    y: VectorLike,
    case: PreservationCase,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Apply ``g`` elementwise and check the concluded weak order.

    ``g`` may be a :class:`~stochorder.transforms.Transform` or any scalar
    callable. The premise order of the chosen case must hold between ``x``
    and ``y``.
    """
    premise, conclusion = _CASE_ORDERS[case]
    xa = as_weight_vector(x).as_array()
    ya = as_weight_vector(y).as_array()
    if not check_majorize(xa, ya, premise, tol):
        raise OrderError(f"premise {premise.value} fails for case {case.value}")
    fn = getattr(g, "eval", g)
    gx = np.array([fn(t) for t in xa], dtype=float)
    gy = np.array([fn(t) for t in ya], dtype=float)
    return check_majorize(gx, gy, conclusion, tol)


def brute_force_majorize(
    x: Iterable[int], y: Iterable[int], mode: MajorizationMode
) -> bool:
    """Exact-integer reference evaluation of the three order definitions.

    Independent oracle for :func:`check_majorize`; works directly from the
    defining sum inequalities with Python integer arithmetic.
    """
    xs = sorted(int(t) for t in x)
    ys = sorted(int(t) for t in y)
    if len(xs) != len(ys):
        raise DimensionError("length mismatch")
    n = len(xs)
    if mode is MajorizationMode.WEAK_SUP:
        return all(sum(xs[: j + 1]) >= sum(ys[: j + 1]) for j in range(n))
    if mode is MajorizationMode.WEAK_SUB:
        return all(sum(xs[j:]) <= sum(ys[j:]) for j in range(n))
    return sum(xs) == sum(ys) and all(
        sum(xs[: j + 1]) >= sum(ys[: j + 1]) for j in range(n - 1)
    )
