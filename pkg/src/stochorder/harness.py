"""Verification scenarios tying the pieces together: hypothesis checking
(premise order in transformed coordinates, convexity conditions,
log-concavity, lr chains), Monte-Carlo plus exact-oracle conclusion tests,
the unique-crossing counterexample, and randomized scenario suites.

Direction conventions: in the convex case the a-weighted sum is predicted
to dominate stochastically; in the concave case the b-weighted sum is.
For non-identical variables (given in lr-decreasing order) the convex case
pairs the i-th largest coefficient with the i-th variable, the concave
case the i-th smallest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, NumericError, OrderError, ParameterError
from .majorization import (
    MajorizationMode,
    WeightVector,
    as_weight_vector,
    check_majorize,
)
from .transforms import (
    ConditionVariant,
    Direction,
    GridSpec,
    Transform,
    check_convexity_conditions,
    make_exp,
    make_log_shift,
    make_power,
)
from .distributions import (
    DensitySpec,
    Dist,
    GammaPower,
    GeneralizedGamma,
    LRVerdict,
    LogConcavity,
    log_concavity_classify,
    lr_compare,
    transformed_density,
)
from .orders import (
    OrderVerdict,
    Relation,
    convolve_weighted,
    st_compare_empirical,
    st_compare_exact,
)

# Condition grid for hypothesis checks. Narrower than the classifier default
# so that exp-family factors stay representable; the product condition is
# still compared in log scale.
HARNESS_CONDITION_GRID = GridSpec(1e-2, 1e2, 24)
ORACLE_MAX_N = 4
_SPEC_LOGCC_TOL = 1e-7


class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class HypothesisCheck:
    status: CheckStatus
    detail: str = ""
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class HypothesisReport:
    majorization_ok: HypothesisCheck
    conditions_ok: HypothesisCheck
    logconcavity_ok: HypothesisCheck
    lr_chain_ok: HypothesisCheck

    def items(self):
        return (
            ("majorization_ok", self.majorization_ok),
            ("conditions_ok", self.conditions_ok),
            ("logconcavity_ok", self.logconcavity_ok),
            ("lr_chain_ok", self.lr_chain_ok),
        )

    @property
    def all_pass(self) -> bool:
        return all(c.status is CheckStatus.PASS for _, c in self.items())

    def first_not_passing(self) -> Optional[tuple[str, HypothesisCheck]]:
        for name, c in self.items():
            if c.status is not CheckStatus.PASS:
                return name, c
        return None

    def to_dict(self) -> dict:
        return {
            name: {"status": c.status.value, "detail": c.detail,
                   "witness": list(c.witness) if c.witness is not None else None}
            for name, c in self.items()
        }


@dataclass(frozen=True)
class Scenario:
    """One executable instance of a weighted-sum comparison theorem."""

    dists: tuple[Dist, ...]
    phi: Transform
    psi: Transform
    variant: ConditionVariant
    a: WeightVector
    b: WeightVector
    premise_mode: MajorizationMode = MajorizationMode.FULL
    n_samples: int = 100_000
    seed: int = 42
    delta: float = 0.01
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "dists", tuple(self.dists))
        object.__setattr__(self, "a", as_weight_vector(self.a))
        object.__setattr__(self, "b", as_weight_vector(self.b))
        n = len(self.dists)
        if not (n == len(self.a) == len(self.b)):
            raise ParameterError(
                f"dists/a/b lengths differ: {n}, {len(self.a)}, {len(self.b)}"
            )
        if self.n_samples < 1000:
            raise ParameterError("n_samples must be >= 1000")
        if not 0 < self.delta < 1:
            raise ParameterError("delta must lie in (0, 1)")

    @property
    def is_iid(self) -> bool:
        return all(d == self.dists[0] for d in self.dists[1:])

    def to_dict(self) -> dict:
        return {
            "dists": [_dist_to_spec(d) for d in self.dists],
            "phi": list(self.phi.kind),
            "psi": list(self.psi.kind),
            "variant": self.variant.value,
            "a": list(self.a),
            "b": list(self.b),
            "premise_mode": self.premise_mode.value,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "delta": self.delta,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            return cls(
                dists=tuple(_dist_from_spec(s) for s in data["dists"]),
                phi=transform_from_spec(data["phi"]),
                psi=transform_from_spec(data["psi"]),
                variant=ConditionVariant(data["variant"]),
                a=tuple(data["a"]),
                b=tuple(data["b"]),
                premise_mode=MajorizationMode(data.get("premise_mode", "full")),
                n_samples=int(data.get("n_samples", 100_000)),
                seed=int(data.get("seed", 42)),
                delta=float(data.get("delta", 0.01)),
                label=str(data.get("label", "")),
            )
        except KeyError as exc:
            raise ParameterError(f"scenario is missing field {exc}") from exc


def _dist_to_spec(d: Dist) -> list:
    if isinstance(d, GeneralizedGamma):
        return ["gengamma", d.p, d.alpha, d.lam]
    if isinstance(d, GammaPower):
        return ["gammapower", d.r, d.alpha, d.lam]
    raise ParameterError(f"cannot serialize distribution {d!r}")


def _dist_from_spec(spec: Sequence) -> Dist:
    name = spec[0]
    if name == "gengamma":
        return GeneralizedGamma(float(spec[1]), float(spec[2]), float(spec[3]))
    if name == "gammapower":
        return GammaPower(float(spec[1]), float(spec[2]), float(spec[3]))
    raise ParameterError(f"unknown distribution spec {spec!r}")


def transform_from_spec(spec: Sequence) -> Transform:
    name = spec[0]
    if name == "exp":
        return make_exp()
    if name == "power":
        return make_power(float(spec[1]))
    if name == "logshift":
        return make_log_shift()
    raise ParameterError(f"unknown transform spec {spec!r}")


@dataclass(frozen=True)
class TheoremReport:
    hypothesis: HypothesisReport
    verdict: OrderVerdict
    oracle_verdict: Optional[OrderVerdict]
    consistent: bool
    predicted: str            # "a" or "b"
    label: str = ""

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "predicted": self.predicted,
            "consistent": self.consistent,
            "hypothesis": self.hypothesis.to_dict(),
            "verdict": _verdict_to_dict(self.verdict),
            "oracle_verdict": (
                _verdict_to_dict(self.oracle_verdict)
                if self.oracle_verdict is not None
                else None
            ),
        }


def _verdict_to_dict(v: OrderVerdict) -> dict:
    return {
        "relation": v.relation.value,
        "max_pos_dev": v.max_pos_dev,
        "max_neg_dev": v.max_neg_dev,
        "band": v.band,
        "crossing_count": v.crossing_count,
        "meta": {k: v.meta[k] for k in sorted(v.meta)},
    }


def _inverse_weights(phi: Transform, w: WeightVector) -> np.ndarray:
    out = []
    for t in w:
        try:
            v = float(phi.inverse(float(t)))
        except (ValueError, OverflowError, ZeroDivisionError) as exc:
            raise DomainError(
                f"{phi.label} inverse undefined at weight {t}"
            ) from exc
        if not math.isfinite(v):
            raise DomainError(f"{phi.label} inverse non-finite at weight {t}")
        out.append(v)
    return np.asarray(out)


def _licensed_weak_mode(variant: ConditionVariant, phi: Transform) -> MajorizationMode:
    """The weak order that may replace full majorization in the premise."""
    increasing = phi.direction is Direction.INCREASING
    if variant is ConditionVariant.CONVEX_CASE:
        return MajorizationMode.WEAK_SUB if increasing else MajorizationMode.WEAK_SUP
    return MajorizationMode.WEAK_SUP if increasing else MajorizationMode.WEAK_SUB


def _psi_variant(psi: Transform):
    """The transform of X whose log-concavity the hypothesis needs.

    psi^{-1}(X) for psi = exp is log X; for psi = x^r it is X^(1/r).
    Returns None when no analytic reduction applies.
    """
    if psi.kind[0] == "exp":
        return "log"
    if psi.kind[0] == "power":
        return ("power", 1.0 / float(psi.kind[1]))
    return None


def _density_log_concavity(spec: DensitySpec, grid_n: int = 512) -> HypothesisCheck:
    """Numeric-only scan of a DensitySpec's log density; can refute, never
    certify."""
    lo, hi = spec.support
    pad = 1e-6 * (hi - lo)
    xs = np.linspace(lo + pad, hi - pad, grid_n)
    with np.errstate(divide="ignore"):
        h = np.log(np.maximum([float(spec.pdf(x)) for x in xs], 0.0))
    finite = np.isfinite(h)
    xs, h = xs[finite], h[finite]
    if len(xs) < 3:
        return HypothesisCheck(CheckStatus.UNKNOWN, "density vanishes on grid")
    x0, x1, x2 = xs[:-2], xs[1:-1], xs[2:]
    dd = ((h[2:] - h[1:-1]) / (x2 - x1) - (h[1:-1] - h[:-2]) / (x1 - x0)) / (x2 - x0)
    i = int(np.argmax(dd))
    if dd[i] > _SPEC_LOGCC_TOL:
        return HypothesisCheck(
            CheckStatus.FAIL,
            f"log-density curvature {float(dd[i]):.3g} > 0",
            witness=(float(x1[i]),),
        )
    return HypothesisCheck(CheckStatus.UNKNOWN, "no violation found on grid")


def _check_log_concavity(dists: Sequence[Dist], psi: Transform) -> HypothesisCheck:
    variant = _psi_variant(psi)
    seen: list[Dist] = []
    for d in dists:
        if d in seen:
            continue
        seen.append(d)
        if isinstance(d, (GeneralizedGamma, GammaPower)) and variant is not None:
            res = log_concavity_classify(d, variant)
            if res.verdict is LogConcavity.LOG_CONCAVE:
                continue
            status = (
                CheckStatus.FAIL
                if res.verdict is LogConcavity.NOT_LOG_CONCAVE
                else CheckStatus.UNKNOWN
            )
            label = getattr(d, "label", "dist")
            return HypothesisCheck(
                status,
                f"{label}: {res.detail}",
                witness=(res.witness,) if res.witness is not None else None,
            )
        # generic fallback: density of psi^{-1}(X) by change of variables
        spec = transformed_density(d, psi)
        check = _density_log_concavity(spec)
        if check.status is not CheckStatus.PASS:
            return check
    return HypothesisCheck(CheckStatus.PASS, "log-concave for every component")


def _check_lr_chain(dists: Sequence[Dist]) -> HypothesisCheck:
    if all(d == dists[0] for d in dists[1:]):
        return HypothesisCheck(CheckStatus.PASS, "identical distributions")
    for i in range(len(dists) - 1):
        res = lr_compare(dists[i], dists[i + 1])
        if res.verdict is LRVerdict.D1_LR_GREATER:
            continue
        status = (
            CheckStatus.UNKNOWN
            if res.verdict is LRVerdict.UNKNOWN
            else CheckStatus.FAIL
        )
        return HypothesisCheck(
            status,
            f"pair ({i}, {i + 1}): {res.verdict.value} ({res.detail})",
            witness=res.witness,
        )
    return HypothesisCheck(CheckStatus.PASS, "lr-decreasing chain verified")


def check_hypotheses(
    s: Scenario, condition_grid: GridSpec = HARNESS_CONDITION_GRID
) -> HypothesisReport:
    """Evaluate every hypothesis of the scenario's theorem.

    The premise order is checked between the phi-inverse images of the
    weight vectors; a weak premise mode must match the mode licensed by the
    variant and the direction of phi.
    """
    inv_a = _inverse_weights(s.phi, s.a)
    inv_b = _inverse_weights(s.phi, s.b)

    if s.premise_mode is MajorizationMode.FULL:
        ok = check_majorize(inv_b, inv_a, MajorizationMode.FULL)
        maj = HypothesisCheck(
            CheckStatus.PASS if ok else CheckStatus.FAIL,
            "full majorization premise" if ok else "premise order fails",
        )
    else:
        licensed = _licensed_weak_mode(s.variant, s.phi)
        if s.premise_mode is not licensed:
            maj = HypothesisCheck(
                CheckStatus.FAIL,
                f"mode {s.premise_mode.value} not licensed here "
                f"(expected {licensed.value})",
            )
        else:
            ok = check_majorize(inv_b, inv_a, s.premise_mode)
            maj = HypothesisCheck(
                CheckStatus.PASS if ok else CheckStatus.FAIL,
                f"weak premise ({s.premise_mode.value})" if ok else "premise order fails",
            )

    try:
        rep = check_convexity_conditions(s.phi, s.psi, s.variant, condition_grid)
        if rep.both_hold:
            cond = HypothesisCheck(CheckStatus.PASS, f"grid: {rep.grid_spec}")
        else:
            cond = HypothesisCheck(
                CheckStatus.FAIL,
                f"worst violation {rep.worst_violation:.3g}",
                witness=rep.worst_point,
            )
    except NumericError as exc:
        cond = HypothesisCheck(CheckStatus.UNKNOWN, f"grid evaluation failed: {exc}")

    logcc = _check_log_concavity(s.dists, s.psi)
    lr = _check_lr_chain(s.dists)
    return HypothesisReport(maj, cond, logcc, lr)


def _sample_weighted_sum(
    dists: Sequence[Dist], weights: np.ndarray, n: int, seed_seq: np.random.SeedSequence
) -> np.ndarray:
    total = np.zeros(n)
    children = seed_seq.spawn(len(dists))
    for d, w, child in zip(dists, weights, children):
        total += w * d.sample(n, int(child.generate_state(1)[0]))
    return total


def _anti_theorem_deviation(v: OrderVerdict, predicted: str) -> float:
    # predicted "a": theorem claims F_A <= F_B, so positive F_A - F_B refutes
    return v.max_pos_dev if predicted == "a" else v.max_neg_dev


def _run_comparison(
    s: Scenario,
    hyp: HypothesisReport,
    a_used: np.ndarray,
    b_used: np.ndarray,
) -> TheoremReport:
    predicted = "a" if s.variant is ConditionVariant.CONVEX_CASE else "b"
    root = np.random.SeedSequence(s.seed)
    seq_a, seq_b = root.spawn(2)
    sums_a = _sample_weighted_sum(s.dists, a_used, s.n_samples, seq_a)
    sums_b = _sample_weighted_sum(s.dists, b_used, s.n_samples, seq_b)
    verdict = st_compare_empirical(sums_a, sums_b, s.delta)
    consistent = _anti_theorem_deviation(verdict, predicted) <= verdict.band

    oracle: Optional[OrderVerdict] = None
    if len(s.dists) <= ORACLE_MAX_N:
        fa = convolve_weighted(s.dists, a_used)
        fb = convolve_weighted(s.dists, b_used)
        oracle = st_compare_exact(fa, fb)
        consistent = consistent and (
            _anti_theorem_deviation(oracle, predicted) <= oracle.band
        )
    return TheoremReport(
        hypothesis=hyp,
        verdict=verdict,
        oracle_verdict=oracle,
        consistent=consistent,
        predicted=predicted,
        label=s.label,
    )


def _require_pass(hyp: HypothesisReport) -> None:
    bad = hyp.first_not_passing()
    if bad is not None:
        name, check = bad
        raise OrderError(
            f"hypothesis {name} is {check.status.value}: {check.detail}"
        )


def verify_iid_theorem(s: Scenario) -> TheoremReport:
    """Conclusion test for identically distributed components."""
    if not s.is_iid:
        raise ParameterError("verify_iid_theorem requires identical dists")
    hyp = check_hypotheses(s)
    _require_pass(hyp)
    return _run_comparison(s, hyp, s.a.as_array(), s.b.as_array())


def verify_noniid_theorem(s: Scenario) -> TheoremReport:
    """Conclusion test for an lr-decreasing chain of components.

    The convex case pairs the i-th largest coefficient with the i-th
    variable of the chain; the concave case pairs the i-th smallest.
    """
    hyp = check_hypotheses(s)
    _require_pass(hyp)
    if s.variant is ConditionVariant.CONVEX_CASE:
        a_used = np.sort(s.a.as_array())[::-1]
        b_used = np.sort(s.b.as_array())[::-1]
    else:
        a_used = np.sort(s.a.as_array())
        b_used = np.sort(s.b.as_array())
    return _run_comparison(s, hyp, a_used, b_used)


def pairwise_exchange_check(
    d1: Dist,
    d2: Dist,
    c: WeightVector | Sequence[float],
    phi: Transform,
    t_grid: Optional[np.ndarray] = None,
    tol: float = 1e-6,
) -> bool:
    """Exchange inequality for two variables with d1 lr-dominating d2.

    With w_hi >= w_lo the images of the two coefficients under phi, checks
    w_hi*X1 + w_lo*X2 >=_st w_lo*X1 + w_hi*X2 via the convolution oracle.
    """
    cv = as_weight_vector(c)
    if len(cv) != 2:
        raise ParameterError("pairwise check needs exactly two coefficients")
    res = lr_compare(d1, d2)
    if res.verdict is not LRVerdict.D1_LR_GREATER:
        raise OrderError(f"lr premise not established: {res.verdict.value}")
    w = sorted(float(phi.eval(float(t))) for t in cv)
    w_lo, w_hi = w
    if w_lo <= 0:
        raise DomainError("phi maps a coefficient to a nonpositive weight")
    f_big_first = convolve_weighted([d1, d2], (w_hi, w_lo))
    f_swapped = convolve_weighted([d1, d2], (w_lo, w_hi))
    if t_grid is None:
        t_grid = np.union1d(f_big_first.grid, f_swapped.grid)
    diff = f_big_first.evaluate(t_grid) - f_swapped.evaluate(t_grid)
    return bool(np.max(diff) <= tol)


def run_counterexample(
    alpha: float,
    a: WeightVector | Sequence[float],
    b: WeightVector | Sequence[float],
    mean_tol: float = 1e-8,
) -> TheoremReport:
    """Unique-crossing demonstration for gamma weighted sums.

    With a majorizing b, equal weight totals force equal means, so the two
    CDFs cannot be st-ordered; when a and b differ in exactly two sorted
    components the difference crosses zero exactly once.
    """
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    av = as_weight_vector(a).as_array()
    bv = as_weight_vector(b).as_array()
    if av.shape != bv.shape or len(av) < 3:
        raise ParameterError("need weight vectors of equal length n >= 3")
    if not check_majorize(bv, av, MajorizationMode.FULL):
        raise ParameterError("a must majorize b")
    ndiff = int(np.sum(~np.isclose(np.sort(av), np.sort(bv), rtol=1e-12, atol=1e-12)))
    if ndiff != 2:
        raise ParameterError(
            f"a and b must differ in exactly two sorted components, not {ndiff}"
        )
    n = len(av)
    dist = GeneralizedGamma(p=1.0, alpha=float(alpha), lam=1.0)
    fa = convolve_weighted([dist] * n, av)
    fb = convolve_weighted([dist] * n, bv)
    verdict = st_compare_exact(fa, fb)
    mean_a = float(alpha * np.sum(av))
    mean_b = float(alpha * np.sum(bv))
    verdict.meta.update(
        {"mean_a": mean_a, "mean_b": mean_b, "mean_gap": abs(mean_a - mean_b)}
    )
    crossing_as_predicted = (
        verdict.relation is Relation.CROSSING and verdict.crossing_count == 1
    )
    consistent = crossing_as_predicted and abs(mean_a - mean_b) < mean_tol
    trivially = HypothesisCheck(CheckStatus.PASS, "counterexample preconditions hold")
    hyp = HypothesisReport(trivially, trivially, trivially, trivially)
    return TheoremReport(
        hypothesis=hyp,
        verdict=verdict,
        oracle_verdict=verdict,
        consistent=consistent,
        predicted="crossing",
        label=f"counterexample alpha={alpha:g}",
    )


# ---------------------------------------------------------------------------
# Randomized suite generation
# ---------------------------------------------------------------------------


def _loguniform(rng: np.random.Generator, n: int, lo: float, hi: float) -> np.ndarray:
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size=n))


def _t_transform_mix(rng: np.random.Generator, u: np.ndarray, k: int) -> np.ndarray:
    """Apply k random averaging T-transforms; result is majorized by u."""
    v = np.array(u, dtype=float)
    for _ in range(k):
        i, j = rng.choice(len(v), size=2, replace=False)
        lam = float(rng.uniform(0.1, 0.9))
        vi, vj = v[i], v[j]
        v[i] = lam * vi + (1.0 - lam) * vj
        v[j] = lam * vj + (1.0 - lam) * vi
    return v


def _weights_pair(
    rng: np.random.Generator,
    phi: Transform,
    n: int,
    lo: float = 0.1,
    hi: float = 10.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Weight vectors with phi^{-1}(a) majorizing phi^{-1}(b) exactly."""
    a = _loguniform(rng, n, lo, hi)
    u = np.array([phi.inverse(float(t)) for t in a])
    v = _t_transform_mix(rng, u, k=int(rng.integers(1, 4)))
    b = np.array([phi.eval(float(t)) for t in v])
    return a, b


def _weaken(
    rng: np.random.Generator,
    b: np.ndarray,
    phi: Transform,
    mode: MajorizationMode,
) -> np.ndarray:
    """Perturb b so the premise holds in the weak order but (generically)
    not the full one: lower the transformed coordinates for the
    submajorization premise, raise them for the supmajorization one."""
    v = np.array([phi.inverse(float(t)) for t in b])
    span = 0.1 * (1.0 + float(np.max(np.abs(v))))
    if mode is MajorizationMode.WEAK_SUB:
        if np.all(v > 0):
            # multiplicative shrink keeps power-transform coordinates positive
            v = v * (1.0 - rng.uniform(0.0, 0.3))
        else:
            v = v - rng.uniform(0.0, span)
    else:
        v = v + rng.uniform(0.0, span)
    return np.array([phi.eval(float(t)) for t in v])


def _conjugate(x: float) -> float:
    """The exponent paired with x by 1/x + 1/y = 1."""
    return 1.0 / (1.0 - 1.0 / x)


@dataclass(frozen=True)
class SuiteConfig:
    n_scenarios: int = 200
    master_seed: int = 42
    n_samples: int = 100_000
    delta: float = 0.01
    presets: tuple[str, ...] = (
        "exp_exp",
        "power_a1",
        "power_a2",
        "power_a3",
        "logshift",
        "noniid_exp",
        "noniid_a1",
        "noniid_a2",
        "noniid_a3",
    )

    def to_dict(self) -> dict:
        return {
            "n_scenarios": self.n_scenarios,
            "master_seed": self.master_seed,
            "n_samples": self.n_samples,
            "delta": self.delta,
            "presets": list(self.presets),
        }


def _gen_exp_exp(rng, n):
    phi = make_exp()
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUB
        b = _weaken(rng, b, phi, mode)
    d = GeneralizedGamma(
        p=float(rng.uniform(1.0, 3.0)),
        alpha=float(rng.uniform(1.0, 4.0)),
        lam=float(rng.uniform(0.5, 2.0)),
    )
    return (d,) * n, phi, phi, ConditionVariant.CONVEX_CASE, a, b, mode


def _gen_power_a1(rng, n):
    inv_q = float(rng.uniform(1.05, 1.45))     # phi exponent; q in (0, 1)
    inv_p = 1.0 - inv_q                        # conjugate; p < 0
    phi = make_power(inv_q)
    psi = make_power(inv_p)
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUB
        b = _weaken(rng, b, phi, mode)
    # X = G**inv_p with alpha >= 3 keeps the inverse-power tail short enough
    # for the convolution oracle
    d = GammaPower(
        r=inv_p,
        alpha=float(rng.uniform(3.0, 5.0)),
        lam=float(rng.uniform(0.5, 2.0)),
    )
    return (d,) * n, phi, psi, ConditionVariant.CONVEX_CASE, a, b, mode


def _gen_power_a2(rng, n):
    p = float(rng.uniform(0.72, 0.95))         # psi exponent 1/p in (1.05, 1.4)
    inv_q = 1.0 - 1.0 / p                      # phi exponent; q < 0
    phi = make_power(inv_q)
    psi = make_power(1.0 / p)
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUP
        b = _weaken(rng, b, phi, mode)
    d = GeneralizedGamma(
        p=p,
        alpha=float(rng.uniform(1.0, 2.0)),
        lam=float(rng.uniform(0.5, 2.0)),
    )
    return (d,) * n, phi, psi, ConditionVariant.CONVEX_CASE, a, b, mode


def _gen_power_a3(rng, n):
    p = float(rng.uniform(1.2, 4.0))
    inv_q = 1.0 - 1.0 / p                      # in (0, 1); q > 1
    phi = make_power(inv_q)
    psi = make_power(1.0 / p)
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUP
        b = _weaken(rng, b, phi, mode)
    d = GeneralizedGamma(
        p=p,
        alpha=float(rng.uniform(1.0, 4.0)),
        lam=float(rng.uniform(0.5, 2.0)),
    )
    return (d,) * n, phi, psi, ConditionVariant.CONCAVE_CASE, a, b, mode


def _gen_logshift(rng, n):
    phi = make_log_shift()
    p = float(rng.uniform(2.0, 4.0))
    psi = make_power(1.0 / p)
    a, b = _weights_pair(rng, phi, n, lo=1.0, hi=10.0)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUP
        b = _weaken(rng, b, phi, mode)
    d = GeneralizedGamma(
        p=p,
        alpha=float(rng.uniform(1.0, 4.0)),
        lam=float(rng.uniform(0.5, 2.0)),
    )
    return (d,) * n, phi, psi, ConditionVariant.CONCAVE_CASE, a, b, mode


def _lr_chain_gengamma(rng, n, p, alpha_lo=1.0):
    """Chain of same-power distributions, lr-decreasing by increasing rate."""
    alpha = float(rng.uniform(alpha_lo, alpha_lo + 3.0))
    lams = np.sort(rng.uniform(0.5, 2.0, size=n))
    return tuple(GeneralizedGamma(p=p, alpha=alpha, lam=float(l)) for l in lams)


def _gen_noniid_exp(rng, n):
    phi = make_exp()
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUB
        b = _weaken(rng, b, phi, mode)
    dists = _lr_chain_gengamma(rng, n, p=float(rng.uniform(1.0, 3.0)))
    return dists, phi, phi, ConditionVariant.CONVEX_CASE, a, b, mode


def _gen_noniid_a1(rng, n):
    inv_q = float(rng.uniform(1.05, 1.45))
    inv_p = 1.0 - inv_q
    phi = make_power(inv_q)
    psi = make_power(inv_p)
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUB
        b = _weaken(rng, b, phi, mode)
    # negative power flips the lr order, so ascending shapes give a
    # decreasing chain
    alphas = np.sort(rng.uniform(3.0, 5.0, size=n))
    lam = float(rng.uniform(0.5, 2.0))
    dists = tuple(GammaPower(r=inv_p, alpha=float(al), lam=lam) for al in alphas)
    return dists, phi, psi, ConditionVariant.CONVEX_CASE, a, b, mode


def _gen_noniid_a2(rng, n):
    p = float(rng.uniform(0.72, 0.95))
    inv_q = 1.0 - 1.0 / p
    phi = make_power(inv_q)
    psi = make_power(1.0 / p)
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUP
        b = _weaken(rng, b, phi, mode)
    dists = _lr_chain_gengamma(rng, n, p=p)
    return dists, phi, psi, ConditionVariant.CONVEX_CASE, a, b, mode


def _gen_noniid_a3(rng, n):
    p = float(rng.uniform(1.2, 4.0))
    inv_q = 1.0 - 1.0 / p
    phi = make_power(inv_q)
    psi = make_power(1.0 / p)
    a, b = _weights_pair(rng, phi, n)
    mode = MajorizationMode.FULL
    if rng.random() < 0.5:
        mode = MajorizationMode.WEAK_SUP
        b = _weaken(rng, b, phi, mode)
    dists = _lr_chain_gengamma(rng, n, p=p)
    return dists, phi, psi, ConditionVariant.CONCAVE_CASE, a, b, mode


_PRESET_GENERATORS = {
    "exp_exp": _gen_exp_exp,
    "power_a1": _gen_power_a1,
    "power_a2": _gen_power_a2,
    "power_a3": _gen_power_a3,
    "logshift": _gen_logshift,
    "noniid_exp": _gen_noniid_exp,
    "noniid_a1": _gen_noniid_a1,
    "noniid_a2": _gen_noniid_a2,
    "noniid_a3": _gen_noniid_a3,
}


def generate_scenario(
    preset: str,
    seed_seq: np.random.SeedSequence,
    n_samples: int = 100_000,
    delta: float = 0.01,
    label: str = "",
) -> Scenario:
    """Randomized scenario for a named preset; deterministic per seed."""
    if preset not in _PRESET_GENERATORS:
        raise ParameterError(
            f"unknown preset {preset!r}; choose from {sorted(_PRESET_GENERATORS)}"
        )
    rng = np.random.default_rng(seed_seq)
    n = int(rng.integers(2, 5))
    dists, phi, psi, variant, a, b, mode = _PRESET_GENERATORS[preset](rng, n)
    return Scenario(
        dists=dists,
        phi=phi,
        psi=psi,
        variant=variant,
        a=tuple(a),
        b=tuple(b),
        premise_mode=mode,
        n_samples=n_samples,
        seed=int(rng.integers(2**31 - 1)),
        delta=delta,
        label=label or preset,
    )


@dataclass
class SuiteReport:
    config: SuiteConfig
    records: list = field(default_factory=list)
    n_consistent: int = 0
    n_inconsistent: int = 0
    n_skipped_unknown: int = 0
    n_failed_hypotheses: int = 0

    @property
    def n_run(self) -> int:
        return self.n_consistent + self.n_inconsistent

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "summary": {
                "run": self.n_run,
                "consistent": self.n_consistent,
                "inconsistent": self.n_inconsistent,
                "skipped_unknown": self.n_skipped_unknown,
                "failed_hypotheses": self.n_failed_hypotheses,
            },
            "records": self.records,
        }


def run_suite(config: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Run the randomized theorem suite; pure function of the config.

    Scenarios whose hypotheses come back UNKNOWN are skipped and counted;
    FAIL hypotheses (which the generators should never produce) are counted
    separately; every executed scenario contributes a consistency record.
    """
    report = SuiteReport(config=config)
    root = np.random.SeedSequence(config.master_seed)
    children = root.spawn(config.n_scenarios)
    for i, child in enumerate(children):
        preset = config.presets[i % len(config.presets)]
        s = generate_scenario(
            preset,
            child,
            n_samples=config.n_samples,
            delta=config.delta,
            label=f"{preset}#{i}",
        )
        record: dict = {"index": i, "preset": preset, "scenario": s.to_dict()}
        hyp = check_hypotheses(s)
        if not hyp.all_pass:
            name, check = hyp.first_not_passing()
            record["status"] = (
                "skipped_unknown"
                if check.status is CheckStatus.UNKNOWN
                else "failed_hypotheses"
            )
            record["hypothesis"] = hyp.to_dict()
            if check.status is CheckStatus.UNKNOWN:
                report.n_skipped_unknown += 1
            else:
                report.n_failed_hypotheses += 1
            report.records.append(record)
            continue
        tr = (
            verify_iid_theorem(s)
            if s.is_iid
            else verify_noniid_theorem(s)
        )
        record["status"] = "consistent" if tr.consistent else "inconsistent"
        record["report"] = tr.to_dict()
        if tr.consistent:
            report.n_consistent += 1
        else:
            report.n_inconsistent += 1
        report.records.append(record)
    return report
