"""
Identity Suites
The named groups of identity checks run by ``qcalc verify``. Each suite
draws its random parameters up front from a generator seeded by
(seed, suite position), so a suite reproduces the same draws whether it runs
alone or inside ``all``. Checks are then executed, optionally on a thread
pool, and reported in definition order.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .deformed_exp import (PQ_LADDER, Q_LADDER, ExpFamily, classical_limit_report, epq_munu,
                           eq_difference_residuals, eq_mu, named_exp, vinet_exp)
from .fourier_gauss import FGDirection, FGSpec, fg_verify
from .matrix_elements import (pq_kernel_L, pq_kernel_L_bibasic, q_kernel_Q, q_kernel_Q_laguerre,
                              q_kernel_Q_little_jacobi, q_kernel_Q_phi31, u_pq, u_q)
from .oscillator_rep import (OscKind, oracle_matrix_element, verify_algebra_relations,
                             verify_jackson_realization, verify_pq_realization)
from .qcore import (DEFAULT_POLICY, DeformationParams, DomainError, Scalar,
                    SeriesPolicy, VerificationReport, qpochhammer_inf)
from .qseries import (PhiSpec, big_q_jacobi, hahn_exton_bessel, heine_product, little_q_jacobi,
                      phi_rs, q_bessel_2)
from .rogers_szego import (MAX_DEGREE_EXACT, MAX_DEGREE_FLOATING, rs_alpha_difference_residuals,
                           rs_commutator_residuals, rs_creation_residual, rs_direct,
                           rs_generating2_closed, rs_generating2_series, rs_generating_closed,
                           rs_generating_series, rs_qdifference_residual, rs_recurrence)

__all__ = ["SuiteConfig", "SUITES", "SUITE_NAMES", "run_suite", "DEFAULT_SEED", "RATIONAL_Q_POOL",
           "RATIONAL_PQ_POOL"]

DEFAULT_SEED = 20240601
RATIONAL_Q_POOL: Tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))
EXACT_Y_POOL: Tuple[Fraction, ...] = (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(3, 2))
RATIONAL_PQ_POOL: Tuple[Tuple[Fraction, Fraction], ...] = (
    (Fraction(4, 5), Fraction(1, 2)), (Fraction(9, 10), Fraction(2, 3)), (Fraction(3, 4), Fraction(3, 5)))

IDENTITY_TOL = 1e-12  # Series identities in floating point
RELATION_TOL = 1e-13  # Oscillator relations and branch agreement
P_ONE_TOL = 1e-14  # p = 1 reduction of the (p,q)-exponential
ORACLE_TOL = 1e-9  # Closed-form matrix elements against the oracle
FG_TOL = 1e-7  # Fourier-Gauss transforms
LIMIT_RATIO = 0.5  # Each step of a classical-limit ladder must at least halve the deviation

DRAWS = 20
GENERATING_DRAWS = 50
EXPONENTIAL_DRAWS = 25
HEINE_DRAWS = 50
BRUTE_FORCE_TERMS = 200  # Terms summed by the independent loops
BRUTE_FORCE_FACTORS = 4000  # Factors of the infinite products in those loops

# Highest index or degree per suite when --max-n is not given
DEFAULT_MAX_N = {
    "recurrence": MAX_DEGREE_EXACT,
    "commutators": 15,
    "qdifference": 10,
    "algebra-relations": 10,
    "jackson": 12,
    "matrix-q": 12,
    "matrix-pq": 10,
}

# Configure module logger
logger = logging.getLogger('qcalc.suites')

Check = Callable[[], Union[VerificationReport, List[VerificationReport]]]


@dataclass(frozen=True)
class SuiteConfig:
    """Options shared by every suite.

    ``tol`` overrides each check's default tolerance (the classical-limit
    checks keep their contraction ratio). ``exact`` switches the structural
    suites to rational arithmetic over RATIONAL_Q_POOL and RATIONAL_PQ_POOL;
    the numerical suites ignore it.
    """

    seed: int = DEFAULT_SEED
    tol: Optional[float] = None
    exact: bool = False
    max_n: Optional[int] = None
    threads: int = 1
    policy: SeriesPolicy = DEFAULT_POLICY

    def __post_init__(self):
        if self.tol is not None and (self.tol < 0 or not math.isfinite(self.tol)):
            raise DomainError(f"tolerance must be a finite number >= 0, got {self.tol}")
        if self.max_n is not None and self.max_n < 1:
            raise DomainError(f"--max-n must be >= 1, got {self.max_n}")
        if self.threads < 1:
            raise DomainError(f"--threads must be >= 1, got {self.threads}")

    def tolerance(self, default: float) -> float:
        if self.tol is not None:
            return self.tol
        return 0.0 if self.exact else default

    def degree(self, key: str) -> int:
        if self.max_n is not None:
            return self.max_n
        if key == "recurrence" and not self.exact:
            return MAX_DEGREE_FLOATING
        return DEFAULT_MAX_N[key]

    def q_pool(self) -> Sequence[Scalar]:
        return RATIONAL_Q_POOL if self.exact else tuple(float(q) for q in RATIONAL_Q_POOL)

    def y_pool(self) -> Sequence[Scalar]:
        return EXACT_Y_POOL if self.exact else tuple(float(y) for y in EXACT_Y_POOL)


def _merge(name: str, params: Dict, reports: Sequence[VerificationReport],
           tolerance: float) -> VerificationReport:
    """Worst of several reports of the same identity."""
    worst = max(reports, key=lambda report: report.rel_err)
    return replace(worst, identity_name=name, parameters=dict(params), tolerance=tolerance,
                   passed=worst.rel_err <= tolerance)


def _uniform(rng: np.random.Generator, low: float, high: float) -> float:
    return float(rng.uniform(low, high))


def _pq_pair(rng: np.random.Generator) -> Tuple[float, float]:
    """p in [0.7, 1], q in [0.3, 0.9] with pq < 1."""
    return _uniform(rng, 0.7, 1.0), _uniform(rng, 0.3, 0.9)


# ============================================================================
# STRUCTURAL SUITES
# ============================================================================

def _recurrence_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    tolerance = config.tolerance(IDENTITY_TOL)
    max_n = config.degree("recurrence")

    def agreement(q: Scalar) -> VerificationReport:
        reports = [VerificationReport.polynomials("", {}, rs_direct(n, q), rs_recurrence(n, q), tolerance)
                   for n in range(max_n + 1)]
        return _merge("H_n: q-binomial sum = three-term recurrence",
                      {"q": q, "max_n": max_n}, reports, tolerance)

    def creation(q: Scalar) -> VerificationReport:
        reports = [VerificationReport.polynomials("", {}, rs_direct(n + 1, q) - rs_creation_residual(n, q),
                                                  rs_direct(n + 1, q), tolerance) for n in range(max_n + 1)]
        return _merge("H_(n+1) = H_n + y q^n T^-1 H_n", {"q": q, "max_n": max_n}, reports, tolerance)

    return ([partial(agreement, q) for q in config.q_pool()]
            + [partial(creation, q) for q in config.q_pool()])


def _commutator_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    tolerance = config.tolerance(IDENTITY_TOL)
    max_n = config.degree("commutators")

    def commutators(q: Scalar) -> List[VerificationReport]:
        by_name: Dict[str, List[VerificationReport]] = {}
        for n in range(max_n + 1):
            for check in rs_commutator_residuals(n, q):
                by_name.setdefault(check.name, []).append(
                    VerificationReport.polynomials(check.name, {}, check.lhs, check.rhs, tolerance,
                                                   check.scale))
        return [_merge(name, {"q": q, "max_n": max_n}, reports, tolerance)
                for name, reports in by_name.items()]

    return [partial(commutators, q) for q in config.q_pool()]


def _qdifference_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    tolerance = config.tolerance(IDENTITY_TOL)
    max_n = config.degree("qdifference")

    def difference(q: Scalar) -> VerificationReport:
        reports = []
        for n in range(max_n + 1):
            for y in config.y_pool():
                residual = rs_qdifference_residual(n, y, q)
                scale = sum(abs(c) * abs(y) ** k for k, c in enumerate(rs_direct(n, q).coefficients))
                reports.append(VerificationReport.compare("", {}, residual, 0, tolerance,
                                                          scale=max(scale, 1) / abs(1 - q)))
        return _merge("(D + y q^n D T^-1 - [n]) H_n = 0", {"q": q, "max_n": max_n}, reports, tolerance)

    def alpha_difference(q: Scalar) -> VerificationReport:
        reports = [VerificationReport.compare("", {}, residual.norm(), 0, tolerance, scale=1)
                   for residual in rs_alpha_difference_residuals(max_n, q)]
        return _merge("Rogers-Szego generating function alpha-difference rule",
                      {"q": q, "order": max_n}, reports, tolerance)

    def eq_difference(q: Scalar) -> VerificationReport:
        reports = [VerificationReport.compare("", {}, residual.norm(), 0, tolerance, scale=1)
                   for residual in eq_difference_residuals(max_n, q)]
        return _merge("D_alpha e_q(alpha y) = y/(1-q) e_q(alpha y)",
                      {"q": q, "order": max_n}, reports, tolerance)

    pool = config.q_pool()
    return ([partial(difference, q) for q in pool] + [partial(alpha_difference, q) for q in pool]
            + [partial(eq_difference, q) for q in pool])


def _algebra_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    max_index = config.degree("algebra-relations")
    jackson_degree = config.max_n if config.max_n is not None else DEFAULT_MAX_N["jackson"]
    exact_tol = config.tolerance(RELATION_TOL)
    float_tol = config.tol if config.tol is not None else RELATION_TOL
    checks: List[Check] = []
    for q in config.q_pool():
        checks.append(partial(verify_algebra_relations, OscKind.q_osc(q), max_index, exact_tol))
        checks.append(partial(verify_jackson_realization, q, jackson_degree, exact_tol))
    pq_pairs = RATIONAL_PQ_POOL if config.exact else [_pq_pair(rng) for _ in range(3)]
    for p, q in pq_pairs:
        checks.append(partial(verify_algebra_relations, OscKind.pq_osc(p, q), max_index, exact_tol))
        checks.append(partial(verify_pq_realization, p, q, jackson_degree, float_tol))
    return checks


# ============================================================================
# SERIES SUITES
# ============================================================================

def _generating_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    """Both generating functions over |alpha|, |t| <= 0.7 and |y| <= 1.

    H_m has nonnegative coefficients, so each series at (|alpha|, |y|) bounds the
    sum of |terms| and is the scale the error is measured against.
    """
    tolerance = config.tolerance(IDENTITY_TOL)
    policy = config.policy

    def first(alpha: float, y: float, q: float) -> VerificationReport:
        return VerificationReport.compare(
            "sum alpha^m H_m(y)/(q;q)_m = 1/((alpha;q)_inf (alpha y;q)_inf)",
            {"alpha": alpha, "y": y, "q": q},
            rs_generating_series(alpha, y, q, policy).value,
            rs_generating_closed(alpha, y, q, policy), tolerance,
            scale=rs_generating_closed(abs(alpha), abs(y), q, policy))

    def second(t: float, y: float, q: float) -> VerificationReport:
        return VerificationReport.compare(
            "sum t^m q^(m(m-1)/2) H_m(y)/(q;q)_m = (-t;q)_inf 1phi1(0;-t;q,-ty)",
            {"t": t, "y": y, "q": q},
            rs_generating2_series(t, y, q, policy).value,
            rs_generating2_closed(t, y, q, policy), tolerance,
            scale=rs_generating2_series(abs(t), abs(y), q, policy).value)

    checks: List[Check] = []
    for _ in range(GENERATING_DRAWS):
        checks.append(partial(first, _uniform(rng, -0.7, 0.7), _uniform(rng, -1.0, 1.0), _uniform(rng, 0.2, 0.9)))
    for _ in range(GENERATING_DRAWS):
        checks.append(partial(second, _uniform(rng, -0.7, 0.7), _uniform(rng, -1.0, 1.0), _uniform(rng, 0.2, 0.9)))
    return checks


def _exponential_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    policy = config.policy

    def product_mu0(z: float, q: float) -> VerificationReport:
        return VerificationReport.compare(
            "E_q^(0)(z) = 1/(z;q)_inf", {"z": z, "q": q}, eq_mu(z, q, 0, policy).value,
            1 / qpochhammer_inf(z, q, policy).value, config.tolerance(IDENTITY_TOL))

    def product_mu_half(z: float, q: float) -> VerificationReport:
        return VerificationReport.compare(
            "E_q^(1/2)(z) = (-q^(1/2) z;q)_inf", {"z": z, "q": q}, eq_mu(z, q, 0.5, policy).value,
            qpochhammer_inf(-math.sqrt(q) * z, q, policy).value, config.tolerance(IDENTITY_TOL))

    def p_one(z: float, q: float, mu: float, nu: float) -> VerificationReport:
        return VerificationReport.compare(
            "E_pq^(mu,nu) at p=1 = E_q^(mu)", {"z": z, "q": q, "mu": mu, "nu": nu},
            epq_munu(z, 1, q, mu, nu, policy).value, eq_mu(z, q, mu, policy).value,
            config.tolerance(P_ONE_TOL))

    def eps_named(z: float, p: float, q: float) -> VerificationReport:
        return VerificationReport.compare(
            "eps_pq = E_pq^(1/2)", {"z": z, "p": p, "q": q},
            named_exp("eps_pq", z, DeformationParams(q=q, p=p), policy).value,
            ExpFamily.pq_zeta(p, q, 0.5).evaluate(z, policy).value, config.tolerance(RELATION_TOL))

    def vinet_rescaled(z: float, p: float, q: float) -> VerificationReport:
        # Positive coefficients: the series at |z| is the sum of the term magnitudes
        return VerificationReport.compare(
            "E_pq^(1/2,1/2)(z) = E_pq((q/p)^(1/2) z)", {"z": z, "p": p, "q": q},
            epq_munu(z, p, q, 0.5, 0.5, policy).value,
            vinet_exp(math.sqrt(q / p) * z, p, q, policy).value, config.tolerance(RELATION_TOL),
            scale=epq_munu(abs(z), p, q, 0.5, 0.5, policy).value)

    checks: List[Check] = []
    for _ in range(EXPONENTIAL_DRAWS):
        checks.append(partial(product_mu0, _uniform(rng, 0.05, 0.9), _uniform(rng, 0.2, 0.9)))
    for _ in range(EXPONENTIAL_DRAWS):
        checks.append(partial(product_mu_half, _uniform(rng, 0.05, 2.0), _uniform(rng, 0.2, 0.9)))
    for _ in range(EXPONENTIAL_DRAWS):
        checks.append(partial(p_one, _uniform(rng, 0.05, 0.9), _uniform(rng, 0.2, 0.9),
                              _uniform(rng, 0.0, 1.0), _uniform(rng, 0.0, 1.0)))
    for _ in range(EXPONENTIAL_DRAWS):
        p, q = _pq_pair(rng)
        checks.append(partial(eps_named, _uniform(rng, -2.0, 2.0), p, q))
    for _ in range(EXPONENTIAL_DRAWS):
        p, q = _pq_pair(rng)
        checks.append(partial(vinet_rescaled, _uniform(rng, -2.0, 2.0), p, q))
    return checks


def _limit_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    """Deviation from exp(z) along each ladder: strictly decreasing, and at least
    halved by every step (LIMIT_RATIO)."""

    def ladder(z: float, mu: float, pq_mode: bool) -> List[VerificationReport]:
        rungs = [(p, q) for p, q in PQ_LADDER] if pq_mode else [(None, q) for q in Q_LADDER]
        deviations = classical_limit_report(z, mu, mu, rungs)
        steps = list(zip(deviations, deviations[1:]))
        ratio = max(later / max(earlier, 1e-300) for earlier, later in steps)
        name = "E_pq^(mu,mu)((1/p-q) z) -> exp(z)" if pq_mode else "E_q^(mu)((1-q) z) -> exp(z)"
        parameters = {"z": z, "mu": mu, "deviations": deviations}

        def report(suffix: str, tolerance: float, passed: bool) -> VerificationReport:
            return VerificationReport(identity_name=f"{name}: {suffix}", parameters=parameters,
                                      lhs=deviations[-1], rhs=deviations[0], abs_err=deviations[-1],
                                      rel_err=ratio, tolerance=tolerance, passed=passed)

        return [report("deviation strictly decreasing", 1.0, all(later < earlier for earlier, later in steps)),
                report("deviation halved per step", LIMIT_RATIO, ratio <= LIMIT_RATIO)]

    return [partial(ladder, z, mu, pq_mode) for pq_mode in (False, True)
            for z in (0.5, 1.0, -0.5) for mu in (0.0, 0.5)]


# ============================================================================
# SPECIAL FUNCTIONS AGAINST INDEPENDENT LOOPS
# ============================================================================

def _poch(a: float, q: float, n: int) -> float:
    product = 1.0
    for i in range(n):
        product *= 1 - a * q ** i
    return product


def _poch_inf(a: float, q: float) -> float:
    return _poch(a, q, BRUTE_FORCE_FACTORS)


def _brute_hahn_exton(n: int, z: float, q: float) -> Tuple[float, float]:
    terms = [(-1) ** k * q ** (k * (k + 1) / 2) * z ** (2 * k) / (_poch(q ** (n + 1), q, k) * _poch(q, q, k))
             for k in range(BRUTE_FORCE_TERMS)]
    prefactor = z ** n * _poch_inf(q ** (n + 1), q) / _poch_inf(q, q)
    return prefactor * math.fsum(terms), abs(prefactor) * math.fsum(abs(t) for t in terms)


def _brute_bessel_2(nu: int, x: float, q: float) -> Tuple[float, float]:
    terms = [(-1) ** k * q ** (k * (k + nu)) * (x / 2) ** (2 * k + nu) / (_poch(q, q, k) * _poch(q, q, k + nu))
             for k in range(BRUTE_FORCE_TERMS)]
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def _brute_little_jacobi(n: int, z: float, a: float, b: float, q: float) -> Tuple[float, float]:
    terms = [_poch(q ** -n, q, k) * _poch(a * b * q ** (n + 1), q, k) / (_poch(q, q, k) * _poch(a * q, q, k))
             * (q * z) ** k for k in range(n + 1)]
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def _brute_big_jacobi(n: int, z: float, a: float, b: float, q: float) -> Tuple[float, float]:
    terms = [_poch(q ** -n, q, k) * _poch(a * b * q ** (n + 1), q, k) * _poch(a * q * z, q, k)
             / (_poch(q, q, k) * _poch(a * q, q, k)) * q ** k for k in range(n + 1)]
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def _special_function_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    policy = config.policy
    loop_tol = config.tolerance(RELATION_TOL)

    def heine(a: float, z: float, q: float) -> VerificationReport:
        series = phi_rs(PhiSpec(upper_q=(a,), base_q=q, argument=z), policy).value
        # The all-positive series at (-|a|, |z|) bounds the sum of |terms|
        return VerificationReport.compare("1phi0(a;-;q,z) = (az;q)_inf/(z;q)_inf",
                                          {"a": a, "z": z, "q": q}, series,
                                          heine_product(a, z, q, policy), config.tolerance(IDENTITY_TOL),
                                          scale=heine_product(-abs(a), abs(z), q, policy))

    def against_loop(name: str, params: Dict, value: Scalar,
                     brute: Tuple[float, float]) -> VerificationReport:
        return VerificationReport.compare(name, params, value, brute[0], loop_tol, scale=brute[1])

    def hahn_exton(n: int, z: float, q: float) -> VerificationReport:
        return against_loop("Hahn-Exton J_n against term loop", {"n": n, "z": z, "q": q},
                            hahn_exton_bessel(n, z, q, policy).value, _brute_hahn_exton(n, z, q))

    def bessel_2(nu: int, x: float, q: float) -> VerificationReport:
        return against_loop("q-Bessel J^(2) against term loop", {"nu": nu, "x": x, "q": q},
                            q_bessel_2(nu, x, q, policy).value, _brute_bessel_2(nu, x, q))

    def little(n: int, z: float, a: float, b: float, q: float) -> VerificationReport:
        return against_loop("little q-Jacobi against term loop",
                            {"n": n, "z": z, "alpha": a, "beta": b, "q": q},
                            little_q_jacobi(n, z, a, b, q), _brute_little_jacobi(n, z, a, b, q))

    def big(n: int, z: float, a: float, b: float, q: float) -> VerificationReport:
        return against_loop("big q-Jacobi against term loop",
                            {"n": n, "z": z, "alpha": a, "beta": b, "q": q},
                            big_q_jacobi(n, z, a, b, q), _brute_big_jacobi(n, z, a, b, q))

    checks: List[Check] = []
    for _ in range(HEINE_DRAWS):
        checks.append(partial(heine, _uniform(rng, -0.9, 0.9), _uniform(rng, -0.9, 0.9), _uniform(rng, 0.2, 0.9)))
    for _ in range(DRAWS):
        checks.append(partial(hahn_exton, int(rng.integers(0, 6)), _uniform(rng, 0.0, 0.5), _uniform(rng, 0.2, 0.5)))
    for _ in range(DRAWS):
        checks.append(partial(bessel_2, int(rng.integers(0, 6)), _uniform(rng, 0.0, 0.6), _uniform(rng, 0.2, 0.6)))
    for _ in range(DRAWS):
        checks.append(partial(little, int(rng.integers(0, 9)), _uniform(rng, 0.0, 1.0),
                              _uniform(rng, 0.1, 0.9), _uniform(rng, 0.1, 0.9), _uniform(rng, 0.2, 0.9)))
    for _ in range(DRAWS):
        checks.append(partial(big, int(rng.integers(0, 9)), _uniform(rng, 0.0, 1.0),
                              _uniform(rng, 0.1, 0.9), _uniform(rng, 0.1, 0.9), _uniform(rng, 0.2, 0.9)))
    return checks


# ============================================================================
# MATRIX ELEMENTS AND KERNELS
# ============================================================================

def _matrix_checks(config: SuiteConfig, rng: np.random.Generator, pq_mode: bool) -> List[Check]:
    key = "matrix-pq" if pq_mode else "matrix-q"
    max_n = config.degree(key)
    oracle_tol = config.tolerance(ORACLE_TOL)
    branch_tol = config.tolerance(RELATION_TOL)

    def closed_form(m: int, n: int, draw: Dict, verify_branches: bool = False):
        args = (m, n, draw["alpha"], draw["beta"], draw["mu"], draw["nu"])
        if pq_mode:
            return u_pq(*args, draw["p"], draw["q"], verify_branches=verify_branches)
        return u_q(*args, draw["q"], verify_branches=verify_branches)

    def oracle(draw: Dict) -> VerificationReport:
        kind = OscKind.pq_osc(draw["p"], draw["q"]) if pq_mode else OscKind.q_osc(draw["q"])
        reports = []
        for m in range(max_n + 1):
            for n in range(max_n + 1):
                expected = oracle_matrix_element(kind, m, n, draw["alpha"], draw["beta"],
                                                 draw["mu"], draw["nu"], config.policy)
                reports.append(VerificationReport.compare("", {}, closed_form(m, n, draw).value,
                                                          expected, oracle_tol))
        name = "u_pq closed form = oracle" if pq_mode else "u_q closed form = oracle"
        return _merge(name, dict(draw, max_n=max_n), reports, oracle_tol)

    def branches(draw: Dict) -> VerificationReport:
        reports = []
        for n in range(max_n + 1):
            result = closed_form(n, n, draw, verify_branches=True)
            reports.append(VerificationReport.compare("", {}, result.value, result.alternate_value, branch_tol))
        name = "u_pq branches agree at m=n" if pq_mode else "u_q branches agree at m=n"
        return _merge(name, dict(draw, max_n=max_n), reports, branch_tol)

    draws = []
    for _ in range(DRAWS):
        draw = {"alpha": _uniform(rng, 0.05, 1.0), "beta": _uniform(rng, 0.05, 1.0),
                "mu": _uniform(rng, 0.0, 1.0), "nu": _uniform(rng, 0.0, 1.0)}
        if pq_mode:
            draw["p"], draw["q"] = _pq_pair(rng)
        else:
            draw["q"] = _uniform(rng, 0.2, 0.9)
        draws.append(draw)
    return [partial(oracle, draw) for draw in draws] + [partial(branches, draw) for draw in draws]


def _reduction_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    """Kernel reductions at x in [-1, 1].

    The kernel terms all share one sign for x <= 0, so the kernel at -|x| is the
    sum of |terms| and is the scale the error is measured against.
    """
    tolerance = config.tolerance(IDENTITY_TOL)

    def q_reduction(label: str, mu: float, nu: float, reduced: Callable, n: int, x: float,
                    gamma: int, q: float) -> VerificationReport:
        return VerificationReport.compare(f"Q^({label})_n reduction", {"n": n, "x": x, "gamma": gamma, "q": q},
                                          q_kernel_Q(n, x, gamma, mu, nu, q), reduced(n, x, gamma, q), tolerance,
                                          scale=q_kernel_Q(n, -abs(x), gamma, mu, nu, q))

    def l_reduction(case: str, mu: float, n: int, x: float, gamma: int, p: float, q: float) -> VerificationReport:
        return VerificationReport.compare(f"L^(gamma;{case})_n = bibasic Phi",
                                          {"n": n, "x": x, "gamma": gamma, "p": p, "q": q},
                                          pq_kernel_L(n, x, gamma, mu, mu, p, q),
                                          pq_kernel_L_bibasic(n, x, gamma, p, q, case), tolerance,
                                          scale=pq_kernel_L(n, -abs(x), gamma, mu, mu, p, q))

    checks: List[Check] = []
    for label, mu, nu, reduced in (("0,0", 0.0, 0.0, q_kernel_Q_phi31),
                                   ("0,1/2", 0.0, 0.5, q_kernel_Q_little_jacobi),
                                   ("1/2,1/2", 0.5, 0.5, q_kernel_Q_laguerre)):
        for _ in range(DRAWS):
            checks.append(partial(q_reduction, label, mu, nu, reduced, int(rng.integers(0, 9)),
                                  _uniform(rng, -1.0, 1.0), int(rng.integers(0, 6)), _uniform(rng, 0.2, 0.9)))
    for case, mu in (("0,0", 0.0), ("1/4,1/4", 0.25)):
        for _ in range(DRAWS):
            p, q = _pq_pair(rng)
            checks.append(partial(l_reduction, case, mu, int(rng.integers(0, 9)), _uniform(rng, -1.0, 1.0),
                                  int(rng.integers(0, 6)), p, q))
    return checks


# ============================================================================
# FOURIER-GAUSS
# ============================================================================

FG_P_VALUES = (0.85, 0.9, 0.95)
FG_K_VALUES = (0.2, 0.3)
FG_X_VALUES = (0.0, 0.5, -0.5, 1.0, -1.0)
FG_CASES: Tuple[Tuple[str, FGDirection, float, float], ...] = (
    ("forward, zeta=0", FGDirection.FORWARD, 0.0, 1.0),
    ("forward, zeta=1/2", FGDirection.FORWARD, 0.5, 1.0),
    ("inverse, zeta=1/2", FGDirection.INVERSE, 0.5, 1.0),
    ("inverse, zeta=1", FGDirection.INVERSE, 1.0, 1.0),
    ("unified, rho=1", FGDirection.UNIFIED, 0.0, 1.0),
    ("unified, rho=sqrt(2) (Ramanujan)", FGDirection.UNIFIED, 0.0, math.sqrt(2)),
    ("unified, rho=2", FGDirection.UNIFIED, 0.0, 2.0),
)


def _fourier_gauss_checks(config: SuiteConfig, rng: np.random.Generator) -> List[Check]:
    tolerance = config.tol if config.tol is not None else FG_TOL

    def transform(name: str, spec: FGSpec, direction: FGDirection) -> VerificationReport:
        return fg_verify(spec, direction, tolerance).to_verification_report(f"Fourier-Gauss {name}", spec)

    checks: List[Check] = []
    for name, direction, zeta, rho in FG_CASES:
        for p in FG_P_VALUES:
            for k in FG_K_VALUES:
                for x in FG_X_VALUES:
                    spec = FGSpec(p=p, k=k, zeta=zeta, rho=rho, t=_uniform(rng, 0.05, 0.3), x=x)
                    checks.append(partial(transform, name, spec, direction))
    return checks


# ============================================================================
# REGISTRY AND RUNNER
# ============================================================================

SUITES: Dict[str, Callable[[SuiteConfig, np.random.Generator], List[Check]]] = {
    "generating": _generating_checks,
    "recurrence": _recurrence_checks,
    "commutators": _commutator_checks,
    "qdifference": _qdifference_checks,
    "matrix-q": partial(_matrix_checks, pq_mode=False),
    "matrix-pq": partial(_matrix_checks, pq_mode=True),
    "reductions": _reduction_checks,
    "fourier-gauss": _fourier_gauss_checks,
    "limits": _limit_checks,
    "algebra-relations": _algebra_checks,
    "exponentials": _exponential_checks,
    "special-functions": _special_function_checks,
}

SUITE_NAMES: Tuple[str, ...] = tuple(SUITES) + ("all",)


def _checks_for(name: str, config: SuiteConfig) -> List[Check]:
    position = list(SUITES).index(name)
    rng = np.random.default_rng([config.seed, position])
    return SUITES[name](config, rng)


def run_suite(name: str, config: SuiteConfig = SuiteConfig()) -> List[VerificationReport]:
    """Run one suite (or ``all``) and return its reports in definition order."""
    if name not in SUITE_NAMES:
        raise DomainError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}")
    names = list(SUITES) if name == "all" else [name]
    checks = [check for suite in names for check in _checks_for(suite, config)]
    logger.info("Running %d checks from %s with %d thread(s)", len(checks), name, config.threads)
    if config.threads == 1:
        results = [check() for check in checks]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(lambda check: check(), checks))
    reports = [report for result in results
               for report in (result if isinstance(result, list) else [result])]
    failed = sum(1 for report in reports if not report.passed)
    logger.info("%s: %d of %d checks passed", name, len(reports) - failed, len(reports))
    return reports
