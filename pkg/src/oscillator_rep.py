"""
Oscillator Representations
Actions of the q- and (p,q)-oscillator generators A+, A-, N on their
unnormalized bases theta_n / zeta_n, checks of the defining algebra
relations and of the functional realizations, and the brute-force
matrix-element oracle

    U_(m,n) = <m| E(c+ A+) E(c- A-) |n>

computed by applying the lowering exponential (a finite sum, A- is
nilpotent on each basis vector) and then the raising exponential up to the
requested index.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .qcore import (DEFAULT_POLICY, DeformationParams, DomainError, QPolynomial,
                    Scalar, SeriesPolicy, VerificationReport, is_exact,
                    jackson_derivative, pq_factorial, q_dilation, qnumber_m,
                    qpochhammer)
from .rogers_szego import rs_direct

__all__ = [
    "StateExpansion", "OscillatorType", "OscKind", "Generator", "osc_apply",
    "verify_algebra_relations", "verify_jackson_realization", "verify_pq_realization",
    "oracle_apply", "oracle_matrix_element",
]

RELATION_TOL = 1e-13  # Floating tolerance for the defining relations

# Configure module logger
logger = logging.getLogger('qcalc.oscillator_rep')


@dataclass(frozen=True)
class StateExpansion:
    """Finite map basis index -> coefficient; zero coefficients are dropped."""

    entries: Tuple[Tuple[int, Scalar], ...] = field(default_factory=tuple)

    def __post_init__(self):
        merged: Dict[int, Scalar] = {}
        for index, coefficient in self.entries:
            if index < 0:
                raise DomainError(f"basis indices are nonnegative, got {index}")
            merged[index] = merged.get(index, 0) + coefficient
        cleaned = tuple(sorted((i, c) for i, c in merged.items() if c != 0))
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def basis(cls, n: int, coefficient: Scalar = 1) -> "StateExpansion":
        return cls(((n, coefficient),))

    @classmethod
    def from_mapping(cls, mapping: Dict[int, Scalar]) -> "StateExpansion":
        return cls(tuple(mapping.items()))

    def items(self) -> Iterable[Tuple[int, Scalar]]:
        return iter(self.entries)

    def coefficient(self, index: int) -> Scalar:
        return dict(self.entries).get(index, 0)

    def is_empty(self) -> bool:
        return not self.entries

    @property
    def indices(self) -> List[int]:
        return [index for index, _ in self.entries]

    def __add__(self, other: "StateExpansion") -> "StateExpansion":
        return StateExpansion(self.entries + other.entries)

    def __sub__(self, other: "StateExpansion") -> "StateExpansion":
        return self + other.scale(-1)

    def scale(self, factor: Scalar) -> "StateExpansion":
        return StateExpansion(tuple((i, c * factor) for i, c in self.entries))

    def map_coefficients(self, factor: Callable[[int], Scalar]) -> "StateExpansion":
        return StateExpansion(tuple((i, c * factor(i)) for i, c in self.entries))

    def truncate(self, max_index: int) -> "StateExpansion":
        return StateExpansion(tuple((i, c) for i, c in self.entries if i <= max_index))


class OscillatorType(str, Enum):
    Q_OSC = "q_osc"
    PQ_OSC = "pq_osc"


class Generator(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    NUMBER = "number"


@dataclass(frozen=True)
class OscKind:
    kind: OscillatorType
    params: DeformationParams

    @classmethod
    def q_osc(cls, q: Scalar) -> "OscKind":
        return cls(OscillatorType.Q_OSC, DeformationParams(q=q))

    @classmethod
    def pq_osc(cls, p: Scalar, q: Scalar) -> "OscKind":
        return cls(OscillatorType.PQ_OSC, DeformationParams(q=q, p=p))

    def __post_init__(self):
        if (self.kind is OscillatorType.PQ_OSC) != self.params.is_pq:
            raise DomainError(f"{self.kind.value} parameters must {'' if self.params.is_pq else 'not '}"
                              f"carry p")

    def raise_coefficient(self, n: int) -> Scalar:
        """A+ basis_n = raise_coefficient(n) basis_(n+1)."""
        if self.kind is OscillatorType.Q_OSC:
            return 1
        return -self.params.ratio ** (-(n + 1) / 2)

    def lower_coefficient(self, n: int) -> Scalar:
        """A- basis_n = lower_coefficient(n) basis_(n-1); zero at n = 0."""
        q = self.params.q
        if n == 0:
            return 0
        if self.kind is OscillatorType.Q_OSC:
            return qnumber_m(n, q)
        p = self.params.p
        return self.params.ratio ** (1 + n / 2) * (p ** n - q ** (-n)) / (1 / p - q)

    def ladder_product(self, n: int) -> Scalar:
        """Eigenvalue of A-A+ on basis_n: raise_coefficient(n) * lower_coefficient(n + 1).

        Closed form, so it stays rational for rational p and q.
        """
        q = self.params.q
        if self.kind is OscillatorType.Q_OSC:
            return qnumber_m(n + 1, q)
        p = self.params.p
        return -self.params.ratio * (p ** (n + 1) - q ** (-(n + 1))) / (1 / p - q)


def osc_apply(kind: OscKind, gen: Generator, state: StateExpansion) -> StateExpansion:
    """Linear extension of the generator action to a finite expansion."""
    gen = Generator(gen)
    if gen is Generator.NUMBER:
        return state.map_coefficients(lambda n: n)
    if gen is Generator.PLUS:
        return StateExpansion(tuple((n + 1, c * kind.raise_coefficient(n)) for n, c in state.items()))
    return StateExpansion(tuple((n - 1, c * kind.lower_coefficient(n)) for n, c in state.items() if n > 0))


# ============================================================================
# RELATION CHECKS
# ============================================================================

def _state_pairs(lhs: StateExpansion, rhs: StateExpansion) -> List[Tuple[Scalar, Scalar]]:
    indices = sorted(set(lhs.indices) | set(rhs.indices))
    return [(lhs.coefficient(i), rhs.coefficient(i)) for i in indices] or [(0, 0)]


def _state_size(*states: StateExpansion) -> Scalar:
    return max((abs(c) for state in states for _, c in state.items()), default=0)


def _diagonal(eigenvalue: Callable[[int], Scalar]) -> Callable[[StateExpansion], StateExpansion]:
    return lambda state: state.map_coefficients(eigenvalue)


def _default_tolerance(*values: Scalar) -> float:
    return 0.0 if all(is_exact(v) for v in values) else RELATION_TOL


def verify_algebra_relations(kind: OscKind, max_index: int,
                             tolerance: Optional[float] = None) -> VerificationReport:
    """Apply both sides of each defining relation to basis vectors 0..max_index.

    q_osc:  A-A+ - q A+A- = I,  A-A+ - A+A- = q^N
    pq_osc: A-A+ - p A+A- = q^-N,  A-A+ - q^-1 A+A- = p^N
    both:   [N, A+] = A+,  [N, A-] = -A-

    Each residual is measured against the size of the operator products it
    is the difference of, not against its own (possibly tiny) right side.
    """
    if max_index < 1:
        raise DomainError(f"max_index must be >= 1, got {max_index}")
    q, p = kind.params.q, kind.params.p
    exact = all(is_exact(v) for v in (q, 1 if p is None else p))

    def apply(*gens: Generator) -> Callable[[StateExpansion], StateExpansion]:
        def run(state: StateExpansion) -> StateExpansion:
            for gen in reversed(gens):
                state = osc_apply(kind, gen, state)
            return state
        return run

    if exact and kind.kind is OscillatorType.PQ_OSC:
        # The half-integer powers of q/p in A+ and A- cancel in both products
        lowered_raised = _diagonal(kind.ladder_product)
        raised_lowered = _diagonal(lambda n: kind.ladder_product(n - 1) if n > 0 else 0)
    else:
        lowered_raised = apply(Generator.MINUS, Generator.PLUS)
        raised_lowered = apply(Generator.PLUS, Generator.MINUS)

    if kind.kind is OscillatorType.Q_OSC:
        deformed = [
            (1 * q, lambda n: 1),
            (1, lambda n: q ** n),
        ]
    else:
        deformed = [
            (p, lambda n: q ** (-n)),
            (1 / q, lambda n: p ** n),
        ]

    name = "q-oscillator relations" if kind.kind is OscillatorType.Q_OSC else "(p,q)-oscillator relations"
    parameters = {"kind": kind.kind.value, "q": q, "p": p, "max_index": max_index}
    if tolerance is None:
        tolerance = _default_tolerance(q, 1 if p is None else p)

    reports: List[VerificationReport] = []

    def record(first: StateExpansion, second: StateExpansion, rhs: StateExpansion) -> None:
        terms = _state_size(first, second, rhs)
        reports.append(VerificationReport.worst(name, parameters, _state_pairs(first - second, rhs),
                                                tolerance, scale=terms))

    for n in range(max_index + 1):
        basis = StateExpansion.basis(n)
        for weight, eigenvalue in deformed:
            record(lowered_raised(basis), raised_lowered(basis).scale(weight), basis.scale(eigenvalue(n)))
        for gen, sign in ((Generator.PLUS, 1), (Generator.MINUS, -1)):
            moved = osc_apply(kind, gen, basis)
            # [N, A] basis_n = (N - n) A basis_n on the N eigenvector basis_n
            record(moved.map_coefficients(lambda i: i - n), StateExpansion(), moved.scale(sign))
    return max(reports, key=lambda report: report.rel_err)


def verify_jackson_realization(q: Scalar, max_degree: int,
                               tolerance: Optional[float] = None) -> VerificationReport:
    """A- f = D f and A+ f = (1 + y) f - (1 - q) y D f reproduce the ladder on H_n."""
    if max_degree < 1:
        raise DomainError(f"max_degree must be >= 1, got {max_degree}")
    DeformationParams(q=q)
    if tolerance is None:
        tolerance = _default_tolerance(q)
    name = "Jackson realization of the q-oscillator"
    parameters = {"q": q, "max_degree": max_degree}
    one_plus_y = QPolynomial((1, 1))
    reports: List[VerificationReport] = []
    for n in range(max_degree + 1):
        h_n = rs_direct(n, q)
        derivative = jackson_derivative(h_n, q)
        multiplied, correction = h_n * one_plus_y, derivative.shift() * (1 - q)
        reports.append(VerificationReport.polynomials(
            name, parameters, multiplied - correction, rs_direct(n + 1, q), tolerance,
            terms=max(multiplied.norm(), correction.norm())))
        expected = rs_direct(n - 1, q) * qnumber_m(n, q) if n > 0 else QPolynomial()
        reports.append(VerificationReport.polynomials(name, parameters, derivative, expected, tolerance))
    return max(reports, key=lambda report: report.rel_err)


def verify_pq_realization(p: Scalar, q: Scalar, max_degree: int,
                          tolerance: float = RELATION_TOL) -> VerificationReport:
    """Functional (p,q)-realization on zeta_n = z^n against the basis action.

    A- f(z) = [f((pq)^(1/2) z) - f((pq)^(-1/2) z)] / (z (q^-1 - p))
    A+ f(z) = -z (p/q)^(1/2) f((p/q)^(1/2) z)
    """
    kind = OscKind.pq_osc(p, q)
    root_pq = (p * q) ** 0.5
    root_ratio = (p / q) ** 0.5
    name = "functional (p,q)-oscillator realization"
    parameters = {"p": p, "q": q, "max_degree": max_degree}
    reports: List[VerificationReport] = []
    for n in range(max_degree + 1):
        zeta_n = QPolynomial.monomial(n)
        contracted, expanded = q_dilation(zeta_n, root_pq), q_dilation(zeta_n, root_pq, "inverse")
        lowered = QPolynomial((contracted - expanded).coefficients[1:]) * (1 / (1 / q - p))
        raised = q_dilation(zeta_n, root_ratio).shift() * (-root_ratio)
        reports.append(VerificationReport.polynomials(
            name, parameters, lowered,
            QPolynomial.monomial(n - 1, kind.lower_coefficient(n)) if n > 0 else QPolynomial(),
            tolerance, terms=(contracted.norm() + expanded.norm()) / abs(1 / q - p)))
        reports.append(VerificationReport.polynomials(
            name, parameters, raised, QPolynomial.monomial(n + 1, kind.raise_coefficient(n)), tolerance))
    return max(reports, key=lambda report: report.rel_err)


# ============================================================================
# MATRIX-ELEMENT ORACLE
# ============================================================================

def _exponential_weights(kind: OscKind, alpha: Scalar, beta: Scalar, mu: Scalar, nu: Scalar
                         ) -> Tuple[Callable[[int], Scalar], Callable[[int], Scalar]]:
    """Per-order weights of E(c+ A+) and E(c- A-), scalings c+/c- included."""
    q, p = kind.params.q, kind.params.p
    if kind.kind is OscillatorType.Q_OSC:
        c_plus, c_minus = alpha * (1 - q), beta * (1 - q)
        return (lambda i: q ** (mu * i * i) * c_plus ** i / qpochhammer(q, q, i),
                lambda j: q ** (nu * j * j) * c_minus ** j / qpochhammer(q, q, j))
    weight = q ** mu / p ** nu
    c_plus = alpha * (1 / p - q)
    c_minus = beta * p / q * (1 / p - q)
    return (lambda i: weight ** (i * i) * c_plus ** i / pq_factorial(1, 1, p, q, i),
            lambda j: weight ** (j * j) * c_minus ** j / pq_factorial(1, 1, p, q, j))


def oracle_apply(kind: OscKind, state: StateExpansion, alpha: Scalar, beta: Scalar,
                 mu: Scalar, nu: Scalar, max_index: int) -> StateExpansion:
    """E(c+ A+) E(c- A-) state, keeping basis indices up to max_index.

    The lowering exponential terminates once A-^j annihilates the state; the
    raising exponential is only needed up to order max_index.
    """
    raise_weight, lower_weight = _exponential_weights(kind, alpha, beta, mu, nu)

    lowered = StateExpansion()
    power, j = state, 0
    while not power.is_empty():
        lowered = lowered + power.scale(lower_weight(j))
        power = osc_apply(kind, Generator.MINUS, power)
        j += 1

    result = StateExpansion()
    power, i = lowered.truncate(max_index), 0
    while not power.is_empty():
        result = result + power.scale(raise_weight(i))
        power = osc_apply(kind, Generator.PLUS, power).truncate(max_index)
        i += 1
    return result


def oracle_matrix_element(kind: OscKind, m: int, n: int, alpha: Scalar, beta: Scalar,
                          mu: Scalar, nu: Scalar, policy: SeriesPolicy = DEFAULT_POLICY) -> Scalar:
    """Coefficient of basis m in E(c+ A+) E(c- A-) basis_n."""
    if m < 0 or n < 0:
        raise DomainError(f"matrix indices must be nonnegative, got m={m}, n={n}")
    if m + n + 1 > policy.max_terms:
        raise DomainError(f"m + n = {m + n} exceeds the policy term budget {policy.max_terms}")
    return oracle_apply(kind, StateExpansion.basis(n), alpha, beta, mu, nu, max_index=m).coefficient(m)
