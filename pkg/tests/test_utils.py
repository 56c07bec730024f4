"""
Independent reference computations for the q-calculus tests.

Everything here is written as the textbook definition, summed term by
term without the ratio recurrences the library uses, so agreement between
the two is meaningful.
"""

from typing import Sequence

from src.qcore import Scalar

REFERENCE_TERMS = 400
REFERENCE_FACTORS = 4000


class ReferenceSeries:
    """Textbook definitions of the basic objects."""

    @staticmethod
    def pochhammer(a: Scalar, q: Scalar, n: int) -> Scalar:
        result = 1
        for i in range(n):
            result = result * (1 - a * q ** i)
        return result

    @staticmethod
    def pochhammer_inf(a: float, q: float, factors: int = REFERENCE_FACTORS) -> float:
        result = 1.0
        for i in range(factors):
            result *= 1 - a * q ** i
        return result

    @classmethod
    def qbinomial(cls, n: int, k: int, q: Scalar) -> Scalar:
        return cls.pochhammer(q, q, n) / (cls.pochhammer(q, q, k) * cls.pochhammer(q, q, n - k))

    @classmethod
    def rogers_szego(cls, n: int, y: Scalar, q: Scalar) -> Scalar:
        return sum(cls.qbinomial(n, k, q) * y ** k for k in range(n + 1))

    @classmethod
    def phi(cls, upper: Sequence[Scalar], lower: Sequence[Scalar], q: Scalar, x: Scalar,
            terms: int = REFERENCE_TERMS) -> Scalar:
        """r-phi-s summed from its definition, stopping early once a term vanishes."""
        exponent = 1 + len(lower) - len(upper)
        total = 0
        for k in range(terms):
            numerator = 1
            for a in upper:
                numerator = numerator * cls.pochhammer(a, q, k)
            if numerator == 0:
                break
            denominator = cls.pochhammer(q, q, k)
            for b in lower:
                denominator = denominator * cls.pochhammer(b, q, k)
            balance = ((-1) ** k * q ** (k * (k - 1) // 2)) ** exponent
            total = total + numerator / denominator * balance * x ** k
        return total

    @staticmethod
    def pq_bracket(p: Scalar, q: Scalar, n: int) -> Scalar:
        """[p, q; p, q]_n."""
        result = 1
        for i in range(1, n + 1):
            result = result * (p ** (-i) - q ** i)
        return result

    @classmethod
    def exponential_q(cls, z: Scalar, q: float, mu: float, terms: int = REFERENCE_TERMS) -> Scalar:
        return sum(q ** (mu * n * n) * z ** n / cls.pochhammer(q, q, n) for n in range(terms))

    @classmethod
    def exponential_pq(cls, z: Scalar, p: float, q: float, mu: float, nu: float,
                       terms: int = 80) -> Scalar:
        weight = q ** mu / p ** nu
        return sum(weight ** (n * n) * z ** n / cls.pq_bracket(p, q, n) for n in range(terms))

    @classmethod
    def bessel_2(cls, nu: int, x: float, q: float, terms: int = 200) -> float:
        return sum(q ** (n * (n + nu)) * (-1) ** n * (x / 2) ** (2 * n + nu)
                   / (cls.pochhammer(q, q, n) * cls.pochhammer(q, q, n + nu)) for n in range(terms))


def relative_error(actual: Scalar, expected: Scalar) -> float:
    return abs(actual - expected) / max(abs(expected), 1e-300)
