"""
Functional equations A = s + A(sigma) and their counting series

Iterating A_0 = s, A_{i+1} = s + A_i(sigma_1, ..., sigma_m) converges
coefficientwise for the equations built here. Counts are read off
A(x, 0, ..., 0), indexed by the number of leaves (the exponent of x).
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from balanced_tamari.exceptions import ArityError, NonStabilizingError
from balanced_tamari.polynomial import VARIABLES, Polynomial, parse_polynomial

logger = logging.getLogger(__name__)

BUILTIN_SUBSTITUTIONS = {
    "balanced": ("x^2 + 2*x*y", "x"),
    "maximal": ("x^2 + x*y + y*z", "x", "x*y"),
    "intervals": ("x^2 + 2*x*y + z", "x", "x^3 + x^2*y"),
    "maximal_intervals": ("x^2 + 2*y*z + t", "x", "y*z + t", "x^3 + x^2*y"),
}
# builtin equations are checked up to this degree when they are built
STABILITY_CHECK_DEGREE = 8


@dataclass(frozen=True)
class FunctionalEquation:
    name: str
    seed: Polynomial
    substitution: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        arity = len(self.substitution)
        if arity == 0:
            raise ArityError("a functional equation needs at least one variable")
        if self.seed.arity != arity or any(s.arity != arity for s in self.substitution):
            raise ArityError(f"{self.name}: seed and substitutions must all have {arity} variables")

    @property
    def arity(self) -> int:
        return len(self.substitution)

    def step(
        self,
        current: Polynomial,
        max_x_degree: Optional[int] = None,
        max_total: Optional[int] = None,
    ) -> Polynomial:
        """s + current(sigma), truncated"""
        composed = current.compose(self.substitution, max_x_degree, max_total)
        return (self.seed + composed).truncate(max_x_degree, max_total)

    def iterates(self, count: int, max_x_degree: Optional[int] = None) -> List[Polynomial]:
        """
        A_0, ..., A_count as multivariate polynomials

        Exact when ``max_x_degree`` is None; otherwise monomials of x-degree
        above it are dropped and total degree is capped at three times it.
        """
        max_total = 3 * max_x_degree if max_x_degree is not None else None
        current = self.seed.truncate(max_x_degree, max_total)
        found = [current]
        for _ in range(count):
            current = self.step(current, max_x_degree, max_total)
            found.append(current)
        return found

    def stabilized_iterate(self, n: int) -> Tuple[int, Polynomial]:
        """
        Iterate the truncated multivariate A_i until two successive iterates agree

        Returns the index i with A_{i+1} = A_i and that iterate. Practical
        for small ``n`` only; ``iterate_fixed_point`` reads the same counts
        without carrying the auxiliary variables.
        """
        max_total = 3 * n
        current = self.seed.truncate(n, max_total)
        for i in range(2 * n + 4):
            following = self.step(current, n, max_total)
            if following == current:
                return i, current
            current = following
        raise NonStabilizingError(
            f"{self.name}: no stable iterate within {2 * n + 4} steps at degree {n}"
        )

    def check_truncation_stability(self, n: int = STABILITY_CHECK_DEGREE) -> None:
        """
        Reject substitutions whose truncated iterates cannot settle

        Every sigma_j must have a zero constant term and sigma_1 no bare x
        term; the coefficients up to degree ``n`` must then settle.

        Raises:
            NonStabilizingError: either condition fails
        """
        zero = (0,) * self.arity
        constants = [j for j, s in enumerate(self.substitution) if s.coefficient(zero)]
        if constants:
            raise NonStabilizingError(
                f"{self.name}: substitutions {constants} have a constant term"
            )
        bare_x = (1,) + (0,) * (self.arity - 1)
        if self.substitution[0].coefficient(bare_x):
            raise NonStabilizingError(f"{self.name}: the first substitution keeps x unchanged")
        iterate_fixed_point(self, n)


def iterate_fixed_point(eq: FunctionalEquation, n: int) -> List[int]:
    """
    Coefficients c_1..c_n of x^1..x^n in A(x, 0, ..., 0)

    Uses A_i(v) = sum_{k<=i} s(w_k) with w_0 = (x, 0, ..., 0) and
    w_{k+1} = sigma(w_k), all truncated at x-degree ``n``. Successive
    iterates agree from step k on once s(w_k) is zero and the orbit no
    longer moves; a zero orbit is the common case.

    Raises:
        NonStabilizingError: the iterates still differ after 2n + 4 steps
    """
    if n < 1:
        raise ValueError(f"truncation degree must be at least 1, got {n}")
    x = Polynomial.variable(0, 1)
    orbit: Tuple[Polynomial, ...] = (x,) + tuple(Polynomial.zero(1) for _ in range(eq.arity - 1))
    total = Polynomial.zero(1)
    for step in range(2 * n + 4):
        contribution = eq.seed.compose(orbit, max_x_degree=n)
        following = tuple(sigma.compose(orbit, max_x_degree=n) for sigma in eq.substitution)
        if not contribution and following == orbit:
            logger.debug(f"{eq.name} stabilized after {step} steps at degree {n}")
            return total.univariate_coefficients(n)
        total = total + contribution
        orbit = following
    raise NonStabilizingError(
        f"{eq.name}: coefficients up to degree {n} did not settle within {2 * n + 4} steps"
    )


def _normalize(which: str) -> str:
    return which.strip().lower().replace("-", "_")


def custom_equation(
    substitution: Sequence[str], seed: str = "x", name: str = "custom"
) -> FunctionalEquation:
    """An equation from text, one polynomial per variable, e.g. ``["x^2 + 2*x*y", "x"]``"""
    arity = len(substitution)
    if not 1 <= arity <= len(VARIABLES):
        raise ArityError(f"between 1 and {len(VARIABLES)} substitutions are supported, got {arity}")
    return FunctionalEquation(
        name=name,
        seed=parse_polynomial(seed, arity),
        substitution=tuple(parse_polynomial(text, arity) for text in substitution),
    )


def builtin_equation(which: str) -> FunctionalEquation:
    """One of balanced, maximal, intervals, maximal_intervals (dashes accepted)"""
    key = _normalize(which)
    try:
        texts = BUILTIN_SUBSTITUTIONS[key]
    except KeyError:
        raise ValueError(
            f"unknown equation {which!r}; expected one of {sorted(BUILTIN_SUBSTITUTIONS)}"
        ) from None
    equation = custom_equation(texts, seed="x", name=key)
    equation.check_truncation_stability()
    return equation


def series(which: str, n: int) -> List[int]:
    """Counts by leaves 1..n for a built-in family"""
    return iterate_fixed_point(builtin_equation(which), n)
