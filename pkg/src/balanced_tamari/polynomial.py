"""
Sparse multivariate polynomials with integer coefficients

A polynomial over ``arity`` variables maps exponent tuples to non-zero
Python ints, so coefficients never overflow. The first variable (x) is the
one truncations act on; the others are the auxiliary bud variables.
"""
import logging
import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from balanced_tamari.exceptions import ArityError, PolynomialSyntaxError

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
VARIABLES = ("x", "y", "z", "t")


def _variable_names(arity: int) -> Tuple[str, ...]:
    if arity <= len(VARIABLES):
        return VARIABLES[:arity]
    return tuple(f"v{i}" for i in range(arity))


def _within(exponents: Exponents, max_x_degree: Optional[int], max_total: Optional[int]) -> bool:
    if max_x_degree is not None and exponents and exponents[0] > max_x_degree:
        return False
    return max_total is None or sum(exponents) <= max_total


class Polynomial:
    """Immutable once built; arithmetic returns new polynomials"""

    __slots__ = ("arity", "terms")

    def __init__(self, terms: Mapping[Exponents, int], arity: int):
        if arity < 0:
            raise ArityError(f"arity must be non-negative, got {arity}")
        cleaned: Dict[Exponents, int] = {}
        for exponents, coefficient in terms.items():
            exponents = tuple(exponents)
            if len(exponents) != arity:
                raise ArityError(f"monomial {exponents} does not have {arity} exponents")
            if any(e < 0 for e in exponents):
                raise ValueError(f"negative exponent in {exponents}")
            if coefficient:
                cleaned[exponents] = cleaned.get(exponents, 0) + coefficient
        self.arity = arity
        self.terms: Dict[Exponents, int] = {k: v for k, v in cleaned.items() if v}

    # -- constructors --

    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls({}, arity)

    @classmethod
    def constant(cls, value: int, arity: int) -> "Polynomial":
        return cls({(0,) * arity: value}, arity)

    @classmethod
    def variable(cls, index: int, arity: int) -> "Polynomial":
        if not 0 <= index < arity:
            raise ArityError(f"variable {index} does not exist among {arity}")
        return cls({tuple(1 if i == index else 0 for i in range(arity)): 1}, arity)

    @classmethod
    def parse(cls, text: str, arity: int) -> "Polynomial":
        return parse_polynomial(text, arity)

    def promote(self, item: Union["Polynomial", int]) -> "Polynomial":
        if isinstance(item, Polynomial):
            if item.arity != self.arity:
                raise ArityError(f"arity {item.arity} does not match {self.arity}")
            return item
        if isinstance(item, int):
            return Polynomial.constant(item, self.arity)
        raise TypeError(f"cannot combine a polynomial with {type(item).__name__}")

    # -- comparisons --

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other, self.arity)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        # constants compare equal to ints, so they hash like them
        if all(not any(exponents) for exponents in self.terms):
            return hash(self.terms.get((0,) * self.arity, 0))
        return hash((self.arity, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations --

    def __add__(self, other: Union["Polynomial", int]) -> "Polynomial":
        other = self.promote(other)
        terms = dict(self.terms)
        for exponents, coefficient in other.terms.items():
            terms[exponents] = terms.get(exponents, 0) + coefficient
        return Polynomial(terms, self.arity)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({k: -v for k, v in self.terms.items()}, self.arity)

    def __sub__(self, other: Union["Polynomial", int]) -> "Polynomial":
        return self + (-self.promote(other))

    def __rsub__(self, other: int) -> "Polynomial":
        return self.promote(other) - self

    def multiply(
        self,
        other: Union["Polynomial", int],
        max_x_degree: Optional[int] = None,
        max_total: Optional[int] = None,
    ) -> "Polynomial":
        """Product keeping only monomials within the given degree bounds"""
        other = self.promote(other)
        terms: Dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponents = tuple(a + b for a, b in zip(e1, e2))
                if _within(exponents, max_x_degree, max_total):
                    terms[exponents] = terms.get(exponents, 0) + c1 * c2
        return Polynomial(terms, self.arity)

    def __mul__(self, other: Union["Polynomial", int]) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial({k: other * v for k, v in self.terms.items()}, self.arity)
        return self.multiply(other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        return self.power(n)

    def power(
        self, n: int, max_x_degree: Optional[int] = None, max_total: Optional[int] = None
    ) -> "Polynomial":
        if n < 0:
            raise ValueError(f"negative power {n}")
        result = Polynomial.constant(1, self.arity)
        base = self
        while n:
            if n & 1:
                result = result.multiply(base, max_x_degree, max_total)
            n >>= 1
            if n:
                base = base.multiply(base, max_x_degree, max_total)
        return result

    # -- inspection --

    def degree(self, variable: int = 0) -> int:
        """Largest exponent of ``variable``; -1 for the zero polynomial"""
        return max((e[variable] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.terms.get(tuple(exponents), 0)

    def univariate_coefficients(self, n: int) -> List[int]:
        """Coefficients of x^1..x^n once every auxiliary variable is set to 0"""
        pure = (0,) * (self.arity - 1)
        return [self.terms.get((d,) + pure, 0) for d in range(1, n + 1)]

    def truncate(
        self, max_x_degree: Optional[int] = None, max_total: Optional[int] = None
    ) -> "Polynomial":
        return Polynomial(
            {k: v for k, v in self.terms.items() if _within(k, max_x_degree, max_total)},
            self.arity,
        )

    # -- substitution --

    def compose(
        self,
        substitution: Sequence["Polynomial"],
        max_x_degree: Optional[int] = None,
        max_total: Optional[int] = None,
    ) -> "Polynomial":
        """
        Substitute ``substitution[j]`` for variable j

        The result lives over the arity of the substituted polynomials, which
        must all agree.
        """
        if len(substitution) != self.arity:
            raise ArityError(f"{len(substitution)} substitutions for {self.arity} variables")
        arities = {s.arity for s in substitution}
        if len(arities) > 1:
            raise ArityError(f"substituted polynomials have different arities {sorted(arities)}")
        target = arities.pop() if arities else 0

        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power_of(j: int, e: int) -> Polynomial:
            if (j, e) not in powers:
                powers[(j, e)] = substitution[j].power(e, max_x_degree, max_total)
            return powers[(j, e)]

        result = Polynomial.zero(target)
        for exponents, coefficient in sorted(self.terms.items()):
            term = Polynomial.constant(coefficient, target)
            for j, e in enumerate(exponents):
                if e:
                    term = term.multiply(power_of(j, e), max_x_degree, max_total)
                    if not term:
                        break
            result = result + term
        return result

    # -- text --

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = _variable_names(self.arity)
        pieces = []
        ordered = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        for exponents, coefficient in ordered:
            factors = [name if e == 1 else f"{name}^{e}" for name, e in zip(names, exponents) if e]
            if not factors:
                body = str(abs(coefficient))
            elif abs(coefficient) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coefficient))] + factors)
            sign = "-" if coefficient < 0 else "+"
            pieces.append((sign, body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, arity={self.arity})"


# --- module-level helpers ------------------------------------------------------

def _same_arity(polys: Iterable[Polynomial]) -> int:
    arities = {p.arity for p in polys}
    if len(arities) != 1:
        raise ArityError(f"polynomials have different arities {sorted(arities)}")
    return arities.pop()


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_arity((p, q))
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _same_arity((p, q))
    return p * q


def poly_compose(p: Polynomial, substitution: Sequence[Polynomial]) -> Polynomial:
    return p.compose(substitution)


# --- parsing -------------------------------------------------------------------

_TERM_TOKEN = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|([a-z]\w*)(?:\^(\d+))?)$")


def parse_polynomial(text: str, arity: int) -> Polynomial:
    """
    Parse text such as ``x^2 + 2*x*y - 3*z``

    Variables are named x, y, z, t in order; only the first ``arity`` of
    them may appear.
    """
    names = _variable_names(arity)
    source = text.strip()
    if not source:
        raise PolynomialSyntaxError("empty polynomial")

    terms: Dict[Exponents, int] = {}
    position = 0
    first = True
    while position < len(source):
        match = _TERM_TOKEN.match(source, position)
        if match is None or (match.group(1) is None and not first):
            raise PolynomialSyntaxError(f"cannot parse {source[position:]!r} in {text!r}")
        sign = -1 if match.group(1) == "-" else 1
        coefficient = sign
        exponents = [0] * arity
        for factor in match.group(2).split("*"):
            factor = factor.strip()
            parsed = _FACTOR.match(factor)
            if parsed is None:
                raise PolynomialSyntaxError(f"bad factor {factor!r} in {text!r}")
            number, name, power = parsed.groups()
            if number is not None:
                coefficient *= int(number)
            elif name in names:
                exponents[names.index(name)] += int(power) if power else 1
            else:
                raise PolynomialSyntaxError(
                    f"unknown variable {name!r}; expected one of {', '.join(names)}"
                )
        key = tuple(exponents)
        terms[key] = terms.get(key, 0) + coefficient
        position = match.end()
        first = False
    return Polynomial(terms, arity)
