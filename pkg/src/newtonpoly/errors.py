"""Exception hierarchy shared by every newtonpoly module."""


class NewtonPolyError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeModulus(NewtonPolyError):
    """A modulus that must be prime is composite (or < 2)."""

    def __init__(self, p):
        super().__init__(f"modulus {p} is not prime")
        self.p = p


class PrimeTooLarge(NewtonPolyError):
    """Finite-field arithmetic is restricted to word-sized primes (p < 2^31)."""

    def __init__(self, p):
        super().__init__(f"prime {p} exceeds the 2^31 finite-field bound")
        self.p = p


class DegreeCapExceeded(NewtonPolyError):
    """A composition or iterate would exceed the configured coefficient cap."""

    def __init__(self, degree, cap):
        super().__init__(f"resulting degree {degree} exceeds the cap of {cap} coefficients")
        self.degree = degree
        self.cap = cap


class NonMonicBase(NewtonPolyError):
    """The expansion base polynomial must be monic."""


class NonMonicPolynomial(NewtonPolyError):
    """A monic polynomial was required."""


class NonIntegralCoefficients(NewtonPolyError):
    """A coefficient has negative p-adic valuation where integrality is required."""

    def __init__(self, p, index, value):
        super().__init__(f"coefficient {value} of x^{index} is not {p}-adically integral")
        self.p = p
        self.index = index
        self.value = value


class ParseError(NewtonPolyError):
    """Polynomial text does not match the expression grammar."""

    def __init__(self, message, position, expected=None):
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class ZeroConstantTerm(NewtonPolyError):
    """The polynomial vanishes at zero; the polygon is defined for f(0) != 0.

    ``power`` reports the exact power of x dividing the input so callers can
    strip it explicitly if that is what they want.
    """

    def __init__(self, power):
        super().__init__(f"constant term is zero (divisible by x^{power}); strip x^{power} first")
        self.power = power


class ConstantPolynomial(NewtonPolyError):
    """A nonconstant polynomial was required."""


class PhiNotIrreducibleModP(NewtonPolyError):
    """The expansion base is reducible modulo p."""


class ResidueNotPhiPower(NewtonPolyError):
    """f mod p is not a power of phi mod p."""


class PhiDividesF(NewtonPolyError):
    """phi divides f exactly, so the phi-polygon has no finite endpoint."""


class HypothesesNotSatisfied(NewtonPolyError):
    """A prediction was requested from a certificate whose verdict is Violated."""

    def __init__(self, violations):
        names = ", ".join(v.name for v in violations) or "unknown"
        super().__init__(f"theorem hypotheses violated: {names}")
        self.violations = list(violations)


class NotSquarefree(NewtonPolyError):
    """A squarefree polynomial was required."""


class NotPRegular(NewtonPolyError):
    """Some residual polynomial has a repeated root; the splitting shape is withheld."""

    def __init__(self, p, detail=""):
        msg = f"polynomial is not {p}-regular"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.p = p


class ReducibleModPDecompositionFailure(NewtonPolyError):
    """The mod-p factor recovery could not isolate the irreducible factors."""


class UnitCoefficientViolation(NewtonPolyError):
    """Schur coefficients must satisfy |b_0| = |b_m| = 1."""


class PrimeDoesNotDivideM(NewtonPolyError):
    """The chosen prime must divide the Schur degree m."""

    def __init__(self, p, m):
        super().__init__(f"prime {p} does not divide m = {m}")
        self.p = p
        self.m = m


class GcdConditionFailed(NewtonPolyError):
    """Some interior Schur coefficient shares a factor with m."""

    def __init__(self, index, value, m):
        super().__init__(f"gcd(b_{index}, {m}) != 1 for b_{index} = {value}")
        self.index = index
        self.value = value
        self.m = m
