"""The numerical incidence coalgebra of a decomposition space.

All weights are exact rationals obtained as homotopy-fiber cardinalities.
The comultiplication of an edge f is the weighted decomposition of the
fiber of d_1 : X_2 -> X_1 over f into (d_2, d_0)-labelled components; the
counit is the fiber cardinality of s_0; convolution is dual to the
comultiplication.  The Phi functors count simplices with all principal
edges nondegenerate, and the Mobius functional is the alternating sum
Phi_even - Phi_odd, which requires a vanishing certificate (the grade of
the argument on graded spaces, or an explicit length bound).

Callers are expected to have validated the decomposition-space axioms at
their chosen truncation; the operations here check carriers and level
availability, not the axioms themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .groupoid import DomainError, FiniteGroupoid, GroupoidFunctor, fiber_cardinality, weighted_fiber
from .simplicial import TruncatedSimplicialGroupoid, nondegenerate_simplices


class CarrierMismatchError(DomainError):
    """Two functionals (or a functional and a space) disagree on carriers."""


class MobiusCertificateError(Exception):
    """No certificate that the Phi functors vanish beyond a finite length.

    Computing a Mobius functional needs the locally-finite-length
    hypothesis: on a graded space the grade of the argument certifies the
    bound, otherwise the caller must supply one explicitly.
    """


class Functional:
    """A rational functional on the iso-classes of a carrier groupoid.

    Backed either by a finite support table or by a total evaluation rule;
    evaluation is memoized per iso class, and well-definedness means the
    rule is constant on classes (tables are keyed by class representative).
    """

    def __init__(self, carrier: FiniteGroupoid, fn: Callable, name: str = ""):
        self.carrier = carrier
        self._fn = fn
        self.name = name
        self._memo: dict = {}

    def __call__(self, obj) -> Fraction:
        rep = self.carrier.iso_classes().class_of(obj)
        if rep not in self._memo:
            self._memo[rep] = Fraction(self._fn(rep))
        return self._memo[rep]

    @classmethod
    def from_table(cls, carrier, table: dict, default=Fraction(0), name=""):
        tab = carrier.iso_classes()
        normalized = {tab.class_of(k): Fraction(v) for k, v in table.items()
                      if Fraction(v) != 0}
        return cls(carrier, lambda rep: normalized.get(rep, default), name=name)

    @classmethod
    def constant(cls, carrier, value, name=""):
        v = Fraction(value)
        return cls(carrier, lambda rep: v, name=name)


@dataclass(frozen=True)
class WeightedTensorList:
    """Terms (weight, left class, right class) with positive weights."""

    terms: tuple

    def __post_init__(self):
        for w, _, _ in self.terms:
            if w <= 0:
                raise DomainError("weights of a tensor decomposition must be positive")

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def as_dict(self) -> dict:
        return {(l, r): w for w, l, r in self.terms}


def _require_class(X: TruncatedSimplicialGroupoid, f):
    carrier = X.level(1)
    if not carrier.has_object(f):
        raise DomainError(f"{f!r} is not an object of the level-1 carrier")
    return carrier.iso_classes().class_of(f)


def comultiply(X: TruncatedSimplicialGroupoid, f) -> WeightedTensorList:
    """Delta(f): weighted (d_2, d_0)-decomposition of the d_1-fiber over f.

    The weight of a term is the cardinality of the corresponding part of
    the homotopy fiber, i.e. |Aut f| / |Aut sigma| summed over the
    contributing classes of 2-simplices.
    """
    _require_class(X, f)
    tab1 = X.level(1).iso_classes()
    d2, d0 = X.face(2, 2), X.face(2, 0)
    label = lambda rep: (tab1.class_of(d2.ob(rep)), tab1.class_of(d0.ob(rep)))
    parts = weighted_fiber(X.face(2, 1), f, label)
    terms = tuple(sorted(((w, l, r) for (l, r), w in parts.items()),
                         key=lambda t: (repr(t[1]), repr(t[2]))))
    return WeightedTensorList(terms)


def counit(X: TruncatedSimplicialGroupoid, f) -> Fraction:
    """delta(f): the cardinality of the s_0-fiber over f."""
    _require_class(X, f)
    return fiber_cardinality(X.degeneracy(0, 0), f)


def zeta(X: TruncatedSimplicialGroupoid) -> Functional:
    return Functional.constant(X.level(1), 1, name="zeta")


def delta(X: TruncatedSimplicialGroupoid) -> Functional:
    return Functional(X.level(1), lambda rep: counit(X, rep), name="delta")


def convolve(X: TruncatedSimplicialGroupoid, alpha: Functional, beta: Functional) -> Functional:
    """(alpha * beta)(f) = sum over Delta(f) of weight * alpha(l) * beta(r)."""
    carrier = X.level(1)
    for func in (alpha, beta):
        if func.carrier is not carrier:
            raise CarrierMismatchError(
                f"functional {func.name or '<anon>'} lives on a different carrier")

    def fn(rep):
        return sum((w * alpha(l) * beta(r) for w, l, r in comultiply(X, rep)),
                   Fraction(0))

    return Functional(carrier, fn, name=f"({alpha.name}*{beta.name})")


def phi_n(X: TruncatedSimplicialGroupoid, f, n: int) -> Fraction:
    """|Phi_n|(f): cardinality of the fiber of d_1^{n-1} over f restricted
    to simplices with all principal edges nondegenerate.

    Phi_0 is the counit-style fiber through the s_0-image, Phi_1(f) is 1
    exactly when f itself is nondegenerate.
    """
    if n < 0:
        raise DomainError("phi_n needs n >= 0")
    _require_class(X, f)
    if n == 0:
        return counit(X, f)
    W = nondegenerate_simplices(X, n).groupoid
    F = GroupoidFunctor.identity(X.level(n))
    for m in range(n, 1, -1):
        F = GroupoidFunctor.compose(X.face(m, 1), F)
    restricted = GroupoidFunctor(W, X.level(1), F.ob, F.__call__, name=f"d1^{n - 1}|nd")
    return fiber_cardinality(restricted, f)


def grade_certificate(X: TruncatedSimplicialGroupoid, f,
                      length_bound: Optional[int]) -> int:
    """Resolve a vanishing bound for the Phi functors at f, or refuse."""
    if length_bound is not None:
        return length_bound
    carrier = X.level(1)
    if carrier.is_graded():
        return carrier.grade(carrier.iso_classes().class_of(f))
    raise MobiusCertificateError(
        "cannot certify locally finite length: the space is ungraded and no "
        "length bound was supplied")


def mobius(X: TruncatedSimplicialGroupoid, f, length_bound: Optional[int] = None) -> Fraction:
    """|mu|(f) = sum_{n <= bound} (-1)^n |Phi_n|(f).

    The bound certifies phi_n(X, f, n) = 0 for n beyond it; graded spaces
    certify it by grade(f) (each nondegenerate layer carries grade >= 1).
    """
    bound = grade_certificate(X, f, length_bound)
    total = Fraction(0)
    for n in range(0, bound + 1):
        term = phi_n(X, f, n)
        total += term if n % 2 == 0 else -term
    return total


def mobius_functional(X: TruncatedSimplicialGroupoid,
                      length_bound: Optional[int] = None) -> Functional:
    return Functional(X.level(1), lambda rep: mobius(X, rep, length_bound), name="mu")


@dataclass
class InversionRow:
    cls: object
    zeta_mu: Fraction
    delta_value: Fraction
    mu_zeta: Fraction

    @property
    def passed(self) -> bool:
        return self.zeta_mu == self.delta_value == self.mu_zeta


@dataclass
class InversionReport:
    rows: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self):
        return [r for r in self.rows if not r.passed]

    def __bool__(self):
        return self.passed


def verify_inversion(X: TruncatedSimplicialGroupoid, classes=None,
                     length_bound: Optional[int] = None,
                     mu: Optional[Functional] = None) -> InversionReport:
    """Check (zeta * mu)(f) = delta(f) = (mu * zeta)(f) on the given classes.

    `mu` defaults to the Mobius functional of X; passing a corrupted
    functional turns this into a negative control.
    """
    if classes is None:
        classes = X.level(1).iso_classes().reps
    z = zeta(X)
    if mu is None:
        mu = mobius_functional(X, length_bound)
    zm = convolve(X, z, mu)
    mz = convolve(X, mu, z)
    rows = [InversionRow(c, zm(c), counit(X, c), mz(c)) for c in classes]
    return InversionReport(rows)
