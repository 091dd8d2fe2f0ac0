"""Unipotent parts of ``phi * St`` in the formal basis ``R_{T,1}``.

The ``R_{T_w,1}`` for distinct torus classes are orthogonal with
``(R, R) = |W(T_w)|``.  Nothing else about them is used, so a virtual
unipotent character is just a map from class labels to rationals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from torusinv.weyl import (
    Family,
    GroupSpec,
    WeylClassLabel,
    canonical_representative,
    centralizer_order,
    check_level,
    enumerate_classes,
    induced_trivial_character,
)


def epsilon_sign(spec: GroupSpec, label: WeylClassLabel) -> int:
    """``eps_G * eps_{T_w}`` as ``(-1)^(r_G - m(w))``.

    ``m(w)`` is the dimension of the fixed space of the acting signed
    permutation; ``r_G`` is that dimension for the split torus, i.e. ``n``,
    except ``n - 1`` for the minus-type families (their quasi-split torus has
    one negative block of length 1).
    """
    w = canonical_representative(spec, label)
    rank = spec.n - 1 if spec.family.twisted else spec.n
    return -1 if (rank - w.fixed_dimension()) % 2 else 1


@dataclass(frozen=True)
class ClassFunctionOnTori:
    """Values ``(phi|_{T_w}, 1_{T_w})`` for every torus class."""

    spec: GroupSpec
    values: Mapping[WeylClassLabel, int]

    def __post_init__(self):
        missing = [str(l) for l in enumerate_classes(self.spec) if l not in self.values]
        if missing:
            raise ValueError(f"missing torus classes: {', '.join(missing)}")
        object.__setattr__(self, "values", dict(self.values))

    @classmethod
    def from_function(cls, spec: GroupSpec, fn: Callable[[WeylClassLabel], int]) -> "ClassFunctionOnTori":
        return cls(spec, {l: fn(l) for l in enumerate_classes(spec)})

    @classmethod
    def constant(cls, spec: GroupSpec, value: int) -> "ClassFunctionOnTori":
        return cls.from_function(spec, lambda _: value)


@dataclass(frozen=True)
class VirtualUnipotentVector:
    spec: GroupSpec
    coeffs: Mapping[WeylClassLabel, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        labels = enumerate_classes(self.spec)
        object.__setattr__(self, "coeffs", {l: Fraction(self.coeffs.get(l, 0)) for l in labels})

    def __add__(self, other: "VirtualUnipotentVector") -> "VirtualUnipotentVector":
        self._check(other)
        return VirtualUnipotentVector(self.spec, {l: c + other.coeffs[l] for l, c in self.coeffs.items()})

    def __sub__(self, other: "VirtualUnipotentVector") -> "VirtualUnipotentVector":
        return self + other.scale(-1)

    def scale(self, factor) -> "VirtualUnipotentVector":
        factor = Fraction(factor)
        return VirtualUnipotentVector(self.spec, {l: factor * c for l, c in self.coeffs.items()})

    def inner(self, other: "VirtualUnipotentVector") -> Fraction:
        self._check(other)
        return sum(
            (c * other.coeffs[l] * centralizer_order(self.spec, l) for l, c in self.coeffs.items()),
            Fraction(0),
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs.values())

    def _check(self, other):
        if self.spec != other.spec:
            raise ValueError("vectors belong to different groups")

    def __eq__(self, other):
        return isinstance(other, VirtualUnipotentVector) and self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, tuple(sorted(self.coeffs.items()))))


def _weighted(spec: GroupSpec, value: Callable[[WeylClassLabel], int]) -> VirtualUnipotentVector:
    return VirtualUnipotentVector(
        spec,
        {
            l: Fraction(value(l) * epsilon_sign(spec, l), centralizer_order(spec, l))
            for l in enumerate_classes(spec)
        },
    )


def steinberg_vector(spec: GroupSpec) -> VirtualUnipotentVector:
    return _weighted(spec, lambda _: 1)


def unipotent_part(phi: ClassFunctionOnTori) -> VirtualUnipotentVector:
    return _weighted(phi.spec, lambda l: phi.values[l])


def steinberg_inner(phi: ClassFunctionOnTori) -> Fraction:
    return sum(
        (Fraction(v, centralizer_order(phi.spec, l)) for l, v in phi.values.items()),
        Fraction(0),
    )


def is_l_controlled(phi: ClassFunctionOnTori, j: int) -> bool:
    """Does every torus value match ``1_{W_j}^W`` (``j = 0`` is the whole group)?"""
    check_level(phi.spec, j)
    return all(v == induced_trivial_character(phi.spec, l, j) for l, v in phi.values.items())


def hc_steinberg_vector(spec: GroupSpec, j: int) -> VirtualUnipotentVector:
    """Harish-Chandra induced Steinberg character of the Levi ``L_j``."""
    check_level(spec, j)
    return _weighted(spec, lambda l: induced_trivial_character(spec, l, j))


@dataclass(frozen=True)
class Th5Report:
    spec: GroupSpec
    nu: tuple[int, ...]
    case: str
    special_index: int | None
    d0: int
    per_torus_values: dict
    vector: VirtualUnipotentVector


def special_index(nu, q: int) -> int | None:
    """``i`` when ``nu = (q-1) lambda_i``, else ``None``."""
    nonzero = [k for k, a in enumerate(nu) if a]
    if len(nonzero) == 1 and nu[nonzero[0]] == q - 1:
        return nonzero[0] + 1
    return None


def theorem_th5_report(spec: GroupSpec, nu, d0: int | None = None) -> Th5Report:
    """Decompose ``u(beta_nu * St)`` for SL with a strongly q-restricted ``nu`` (lambda coordinates)."""
    from torusinv.truncpoly import d0_for_special_weight, is_strongly_q_restricted, restriction_violation

    if spec.family != Family.SL:
        raise ValueError("only SL is supported")
    nu = tuple(int(a) for a in nu)
    if len(nu) != spec.n - 1:
        raise ValueError(f"weight needs {spec.n - 1} coordinates")
    if not is_strongly_q_restricted(nu, spec.p, spec.m):
        raise ValueError(restriction_violation(nu, spec.p, spec.m))
    i = special_index(nu, spec.q)
    if i is not None:
        computed = d0_for_special_weight(spec.n, spec.p, i)
        if d0 is not None and d0 != computed:
            raise ValueError(f"d0={d0} contradicts the computed value {computed}")
        d0 = computed
    elif not any(nu):
        if d0 is not None and d0 != 1:
            raise ValueError("the zero weight has d0 = 1")
        d0 = 1
    elif d0 is None:
        raise ValueError("d0 must be supplied for this weight")
    if d0 < 0:
        raise ValueError("d0 must be nonnegative")

    def value(l):
        return d0 + (induced_trivial_character(spec, l, i) if i is not None else 0)

    values = {l: value(l) for l in enumerate_classes(spec)}
    vector = steinberg_vector(spec).scale(d0)
    if i is not None:
        vector = vector + hc_steinberg_vector(spec, i)
    return Th5Report(spec, nu, "special" if i is not None else "generic", i, d0, values, vector)
