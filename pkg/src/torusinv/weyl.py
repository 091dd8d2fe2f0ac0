"""Weyl groups of the classical families as signed permutation groups.

Positions and coordinates are 0-based throughout: a weight is a tuple of
integers ``z`` meaning ``sum(z[i] * eps_{i+1})``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Sequence

from torusinv.ffield import is_prime

DEFAULT_GROUP_GUARD = 10**7


class Family(str, Enum):
    GL = "gl"
    SL = "sl"
    SP = "sp"
    SO_ODD = "soodd"
    SO_PLUS = "soplus"
    SO_MINUS = "sominus"
    SPIN_PLUS = "spinplus"
    SPIN_MINUS = "spinminus"

    @property
    def weyl_type(self) -> str:
        if self in (Family.GL, Family.SL):
            return "A"
        if self in (Family.SP, Family.SO_ODD):
            return "B"
        return "D"

    @property
    def twisted(self) -> bool:
        return self in (Family.SO_MINUS, Family.SPIN_MINUS)


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    n: int
    p: int
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.m < 1:
            raise ValueError("m must be positive")
        min_n = 1 if self.family.weyl_type == "A" else 2
        if self.n < min_n:
            raise ValueError(f"{self.family.value} needs n >= {min_n}")
        if self.family in (Family.SO_ODD, Family.SO_PLUS, Family.SO_MINUS) and self.p == 2:
            raise ValueError(f"{self.family.value} requires odd q")
        if self.family in (Family.SPIN_PLUS, Family.SPIN_MINUS) and self.p != 2:
            raise ValueError(f"{self.family.value} requires even q")

    @property
    def q(self) -> int:
        return self.p**self.m

    @classmethod
    def from_q(cls, family, n: int, q: int) -> "GroupSpec":
        p = next((f for f in range(2, q + 1) if q % f == 0), None)
        if p is None:
            raise ValueError(f"q={q} is not a prime power")
        m = round(math.log(q, p))
        if p**m != q:
            m = 0
            x = q
            while x % p == 0:
                x //= p
                m += 1
            if x != 1:
                raise ValueError(f"q={q} is not a prime power")
        return cls(Family(family), n, p, m)

    def __str__(self):
        return f"{self.family.value}(n={self.n}, q={self.q})"


@dataclass(frozen=True, order=True)
class WeylClassLabel:
    """A (double) partition; ``exceptional`` marks the second type-D class of a split label."""

    positive: tuple[int, ...] = ()
    negative: tuple[int, ...] = ()
    exceptional: bool = False

    def __post_init__(self):
        object.__setattr__(self, "positive", tuple(self.positive))
        object.__setattr__(self, "negative", tuple(self.negative))
        for parts in (self.positive, self.negative):
            if any(x <= 0 for x in parts) or list(parts) != sorted(parts, reverse=True):
                raise ValueError(f"parts must be positive and weakly decreasing: {parts}")
        if self.exceptional and (self.negative or any(x % 2 for x in self.positive)):
            raise ValueError("exceptional labels need all parts even and positive")

    @property
    def size(self) -> int:
        return sum(self.positive) + sum(self.negative)

    @property
    def k(self) -> int:
        return len(self.positive)

    @property
    def l(self) -> int:
        return len(self.negative)

    def blocks(self) -> list[tuple[int, bool]]:
        """``(length, negative)`` pairs in block order: positive parts first."""
        return [(x, False) for x in self.positive] + [(x, True) for x in self.negative]

    def __str__(self):
        out = "+".join(str(x) for x in self.positive)
        out += "".join(f"-{x}" for x in self.negative)
        return out + ("x" if self.exceptional else "")

    @classmethod
    def parse(cls, text: str) -> "WeylClassLabel":
        text = text.strip()
        exceptional = text.endswith("x")
        if exceptional:
            text = text[:-1]
        if not text:
            raise ValueError("empty class label")
        pos, neg = [], []
        token = ""
        sign = "+"
        for ch in text + "+":
            if ch in "+-":
                if token:
                    (pos if sign == "+" else neg).append(int(token))
                elif ch == "-" and sign == "+" and not pos and not neg:
                    pass
                else:
                    raise ValueError(f"malformed class label {text!r}")
                token, sign = "", ch
            elif ch.isdigit():
                token += ch
            else:
                raise ValueError(f"malformed class label {text!r}")
        return cls(tuple(pos), tuple(neg), exceptional)


class SignedPermutation:
    """``eps_j -> signs[j] * eps_{images[j]}`` on ``Z^n``."""

    __slots__ = ("images", "signs", "_key")

    def __init__(self, images: Sequence[int], signs: Sequence[int] | None = None):
        self.images = tuple(int(x) for x in images)
        self.signs = tuple(int(s) for s in signs) if signs is not None else (1,) * len(self.images)
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"images {self.images} are not a permutation")
        if len(self.signs) != len(self.images) or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"bad signs {self.signs}")
        self._key = tuple(s * (i + 1) for i, s in zip(self.images, self.signs))

    @classmethod
    def from_key(cls, key):
        return cls([abs(x) - 1 for x in key], [1 if x > 0 else -1 for x in key])

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def key(self) -> tuple[int, ...]:
        return self._key

    def __eq__(self, other):
        return isinstance(other, SignedPermutation) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SignedPermutation({list(self.images)}, {list(self.signs)})"

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return SignedPermutation.from_key(compose_keys(self._key, other._key))

    def inverse(self) -> "SignedPermutation":
        images = [0] * self.n
        signs = [1] * self.n
        for j, (i, s) in enumerate(zip(self.images, self.signs)):
            images[i] = j
            signs[i] = s
        return SignedPermutation(images, signs)

    def apply(self, weight: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.n
        for j, z in enumerate(weight):
            out[self.images[j]] += self.signs[j] * z
        return tuple(out)

    def negative_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def cycles(self) -> list[tuple[tuple[int, ...], int]]:
        """Cycles of the underlying permutation with the product of their signs."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc, sign, j = [], 1, start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                sign *= self.signs[j]
                j = self.images[j]
            out.append((tuple(cyc), sign))
        return out

    def fixed_dimension(self) -> int:
        """Multiplicity of the eigenvalue 1 on ``Q^n``: one per cycle with sign product +1."""
        return sum(1 for _, s in self.cycles() if s > 0)


def compose_keys(a, b):
    """Key of ``a * b`` (apply ``b`` first)."""
    return tuple(a[x - 1] if x > 0 else -a[-x - 1] for x in b)


# ---------------------------------------------------------------------------
# class labels


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def enumerate_classes(spec: GroupSpec) -> list[WeylClassLabel]:
    fam = spec.family
    n = spec.n
    if fam.weyl_type == "A":
        return [WeylClassLabel(part) for part in partitions(n)]
    out = []
    for a in range(n, -1, -1):
        for pos in partitions(a):
            for neg in partitions(n - a):
                l = len(neg)
                if fam.weyl_type == "D":
                    if fam.twisted != (l % 2 == 1):
                        continue
                    out.append(WeylClassLabel(pos, neg))
                    if not fam.twisted and l == 0 and all(x % 2 == 0 for x in pos):
                        out.append(WeylClassLabel(pos, neg, exceptional=True))
                else:
                    out.append(WeylClassLabel(pos, neg))
    return out


def check_label(spec: GroupSpec, label: WeylClassLabel) -> None:
    fam = spec.family
    if label.size != spec.n:
        raise ValueError(f"label {label} has size {label.size}, expected {spec.n}")
    if fam.weyl_type == "A" and (label.negative or label.exceptional):
        raise ValueError(f"label {label} is not a partition class for {fam.value}")
    if fam.weyl_type == "B" and label.exceptional:
        raise ValueError("exceptional labels exist only for the plus-type D families")
    if fam.weyl_type == "D":
        if fam.twisted and label.l % 2 == 0:
            raise ValueError(f"{fam.value} labels need an odd number of negative parts")
        if not fam.twisted and label.l % 2 == 1:
            raise ValueError(f"{fam.value} labels need an even number of negative parts")
        if fam.twisted and label.exceptional:
            raise ValueError("exceptional labels exist only for the plus-type D families")


def canonical_representative(spec: GroupSpec, label: WeylClassLabel) -> SignedPermutation:
    """Block-cyclic representative: ``eps_i -> eps_{i+1}`` inside a block, wrapping to the block start.

    A negative block carries its single ``-1`` at the wrap position.  The
    exceptional type-D representative additionally negates the images of the
    first and last coordinates of block 1.  For the minus-type families the
    result is the ambient type-B element whose canonical torus realizes the class.
    """
    check_label(spec, label)
    images, signs = [], []
    start = 0
    for length, negative in label.blocks():
        for t in range(length):
            last = t == length - 1
            images.append(start if last else start + t + 1)
            signs.append(-1 if (last and negative) else 1)
        start += length
    if label.exceptional:
        n1 = label.positive[0]
        signs[0] = -signs[0]
        signs[n1 - 1] = -signs[n1 - 1]
    return SignedPermutation(images, signs)


def weyl_order(spec: GroupSpec) -> int:
    n = spec.n
    t = spec.family.weyl_type
    if t == "A":
        return math.factorial(n)
    if t == "B":
        return 2**n * math.factorial(n)
    return 2 ** (n - 1) * math.factorial(n)


def _type_b_centralizer(label: WeylClassLabel) -> int:
    out = 1
    for parts in (label.positive, label.negative):
        for size, mult in _multiplicities(parts).items():
            out *= (2 * size) ** mult * math.factorial(mult)
    return out


def _multiplicities(parts):
    counts: dict[int, int] = {}
    for x in parts:
        counts[x] = counts.get(x, 0) + 1
    return counts


def centralizer_order(spec: GroupSpec, label: WeylClassLabel) -> int:
    """``|W(T_w)|``: the centralizer, or the F-centralizer for the minus-type families."""
    check_label(spec, label)
    t = spec.family.weyl_type
    if t == "A":
        out = 1
        for size, mult in _multiplicities(label.positive).items():
            out *= size**mult * math.factorial(mult)
        return out
    cb = _type_b_centralizer(label)
    if t == "B":
        return cb
    if not spec.family.twisted and label.l == 0 and all(x % 2 == 0 for x in label.positive):
        return cb
    return cb // 2


# ---------------------------------------------------------------------------
# weight orbits and induced trivial characters


def max_level(spec: GroupSpec) -> int:
    return spec.n - 1 if spec.family.twisted else spec.n


def check_level(spec: GroupSpec, j: int) -> None:
    """Level ``j`` selects ``omega_j = eps_1 + ... + eps_j``; ``j = 0`` is the whole-group Levi."""
    if not 0 <= j <= max_level(spec):
        if spec.family.twisted and j == spec.n:
            raise ValueError(f"{spec.family.value} is only treated for j < n")
        raise ValueError(f"j={j} out of range for {spec}")


def omega(n: int, j: int) -> tuple[int, ...]:
    return (1,) * j + (0,) * (n - j)


@lru_cache(maxsize=None)
def _weight_orbit(weyl_type: str, n: int, j: int) -> tuple[tuple[int, ...], ...]:
    if j == 0:
        return ((0,) * n,)
    out = []
    for subset in itertools.combinations(range(n), j):
        if weyl_type == "A":
            z = [0] * n
            for i in subset:
                z[i] = 1
            out.append(tuple(z))
            continue
        for signs in itertools.product((1, -1), repeat=j):
            if weyl_type == "D" and j == n and signs.count(-1) % 2:
                continue
            z = [0] * n
            for i, s in zip(subset, signs):
                z[i] = s
            out.append(tuple(z))
    return tuple(out)


def weight_orbit(spec: GroupSpec, j: int) -> tuple[tuple[int, ...], ...]:
    """The W-orbit of ``omega_j`` (for SL the weights ``0`` and ``omega_n`` coincide)."""
    check_level(spec, j)
    return _weight_orbit(spec.family.weyl_type, spec.n, j)


def fixed_weight_count(w: SignedPermutation, spec: GroupSpec, j: int) -> int:
    """Number of weights in the orbit of ``omega_j`` fixed by ``w``."""
    if w.n != spec.n:
        raise ValueError("permutation size does not match spec")
    return sum(1 for mu in weight_orbit(spec, j) if w.apply(mu) == mu)


def induced_trivial_character(spec: GroupSpec, label: WeylClassLabel, j: int) -> int:
    """``1_{W_j}^W`` at the class ``label``, read off the cycle type.

    Fixed points are unions of positive cycles, each taken with one of two
    global signs outside type A; for type D with ``j = n`` the sign choices
    must leave an even number of minus signs.
    """
    check_label(spec, label)
    check_level(spec, j)
    if j == 0:
        return 1
    t = spec.family.weyl_type
    lengths = list(label.positive)
    if t == "D" and j == spec.n:
        if label.l:
            return 0
        if label.exceptional:
            return 0
        if any(x % 2 for x in lengths):
            return 2 ** (len(lengths) - 1)
        return 2 ** len(lengths)
    weight = 1 if t == "A" else 2
    ways = [0] * (j + 1)
    ways[0] = 1
    for x in lengths:
        for s in range(j, x - 1, -1):
            ways[s] += weight * ways[s - x]
    return ways[j]


# ---------------------------------------------------------------------------
# explicit groups


@lru_cache(maxsize=None)
def group_keys(weyl_type: str, n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for perm in itertools.permutations(range(n)):
        if weyl_type == "A":
            out.append(tuple(i + 1 for i in perm))
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if weyl_type == "D" and signs.count(-1) % 2:
                continue
            out.append(tuple(s * (i + 1) for i, s in zip(perm, signs)))
    return tuple(out)


def group_elements(spec: GroupSpec) -> list[SignedPermutation]:
    return [SignedPermutation.from_key(k) for k in group_keys(spec.family.weyl_type, spec.n)]


def twist_element(spec: GroupSpec) -> SignedPermutation:
    """The type-B reflection ``eps_n -> -eps_n`` inducing the graph automorphism (identity if untwisted)."""
    signs = [1] * spec.n
    if spec.family.twisted:
        signs[-1] = -1
    return SignedPermutation(range(spec.n), signs)


@lru_cache(maxsize=None)
def _coset_partition(weyl_type: str, n: int, j: int):
    keys = group_keys(weyl_type, n)
    target = omega(n, j)
    stab = [k for k in keys if SignedPermutation.from_key(k).apply(target) == target]
    coset_of: dict[tuple[int, ...], int] = {}
    reps = []
    for g in keys:
        if g in coset_of:
            continue
        cid = len(reps)
        reps.append(g)
        for h in stab:
            coset_of[compose_keys(g, h)] = cid
    return coset_of, reps, len(stab)


def induced_trivial_by_cosets(w: SignedPermutation, spec: GroupSpec, j: int,
                              guard: int = DEFAULT_GROUP_GUARD) -> int:
    """Count cosets ``gW_j`` with ``a F(g) in gW_j`` by enumerating the group.

    ``a = w`` for untwisted families.  For the minus types ``w`` is the
    type-B representative ``v``; then ``a = r v`` lies in ``W(D_n)`` and
    ``F`` is conjugation by the twist ``r``.
    """
    check_level(spec, j)
    if weyl_order(spec) > guard:
        raise ValueError(f"|W| = {weyl_order(spec)} exceeds the enumeration guard {guard}")
    coset_of, reps, _ = _coset_partition(spec.family.weyl_type, spec.n, j)
    r = twist_element(spec).key
    a = compose_keys(r, w.key) if spec.family.twisted else w.key
    count = 0
    for cid, g in enumerate(reps):
        fg = compose_keys(compose_keys(r, g), r) if spec.family.twisted else g
        if coset_of.get(compose_keys(a, fg)) == cid:
            count += 1
    return count
