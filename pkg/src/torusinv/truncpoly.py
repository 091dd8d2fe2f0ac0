"""Truncated polynomial rings ``F[X_1..X_n]/(X_i^p)`` and their weights.

A monomial ``X^c`` with ``0 <= c_i < p`` has GL weight ``c`` and SL weight
``a_i = c_i - c_{i+1}`` in the basis of fundamental weights.  The ring for
``GL_n(q)``, ``q = p^m``, is the tensor product of ``m`` Frobenius twists, so
its monomials are ``m`` exponent vectors ``c_0 .. c_{m-1}`` of total GL weight
``sum_t p^t c_t``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from torusinv import _kernels
from torusinv.tori import build_canonical_torus
from torusinv.weyl import Family, GroupSpec, WeylClassLabel

ENUM_GUARD = 10**7


def _guard(count: int, guard: int) -> None:
    if count > guard:
        raise ValueError(f"guard exceeded: {count} monomials > {guard}")


def monomial_weight(c: Sequence[int]) -> tuple[int, ...]:
    return tuple(c[i] - c[i + 1] for i in range(len(c) - 1))


def all_monomials(p: int, n: int, guard: int = ENUM_GUARD) -> np.ndarray:
    """Exponent vectors of ``R_n`` as rows, last coordinate fastest."""
    _guard(p**n, guard)
    grids = np.indices((p,) * n, dtype=np.int32)
    return grids.reshape(n, -1).T


def _lambda_from_gl(rows: np.ndarray) -> np.ndarray:
    return rows[:, :-1] - rows[:, 1:]


def weight_multiplicities_brute(p: int, n: int, m: int = 1, guard: int = ENUM_GUARD) -> dict:
    """Count every SL weight over all monomials of the ``m``-fold twisted ring."""
    _guard(p ** (m * n), guard)
    digits = all_monomials(p, m * n, guard).astype(np.int64)
    gl = np.zeros((digits.shape[0], n), dtype=np.int64)
    for t in range(m):
        gl += digits[:, t * n:(t + 1) * n] * p**t
    lam = _lambda_from_gl(gl)
    if lam.shape[1] == 0:
        return {(): int(gl.shape[0])}
    keys, counts = np.unique(lam, axis=0, return_counts=True)
    return {tuple(int(x) for x in k): int(c) for k, c in zip(keys, counts)}


def _spread(nu: Sequence[int]) -> int:
    partial = [0]
    for a in reversed(nu):
        partial.append(partial[-1] + a)
    return max(partial) - min(partial)


def weight_multiplicity_rn(nu: Sequence[int], p: int, n: int) -> int:
    """Multiplicity of ``nu`` in ``R_n``: ``p - e`` with ``e`` the spread of the exponents, 0 if unrealized."""
    if len(nu) != n - 1:
        raise ValueError(f"weight needs {n - 1} coordinates")
    e = _spread(nu)
    return p - e if e <= p - 1 else 0


def weight_multiplicity_rmn(nu: Sequence[int], p: int, m: int, n: int) -> int:
    """Multiplicity of ``nu`` among the monomials of the ``m``-fold twisted ring."""
    if len(nu) != n - 1:
        raise ValueError(f"weight needs {n - 1} coordinates")
    q = p**m
    e = _spread(nu)
    return q - e if e <= q - 1 else 0


def is_strongly_p_restricted(nu: Sequence[int], p: int) -> bool:
    return all(a >= 0 for a in nu) and sum(nu) < p


def steinberg_digits(nu: Sequence[int], p: int, m: int) -> list[tuple[int, ...]]:
    """Base-p digits ``nu_0 .. nu_{m-1}`` of a q-restricted dominant weight."""
    q = p**m
    if any(a < 0 or a >= q for a in nu):
        raise ValueError(f"{tuple(nu)} is not q-restricted for q={q}")
    return [tuple((a // p**t) % p for a in nu) for t in range(m)]


def restriction_violation(nu: Sequence[int], p: int, m: int) -> str | None:
    """Human-readable reason ``nu`` is not strongly q-restricted, or ``None``."""
    q = p**m
    for i, a in enumerate(nu):
        if a < 0:
            return f"coordinate a_{i + 1}={a} is negative (weight not dominant)"
        if a >= q:
            return f"coordinate a_{i + 1}={a} is not below q={q}"
    for t, digit in enumerate(steinberg_digits(nu, p, m)):
        if sum(digit) >= p:
            return f"digit {t} = {digit} has coordinate sum {sum(digit)} >= p={p}"
    return None


def is_strongly_q_restricted(nu: Sequence[int], p: int, m: int) -> bool:
    return restriction_violation(nu, p, m) is None


def realized_weights_rn(p: int, n: int) -> set:
    return set(weight_multiplicities_brute(p, n))


def steinberg_expansions(nu: Sequence[int], p: int, m: int, n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All ``(mu_0, .., mu_{m-1})`` with ``nu = sum p^t mu_t`` and every ``mu_t`` a weight of ``R_n``.

    Coordinates of an ``R_n`` weight lie in ``(-p, p)``, so each digit is
    pinned modulo ``p`` up to one carry choice per coordinate.
    """
    realized = realized_weights_rn(p, n)
    out = []

    def walk(rest, t, acc):
        if t == m:
            if not any(rest):
                out.append(tuple(acc))
            return
        options = []
        for a in rest:
            r = a % p
            options.append((r,) if r == 0 else (r, r - p))
        for mu in _product(options):
            if mu in realized:
                walk(tuple((a - b) // p for a, b in zip(rest, mu)), t + 1, acc + [mu])

    walk(tuple(nu), 0, [])
    return out


def _product(options):
    if not options:
        yield ()
        return
    for head in options[0]:
        for tail in _product(options[1:]):
            yield (head,) + tail


def steinberg_expansion_unique(nu: Sequence[int], p: int, m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """The digit decomposition of ``0`` or ``(q-1) lambda_i``; raises unless there is exactly one."""
    q = p**m
    nu = tuple(nu)
    nonzero = [a for a in nu if a]
    if nonzero and (len(nonzero) != 1 or nonzero[0] != q - 1):
        raise ValueError("only 0 and (q-1) lambda_i are supported")
    found = steinberg_expansions(nu, p, m, n)
    if len(found) != 1:
        raise AssertionError(f"{len(found)} decompositions of {nu}")
    return found[0]


def d0_for_special_weight(n: int, p: int, i: int) -> int:
    if not 1 <= i <= n - 1:
        raise ValueError(f"i={i} outside 1..{n - 1}")
    return 1 if (i * (p - 1)) % n == 0 else 0


def zero_weight_monomials_in_degree(n: int, p: int, degree: int, guard: int = ENUM_GUARD) -> int:
    """Brute-force count of zero-weight monomials of ``R_n`` in one homogeneous degree."""
    mons = all_monomials(p, n, guard)
    rows = mons[mons.sum(axis=1) == degree]
    return int(np.count_nonzero(np.all(rows == rows[:, :1], axis=1)))


def _torus_coefficients(spec: GroupSpec, label: WeylClassLabel):
    """Per-block exponent coefficients for the ``m n`` digit columns, plus moduli."""
    torus = build_canonical_torus(spec, label)
    p, m, n, q = spec.p, spec.m, spec.n, spec.q
    coef = np.zeros((len(torus.blocks), m * n), dtype=object)
    if torus.det_one:
        big = q**torus.lcm_length - 1
        scales = [big // (q**b.length - 1) for b in torus.blocks]
        moduli = [big] * len(torus.blocks)
    else:
        scales = [1] * len(torus.blocks)
        moduli = torus.block_orders()
    for i, block in enumerate(torus.blocks):
        for s in range(m):
            for t in range(block.length):
                coef[i, s * n + block.start + t] = scales[i] * p**s * q**t
    return torus, coef, moduli


def count_trivial_monomial_weights(spec: GroupSpec, label: WeylClassLabel,
                                   guard: int = ENUM_GUARD, use_numba=None) -> int:
    """Monomials of the ``m n``-variable ring whose weight is trivial on the canonical torus."""
    if spec.family not in (Family.GL, Family.SL):
        raise ValueError("only GL and SL are supported")
    _guard(spec.p ** (spec.m * spec.n), guard)
    torus, coef, moduli = _torus_coefficients(spec, label)
    big = max(abs(int(c)) for c in coef.flat) * spec.m * spec.n * spec.q
    if big < 2**62:
        coef = coef.astype(np.int64)
        moduli = np.array(moduli, dtype=np.int64)
    else:
        moduli = np.array(moduli, dtype=object)
    return _kernels.count_trivial(coef, moduli, spec.p, sl_mode=torus.det_one, qm1=spec.q - 1,
                                  use_numba=use_numba)


def expected_trivial_monomial_count(spec: GroupSpec, label: WeylClassLabel) -> int:
    k = label.k
    return 2**k if spec.family == Family.GL else spec.q - 2 + 2**k


def trivial_weight_exceptions(spec: GroupSpec, label: WeylClassLabel, guard: int = ENUM_GUARD) -> list:
    """Trivial-on-torus GL weights that are neither 0 nor conjugate to ``(q-1) lambda_i``.

    Weights are compared modulo the all-ones vector, i.e. after subtracting
    the minimum coordinate.  The result should be empty.
    """
    from torusinv.tori import restriction_is_trivial

    if spec.family not in (Family.GL, Family.SL):
        raise ValueError("only GL and SL are supported")
    q = spec.q
    _guard(q**spec.n, guard)
    torus = build_canonical_torus(spec, label)
    bad = []
    for idx in range(q**spec.n):
        z = [(idx // q**k) % q for k in range(spec.n)]
        if not restriction_is_trivial(z, torus):
            continue
        low = min(z)
        if any(x - low not in (0, q - 1) for x in z):
            bad.append(tuple(z))
    return bad


def multiplicity_check_rows(p: int, n: int) -> list[tuple[tuple[int, ...], int, int]]:
    """``(nu, formula, brute)`` for every realized weight of ``R_n``."""
    brute = weight_multiplicities_brute(p, n)
    return [(nu, weight_multiplicity_rn(nu, p, n), c) for nu, c in sorted(brute.items())]


def dominant_weights(n: int, bound: int):
    """Dominant lambda-weights with coordinates below ``bound``."""
    grids = np.indices((bound,) * (n - 1)).reshape(n - 1, -1).T if n > 1 else np.zeros((1, 0), dtype=int)
    for row in grids:
        yield tuple(int(x) for x in row)

