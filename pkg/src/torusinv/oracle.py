"""Brute-force recomputation of the closed-form quantities.

Nothing here reuses the exponent arithmetic of :mod:`torusinv.tori` or the
closed forms of :mod:`torusinv.weyl`; tori are built as groups of field
elements or matrices and counted directly.  Only the label bookkeeping
(class enumeration and canonical representatives) is shared.
"""
from __future__ import annotations

import itertools
import math
from functools import reduce

import numpy as np

from torusinv import _kernels
from torusinv.ffield import ambient_field, build_field
from torusinv.weyl import (
    Family,
    GroupSpec,
    SignedPermutation,
    WeylClassLabel,
    canonical_representative,
    compose_keys,
    group_keys,
    twist_element,
)

ELEMENT_GUARD = 10**6


def _guard(count, guard, what):
    if count > guard:
        raise ValueError(f"guard exceeded: {what} = {count} > {guard}")


# ---------------------------------------------------------------------------
# small linear algebra over a subfield F_q of a table field


class _Subfield:
    """``F_q`` inside an ambient field, with elements relabelled ``0 .. q-1``."""

    def __init__(self, field, q):
        self.field = field
        self.q = q
        elems = [0] + sorted(int(x) for x in field.subgroup(q - 1))
        self.elems = np.array(elems, dtype=np.int64)
        self.index = {e: i for i, e in enumerate(elems)}
        grid_a, grid_b = np.meshgrid(self.elems, self.elems, indexing="ij")
        self.add = np.vectorize(self.index.get)(field.add(grid_a, grid_b)).astype(np.int64)
        self.mul = np.vectorize(self.index.get)(field.mul(grid_a, grid_b)).astype(np.int64)
        self.zero = 0
        self.one = self.index[1]

    def neg(self, i):
        return self.index[self.field.neg(int(self.elems[i]))]


def _min_poly(field, b, q, degree):
    """Coefficients (low to high) of ``prod_t (x - b^{q^t})`` over the ambient field."""
    poly = [1]
    root = b
    for _ in range(degree):
        shifted = [0] + poly
        scaled = [field.mul(field.neg(root), c) for c in poly] + [0]
        poly = [field.add(a, c) for a, c in zip(shifted, scaled)]
        root = field.pow(root, q)
    return poly


def _companion(sub: _Subfield, poly) -> np.ndarray:
    """Companion matrix (as subfield indices) of a monic polynomial."""
    deg = len(poly) - 1
    coeffs = [sub.index.get(int(c)) for c in poly]
    if any(c is None for c in coeffs):
        raise ArithmeticError("minimal polynomial is not defined over the subfield")
    mat = np.zeros((deg, deg), dtype=np.int64)
    for k in range(deg - 1):
        mat[k + 1, k] = sub.one
    for k in range(deg):
        mat[k, deg - 1] = sub.neg(coeffs[k])
    return mat


def _torus_matrices(p: int, m: int, label: WeylClassLabel):
    """Subfield data and one companion block per part, in a common ambient field."""
    q = p**m
    lengths = list(label.positive)
    big_l = reduce(math.lcm, lengths, 1)
    field = build_field(p, m * big_l)
    sub = _Subfield(field, q)
    blocks = []
    for n_i in lengths:
        b = field.element_of_order(q**n_i - 1)
        blocks.append(_companion(sub, _min_poly(field, b, q, n_i)))
    return sub, blocks


def _block_perm(sub: _Subfield, mat: np.ndarray, start: int, n: int) -> np.ndarray:
    """Permutation of all ``q^n`` vectors induced by ``mat`` acting on one block."""
    q = sub.q
    size = q**n
    coords = np.indices((q,) * n, dtype=np.int64).reshape(n, -1)[::-1]
    out = coords.copy()
    d = mat.shape[0]
    for r in range(d):
        acc = np.zeros(size, dtype=np.int64)
        for k in range(d):
            acc = sub.add[acc, sub.mul[mat[r, k], coords[start + k]]]
        out[start + r] = acc
    weights = np.array([q**k for k in range(n)], dtype=np.int64)
    return weights @ out


def _perm_power(perm: np.ndarray, e: int) -> np.ndarray:
    result = np.arange(perm.size)
    base = perm
    while e:
        if e & 1:
            result = base[result]
        base = base[base]
        e >>= 1
    return result


def _det_one_generators(orders, det_logs, qm1):
    """Greedy generating set of ``{x : sum x_i det_logs_i = 0 mod q-1}`` in ``prod Z/orders``."""
    target = math.prod(orders) // qm1
    span = {tuple(0 for _ in orders)}
    gens = []
    for x in itertools.product(*(range(o) for o in orders)):
        if len(span) == target:
            break
        if x in span or sum(a * b for a, b in zip(x, det_logs)) % qm1:
            continue
        gens.append(x)
        frontier = list(span)
        while frontier:
            nxt = []
            for h in frontier:
                y = tuple((a + b) % o for a, b, o in zip(h, x, orders))
                if y not in span:
                    span.add(y)
                    nxt.append(y)
            frontier = nxt
    if len(span) != target:
        raise ArithmeticError("determinant-one subgroup has the wrong order")  # pragma: no cover
    return gens


def torus_orbit_count(spec: GroupSpec, label: WeylClassLabel, guard: int = ELEMENT_GUARD) -> int:
    """Orbits of the canonical torus on ``F_q^n`` minus zero, from explicit companion matrices."""
    if spec.family not in (Family.GL, Family.SL):
        raise ValueError("only GL and SL are supported")
    q, n = spec.q, spec.n
    _guard(q**n, guard, "q^n")
    sub, blocks = _torus_matrices(spec.p, spec.m, label)
    starts = np.cumsum([0] + list(label.positive))[:-1]
    perms = [_block_perm(sub, mat, int(s), n) for mat, s in zip(blocks, starts)]
    if spec.family == Family.SL:
        field = sub.field
        h = field.element_of_order(q - 1)
        logs = {int(field.pow(h, k)): k for k in range(q - 1)}
        det_logs = []
        for mat in blocks:
            d = mat.shape[0]
            const = int(sub.elems[sub.neg(mat[0, d - 1])])
            det = const if d % 2 == 0 else field.neg(const)
            det_logs.append(logs[det])
        orders = [q ** mat.shape[0] - 1 for mat in blocks]
        gens = _det_one_generators(orders, det_logs, q - 1)
        perms = [reduce(lambda acc, ip: _perm_power(ip[1], ip[0])[acc], zip(x, perms), np.arange(q**n))
                 for x in gens]
    if not perms:
        return q**n - 1
    return _kernels.count_orbits(np.array(perms)) - 1


# ---------------------------------------------------------------------------
# torus elements as tuples of field elements


def _orbit_by_reflections(weyl_type: str, n: int, j: int):
    """Orbit of ``eps_1 + .. + eps_j`` under the simple reflections."""
    start = (1,) * j + (0,) * (n - j)

    def reflect(z):
        for i in range(n - 1):
            y = list(z)
            y[i], y[i + 1] = y[i + 1], y[i]
            yield tuple(y)
        if weyl_type == "B":
            yield z[:-1] + (-z[-1],)
        elif weyl_type == "D" and n >= 2:
            yield z[:-2] + (-z[-1], -z[-2])

    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for z in frontier:
            for y in reflect(z):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def _cycle_data(w: SignedPermutation, q: int):
    """Per cycle: positions, exponent multipliers and the order of the cyclic factor."""
    out = []
    for cyc, sign in w.cycles():
        order = q ** len(cyc) + (1 if sign < 0 else -1)
        mults = []
        e = 1
        for pos in cyc:
            mults.append(e % order)
            e = e * q * w.signs[pos]
        out.append((cyc, mults, order))
    return out


def torus_elements(spec: GroupSpec, label: WeylClassLabel, guard: int = ELEMENT_GUARD):
    """The torus ``{t : t^q = w(t)}`` as an ambient field plus per-cycle coordinate tables.

    Returns ``(field, cycles)`` where each cycle entry is ``(positions, table)``
    and ``table[k, s]`` is coordinate ``positions[s]`` of the ``k``-th power of
    the cycle generator.
    """
    q = spec.q
    w = canonical_representative(spec, label)
    data = _cycle_data(w, q)
    _guard(math.prod(o for _, _, o in data), guard, "torus elements")
    ext = reduce(math.lcm, (len(c) * (2 if o == q ** len(c) + 1 else 1) for c, _, o in data), 1)
    field = ambient_field(spec.p, spec.m * ext)
    cycles = []
    coords = {}
    for cyc, mults, order in data:
        powers = np.asarray(field.subgroup(order), dtype=np.int64)
        ks = np.arange(order, dtype=np.int64)
        table = np.stack([powers[(ks * mu) % order] for mu in mults], axis=1)
        cycles.append((cyc, table))
        for s, pos in enumerate(cyc):
            coords[pos] = int(table[1 % order, s]) if order > 1 else 1
    for pos in range(spec.n):
        image = coords[w.images[pos]]
        if w.signs[pos] < 0:
            image = field.inv(image)
        if field.pow(coords[pos], q) != image:
            raise ArithmeticError(f"generator fails t^q = w(t) at position {pos}")
    return field, cycles


def _evaluate(field, cycles, mu):
    """``(num, den)`` with ``mu(t) = num / den`` at every torus element, flattened over the cycles.

    Splitting off the negative exponents keeps field inversions out of the loop.
    """
    num = np.ones(1, dtype=np.int64)
    den = np.ones(1, dtype=np.int64)
    for cyc, table in cycles:
        top = np.ones(table.shape[0], dtype=np.int64)
        bottom = np.ones(table.shape[0], dtype=np.int64)
        for s, pos in enumerate(cyc):
            z = mu[pos]
            if z > 0:
                top = field.mul(top, field.pow(table[:, s], z))
            elif z < 0:
                bottom = field.mul(bottom, field.pow(table[:, s], -z))
        num = field.mul(num[:, None], top[None, :]).ravel()
        den = field.mul(den[:, None], bottom[None, :]).ravel()
    return num, den


def torus_element_qchar_count(spec: GroupSpec, label: WeylClassLabel, j: int,
                              guard: int = ELEMENT_GUARD) -> int:
    """Weights in the orbit of ``omega_j`` with ``mu(t)^{q-1} = 1`` at every torus element.

    ``mu(t)^{q-1}`` is evaluated as ``mu`` applied to ``t^{q-1}``, so the
    coordinate tables are raised to the power ``q-1`` once up front.
    """
    field, cycles = torus_elements(spec, label, guard)
    n, q = spec.n, spec.q
    mask = None
    if spec.family == Family.SL:
        num, den = _evaluate(field, cycles, (1,) * n)
        mask = num == 1
    powered = [(cyc, field.pow(table, q - 1)) for cyc, table in cycles]
    count = 0
    for mu in _orbit_by_reflections(spec.family.weyl_type, n, j):
        num, den = _evaluate(field, powered, mu)
        if mask is not None:
            num, den = num[mask], den[mask]
        if np.array_equal(num, den):
            count += 1
    return count


# ---------------------------------------------------------------------------
# exterior powers over F_2


def _rank_f2(rows: np.ndarray) -> int:
    a = rows.copy() % 2
    rank = 0
    for col in range(a.shape[1]):
        pivot = np.nonzero(a[rank:, col])[0]
        if pivot.size == 0:
            continue
        r = rank + pivot[0]
        a[[rank, r]] = a[[r, rank]]
        hits = np.nonzero(a[:, col])[0]
        hits = hits[hits != rank]
        a[hits] ^= a[rank]
        rank += 1
        if rank == a.shape[0]:
            break
    return rank


def _det_f2(mat: np.ndarray) -> int:
    return 1 if _rank_f2(mat) == mat.shape[0] else 0


def exterior_power_fixed_dim(n: int, j: int, label: WeylClassLabel, guard: int = 10**4) -> int:
    """Dimension of the torus-fixed subspace of the ``j``-th exterior power of ``F_2^n``."""
    subsets = list(itertools.combinations(range(n), j))
    _guard(len(subsets), guard, "C(n, j)")
    if label.size != n:
        raise ValueError("label does not partition n")
    sub, blocks = _torus_matrices(2, 1, label)
    gens = []
    start = 0
    for block in blocks:
        full = np.eye(n, dtype=np.int64)
        d = block.shape[0]
        full[start:start + d, start:start + d] = sub.elems[block]
        gens.append(full % 2)
        start += d
    if j == 0:
        return 1
    size = len(subsets)
    stacked = []
    for g in gens:
        ext = np.zeros((size, size), dtype=np.int64)
        for a, rows in enumerate(subsets):
            for b, cols in enumerate(subsets):
                ext[a, b] = _det_f2(g[np.ix_(rows, cols)])
        stacked.append((ext + np.eye(size, dtype=np.int64)) % 2)
    return size - _rank_f2(np.vstack(stacked)) if stacked else size


# ---------------------------------------------------------------------------
# cosets, twisted classes and centralizers in signed permutation groups


def _twist(tau):
    if tau is None:
        return lambda g: g
    tau_inv = SignedPermutation.from_key(tau).inverse().key
    return lambda g: compose_keys(compose_keys(tau, g), tau_inv)


def coset_fixing_oracle(group, subgroup, a, tau=None, guard: int = ELEMENT_GUARD) -> int:
    """Cosets ``gA`` of ``A`` in ``B`` with ``a F(g) in gA``, ``F`` = conjugation by ``tau``."""
    group = list(group)
    _guard(len(group), guard, "|B|")
    subgroup = list(subgroup)
    frob = _twist(tau)
    coset_of = {}
    reps = []
    for g in group:
        if g in coset_of:
            continue
        for h in subgroup:
            coset_of[compose_keys(g, h)] = len(reps)
        reps.append(g)
    return sum(1 for cid, g in enumerate(reps) if coset_of.get(compose_keys(a, frob(g))) == cid)


def _inverse_key(k):
    return SignedPermutation.from_key(k).inverse().key


def twisted_class(group, a, tau=None):
    """``{g a F(g)^{-1}}``: the F-conjugacy class of ``a`` under ``group``."""
    frob = _twist(tau)
    return {compose_keys(compose_keys(g, a), _inverse_key(frob(g))) for g in group}


def twisted_centralizer_order(group, a, tau=None) -> int:
    frob = _twist(tau)
    return sum(1 for g in group if compose_keys(compose_keys(g, a), _inverse_key(frob(g))) == a)


def centralizer_sum_formula(group, subgroup, a, tau=None):
    """``sum_i |FC_B(a)| / |FC_A(a_i)|`` over A-twisted classes inside the B-twisted class of ``a``."""
    from fractions import Fraction

    big = twisted_class(group, a, tau)
    remaining = {x for x in subgroup if x in big}
    total = Fraction(0)
    cb = twisted_centralizer_order(group, a, tau)
    while remaining:
        rep = min(remaining)
        remaining -= twisted_class(subgroup, rep, tau)
        total += Fraction(cb, twisted_centralizer_order(subgroup, rep, tau))
    return total


def semidirect_induced_value(group, subgroup, a, tau=None) -> int:
    """``1_{A~}^{B~}(a~)`` in ``B x| <F>`` with ``a~ = (a, F)``, from pairs ``(b, e)``."""
    frob = _twist(tau)
    group = list(group)
    order = 1
    probe = [frob(g) for g in group]
    while probe != group:
        probe = [frob(g) for g in probe]
        order += 1
    twists = [lambda g: g]
    for _ in range(order - 1):
        prev = twists[-1]
        twists.append(lambda g, prev=prev: frob(prev(g)))

    def mul(x, y):
        (b1, e1), (b2, e2) = x, y
        return compose_keys(b1, twists[e1](b2)), (e1 + e2) % order

    big = [(b, e) for b in group for e in range(order)]
    small = [(b, e) for b in subgroup for e in range(order)]
    coset_of = {}
    reps = []
    for g in big:
        if g in coset_of:
            continue
        for h in small:
            coset_of[mul(g, h)] = len(reps)
        reps.append(g)
    a_t = (a, 1 % order)
    return sum(1 for cid, g in enumerate(reps) if coset_of.get(mul(a_t, g)) == cid)


def stabilizer_keys(keys, target):
    return [k for k in keys if SignedPermutation.from_key(k).apply(target) == tuple(target)]


def in8_cell(spec: GroupSpec, label: WeylClassLabel, j: int):
    """The three routes to the twisted induced value for one cell: cosets, centralizer sum, semidirect product."""
    keys = group_keys(spec.family.weyl_type, spec.n)
    target = (1,) * j + (0,) * (spec.n - j)
    stab = stabilizer_keys(keys, target)
    w = canonical_representative(spec, label)
    tau = twist_element(spec).key if spec.family.twisted else None
    a = compose_keys(tau, w.key) if tau is not None else w.key
    return (
        coset_fixing_oracle(keys, stab, a, tau),
        centralizer_sum_formula(keys, stab, a, tau),
        semidirect_induced_value(keys, stab, a, tau),
    )


def centralizer_order_brute(spec: GroupSpec, label: WeylClassLabel) -> int:
    """``|C_W(w)|``, or the F-centralizer of ``r v`` for the minus-type families."""
    keys = group_keys(spec.family.weyl_type, spec.n)
    w = canonical_representative(spec, label)
    if spec.family.twisted:
        tau = twist_element(spec).key
        return twisted_centralizer_order(keys, compose_keys(tau, w.key), tau)
    return twisted_centralizer_order(keys, w.key)


def pm2_rows(n: int, use_numba=None):
    """For every ``w`` in ``S_n``: its number of cycles and the invariant-subset counts by size."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    counts = _kernels.fixed_subset_counts(perms, use_numba=use_numba)
    cycles = np.array([len(SignedPermutation(p).cycles()) for p in perms], dtype=np.int64)
    return cycles, counts
