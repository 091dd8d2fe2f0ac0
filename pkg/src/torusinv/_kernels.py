"""Hot enumeration kernels.

Every kernel exists twice: a loop version compiled with ``numba.njit`` and a
vectorised numpy version.  The public names at the bottom dispatch to one of
them; set ``TORUSINV_DISABLE_NUMBA=1`` (or run without numba installed) to
force the numpy path.  Both paths must return identical integers.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("TORUSINV_DISABLE_NUMBA", "0") not in ("1", "true", "yes")

_CHUNK = 1 << 16


def _njit(fn):
    if not NUMBA_AVAILABLE:
        return None
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# orbit counting for a group given by generator permutations


def _count_orbits_loop(perms):
    size = perms.shape[1]
    parent = np.arange(size)
    for g in range(perms.shape[0]):
        for x in range(size):
            a = x
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = perms[g, x]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    roots = 0
    for x in range(size):
        if parent[x] == x:
            roots += 1
    return roots


def _count_orbits_numpy(perms):
    size = perms.shape[1]
    labels = np.arange(size)
    while True:
        old = labels.copy()
        for perm in perms:
            labels = np.minimum(labels, labels[perm])
            pushed = labels.copy()
            pushed[perm] = np.minimum(labels[perm], labels)
            labels = pushed
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        if np.array_equal(old, labels):
            break
    return int(np.count_nonzero(labels == np.arange(size)))


# ---------------------------------------------------------------------------
# count exponent vectors z in [0, q)^n whose character is trivial on a torus


def _count_trivial_loop(coef, moduli, q, sl_mode, qm1):
    nblocks, n = coef.shape
    total = 1
    for _ in range(n):
        total *= q
    z = np.zeros(n, dtype=np.int64)
    acc = np.zeros(nblocks, dtype=np.int64)
    count = 0
    for idx in range(total):
        rem = idx
        for k in range(n):
            z[k] = rem % q
            rem //= q
        for i in range(nblocks):
            s = 0
            for k in range(n):
                s += coef[i, k] * z[k]
            acc[i] = s
        ok = True
        if sl_mode:
            mod = moduli[0]
            for i in range(nblocks):
                if (qm1 * acc[i]) % mod != 0 or (acc[i] - acc[0]) % mod != 0:
                    ok = False
                    break
        else:
            for i in range(nblocks):
                if acc[i] % moduli[i] != 0:
                    ok = False
                    break
        if ok:
            count += 1
    return count


def _count_trivial_numpy(coef, moduli, q, sl_mode, qm1, dtype=np.int64):
    nblocks, n = coef.shape
    total = q**n
    coef = np.asarray(coef, dtype=dtype)
    moduli = np.asarray(moduli, dtype=dtype)
    powers = np.array([q**k for k in range(n)], dtype=np.int64)
    count = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        z = ((idx[:, None] // powers[None, :]) % q).astype(dtype)
        acc = z @ coef.T
        if sl_mode:
            mod = moduli[0]
            ok = np.all((acc * qm1) % mod == 0, axis=1)
            ok &= np.all((acc - acc[:, :1]) % mod == 0, axis=1)
        else:
            ok = np.all(acc % moduli[None, :] == 0, axis=1)
        count += int(np.count_nonzero(ok))
    return count


# ---------------------------------------------------------------------------
# successive powers of a field element in a polynomial basis


def _power_sequence_loop(mult, p, length):
    d = mult.shape[0]
    out = np.zeros(length, dtype=np.int64)
    state = np.zeros(d, dtype=np.int64)
    nxt = np.zeros(d, dtype=np.int64)
    state[0] = 1
    for k in range(length):
        code = 0
        scale = 1
        for i in range(d):
            code += state[i] * scale
            scale *= p
        out[k] = code
        for i in range(d):
            s = 0
            for j in range(d):
                s += mult[i, j] * state[j]
            nxt[i] = s % p
        for i in range(d):
            state[i] = nxt[i]
    return out


def _power_sequence_numpy(mult, p, length):
    d = mult.shape[0]
    block = np.zeros((1, d), dtype=np.int64)
    block[0, 0] = 1
    step = mult.astype(np.int64) % p
    while block.shape[0] < length:
        block = np.concatenate([block, (block @ step.T) % p])
        step = (step @ step) % p
    block = block[:length]
    weights = np.array([p**i for i in range(d)], dtype=np.int64)
    return block @ weights


# ---------------------------------------------------------------------------
# per-permutation counts of invariant subsets, split by subset size


def _fixed_subset_counts_loop(perms):
    nperm, n = perms.shape
    out = np.zeros((nperm, n + 1), dtype=np.int64)
    for r in range(nperm):
        for mask in range(1 << n):
            image = 0
            size = 0
            for i in range(n):
                if (mask >> i) & 1:
                    image |= 1 << perms[r, i]
                    size += 1
            if image == mask:
                out[r, size] += 1
    return out


def _fixed_subset_counts_numpy(perms):
    nperm, n = perms.shape
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
    sizes = bits.sum(axis=1)
    onehot = np.zeros((1 << n, n + 1), dtype=np.int64)
    onehot[masks, sizes] = 1
    out = np.zeros((nperm, n + 1), dtype=np.int64)
    for start in range(0, nperm, 4096):
        chunk = perms[start:start + 4096].astype(np.int64)
        images = bits @ (np.int64(1) << chunk).T
        fixed = (images == masks[:, None]).astype(np.int64)
        out[start:start + 4096] = fixed.T @ onehot
    return out


# ---------------------------------------------------------------------------
# rowwise products of polynomials modulo a fixed monic polynomial over F_p


def _poly_mul_loop(da, db, red, p):
    rows, m = da.shape
    out = np.zeros((rows, m), dtype=np.int64)
    prod = np.zeros(2 * m - 1, dtype=np.int64)
    for r in range(rows):
        for k in range(2 * m - 1):
            prod[k] = 0
        for i in range(m):
            a = da[r, i]
            if a == 0:
                continue
            for j in range(m):
                prod[i + j] += a * db[r, j]
        for k in range(2 * m - 1):
            prod[k] %= p
        for top in range(2 * m - 2, m - 1, -1):
            c = prod[top]
            if c == 0:
                continue
            for k in range(m):
                prod[top - m + k] = (prod[top - m + k] + c * red[k]) % p
        for k in range(m):
            out[r, k] = prod[k]
    return out


def _poly_mul_numpy(da, db, red, p):
    m = da.shape[1]
    prod = np.zeros(da.shape[:-1] + (2 * m - 1,), dtype=np.int64)
    for i in range(m):
        prod[..., i:i + m] += da[..., i:i + 1] * db
    prod %= p
    for top in range(2 * m - 2, m - 1, -1):
        c = prod[..., top:top + 1]
        prod[..., top - m:top] = (prod[..., top - m:top] + c * red) % p
    return prod[..., :m]


_count_orbits_jit = _njit(_count_orbits_loop)
_count_trivial_jit = _njit(_count_trivial_loop)
_power_sequence_jit = _njit(_power_sequence_loop)
_fixed_subset_counts_jit = _njit(_fixed_subset_counts_loop)
_poly_mul_jit = _njit(_poly_mul_loop)


def count_orbits(perms, use_numba=None):
    """Number of orbits of the group generated by the rows of ``perms``."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if perms.shape[0] == 0:
        return int(perms.shape[1])
    if _pick(use_numba):
        return int(_count_orbits_jit(perms))
    return _count_orbits_numpy(perms)


def count_trivial(coef, moduli, q, sl_mode=False, qm1=1, use_numba=None):
    """Count ``z`` in ``[0, q)^n`` with every block sum ``coef @ z`` trivial.

    Without ``sl_mode`` block ``i`` is trivial when its sum vanishes modulo
    ``moduli[i]``.  In ``sl_mode`` all moduli coincide and the test is the
    determinant-one lattice one: ``qm1 * A_i`` and ``A_i - A_0`` vanish.
    """
    coef = np.asarray(coef)
    moduli = np.asarray(moduli)
    n = coef.shape[1]
    bound = int(np.abs(coef).sum(axis=1).max(initial=0)) * (q - 1) * max(qm1, 1)
    if bound >= 2**62 or int(moduli.max(initial=1)) >= 2**62:
        return _count_trivial_numpy(coef.astype(object), moduli.astype(object), q, sl_mode, qm1, dtype=object)
    coef = np.ascontiguousarray(coef, dtype=np.int64)
    moduli = np.ascontiguousarray(moduli, dtype=np.int64)
    if n == 0:
        return 1
    if _pick(use_numba):
        return int(_count_trivial_jit(coef, moduli, q, sl_mode, qm1))
    return _count_trivial_numpy(coef, moduli, q, sl_mode, qm1)


def power_sequence(mult, p, length, use_numba=None):
    """Encodings of ``g^0 .. g^(length-1)`` where ``mult`` multiplies by ``g``."""
    mult = np.ascontiguousarray(mult, dtype=np.int64)
    if _pick(use_numba):
        return _power_sequence_jit(mult, p, length)
    return _power_sequence_numpy(mult, p, length)


def fixed_subset_counts(perms, use_numba=None):
    """Row ``r``, column ``j``: number of ``j``-subsets mapped onto themselves by ``perms[r]``."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if _pick(use_numba):
        return _fixed_subset_counts_jit(perms)
    return _fixed_subset_counts_numpy(perms)


def poly_mul(da, db, red, p, use_numba=None):
    """Digit rows of ``a * b mod f`` where ``red`` holds ``-f`` without its leading term."""
    da, db = np.broadcast_arrays(np.asarray(da, dtype=np.int64), np.asarray(db, dtype=np.int64))
    shape = da.shape
    m = shape[-1]
    da = np.ascontiguousarray(da.reshape(-1, m))
    db = np.ascontiguousarray(db.reshape(-1, m))
    red = np.ascontiguousarray(red, dtype=np.int64)
    if _pick(use_numba):
        out = _poly_mul_jit(da, db, red, p)
    else:
        out = _poly_mul_numpy(da, db, red, p)
    return out.reshape(shape)


def _pick(use_numba):
    if use_numba is None:
        return USE_NUMBA
    if use_numba and not NUMBA_AVAILABLE:
        raise RuntimeError("numba is not installed")
    return bool(use_numba)
