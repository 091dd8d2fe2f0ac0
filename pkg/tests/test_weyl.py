import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from torusinv.oracle import centralizer_order_brute, twisted_class
from torusinv.weyl import (
    Family,
    GroupSpec,
    SignedPermutation,
    WeylClassLabel,
    canonical_representative,
    centralizer_order,
    compose_keys,
    enumerate_classes,
    fixed_weight_count,
    group_keys,
    induced_trivial_by_cosets,
    induced_trivial_character,
    max_level,
    partitions,
    twist_element,
    weight_orbit,
    weyl_order,
)

L = WeylClassLabel
FAMILY_Q = {
    Family.GL: 2, Family.SL: 3, Family.SP: 3, Family.SO_ODD: 3, Family.SO_PLUS: 3,
    Family.SO_MINUS: 5, Family.SPIN_PLUS: 2, Family.SPIN_MINUS: 4,
}


def spec(fam, n, q=None):
    return GroupSpec.from_q(fam, n, q or FAMILY_Q[Family(fam)])


def test_group_spec_parity():
    with pytest.raises(ValueError):
        GroupSpec.from_q("soodd", 3, 4)
    with pytest.raises(ValueError):
        GroupSpec.from_q("spinplus", 3, 3)
    with pytest.raises(ValueError):
        GroupSpec.from_q("sp", 1, 3)
    with pytest.raises(ValueError):
        GroupSpec.from_q("gl", 2, 6)
    g = GroupSpec.from_q("gl", 2, 9)
    assert (g.p, g.m, g.q) == (3, 2, 9)


def test_label_round_trip_and_errors():
    for text in ["3+2-1", "2+2x", "-1-1", "4", "1+1+1-2-1"]:
        assert str(L.parse(text)) == text
    for bad in ["", "3+", "2++1", "a", "3x"]:
        with pytest.raises(ValueError):
            L.parse(bad)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=4), st.lists(st.integers(1, 6), max_size=4))
def test_label_round_trip_property(pos, neg):
    if not pos and not neg:
        return
    label = L(tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True)))
    assert L.parse(str(label)) == label


def test_enumerate_examples():
    assert [str(l) for l in enumerate_classes(spec("gl", 3))] == ["3", "2+1", "1+1+1"]
    assert {str(l) for l in enumerate_classes(spec("sp", 2))} == {"2", "1+1", "1-1", "-2", "-1-1"}
    assert {str(l) for l in enumerate_classes(spec("soplus", 2))} == {"1+1", "2", "2x", "-1-1"}
    assert all(l.l % 2 == 1 for l in enumerate_classes(spec("sominus", 4)))


def _brute_classes(keys, tau=None):
    remaining = set(keys)
    count = 0
    while remaining:
        rep = min(remaining)
        remaining -= twisted_class(keys, rep, tau)
        count += 1
    return count


@pytest.mark.parametrize("fam", list(Family))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_class_count_matches_brute_force(fam, n):
    s = spec(fam, n)
    keys = group_keys(s.family.weyl_type, n)
    tau = twist_element(s).key if s.family.twisted else None
    assert len(enumerate_classes(s)) == _brute_classes(keys, tau)


@pytest.mark.parametrize("fam", list(Family))
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_class_equation(fam, n):
    if Family(fam).weyl_type != "A" and n == 1:
        return
    s = spec(fam, n)
    assert sum(weyl_order(s) // centralizer_order(s, l) for l in enumerate_classes(s)) == weyl_order(s)


@pytest.mark.parametrize("fam", list(Family))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_centralizers_match_brute_force(fam, n):
    s = spec(fam, n)
    if n == 5 and s.family.weyl_type != "A":
        labels = enumerate_classes(s)[::3]
    else:
        labels = enumerate_classes(s)
    for label in labels:
        assert centralizer_order(s, label) == centralizer_order_brute(s, label), label


def test_centralizer_examples():
    assert centralizer_order(spec("gl", 3), L((2, 1))) == 2
    assert centralizer_order(spec("sp", 2), L((), (2,))) == 4
    # frozen from explicit enumeration in W(D_4)
    frozen = {"4": 8, "4x": 8, "3+1": 6, "2+2": 32, "2+2x": 32, "2+1+1": 16, "1+1+1+1": 192,
              "2-1-1": 16, "1+1-1-1": 32, "1-2-1": 8, "-3-1": 6, "-2-2": 16, "-1-1-1-1": 192}
    s = spec("soplus", 4)
    assert {str(l): centralizer_order(s, l) for l in enumerate_classes(s)} == frozen
    s = spec("sominus", 3)
    assert {str(l): centralizer_order(s, l) for l in enumerate_classes(s)} == {
        "2-1": 4, "1+1-1": 8, "1-2": 4, "-3": 3, "-1-1-1": 24}


def test_canonical_examples():
    w = canonical_representative(spec("gl", 3), L((3,)))
    assert w.apply((1, 0, 0)) == (0, 1, 0) and w.apply((0, 0, 1)) == (1, 0, 0)
    w = canonical_representative(spec("sp", 2), L((), (2,)))
    assert w.apply((1, 0)) == (0, 1) and w.apply((0, 1)) == (-1, 0)
    assert canonical_representative(spec("gl", 3), L((1, 1, 1))) == SignedPermutation.identity(3)
    w = canonical_representative(spec("soplus", 4), L((2, 2), (), True))
    assert w.apply((1, 0, 0, 0)) == (0, -1, 0, 0) and w.apply((0, 1, 0, 0)) == (-1, 0, 0, 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_type_d_representatives_have_even_signs(n):
    s = spec("soplus", n)
    for label in enumerate_classes(s):
        assert canonical_representative(s, label).negative_count() % 2 == 0


def test_label_validation():
    with pytest.raises(ValueError):
        canonical_representative(spec("gl", 3), L((2,), (1,)))
    with pytest.raises(ValueError):
        canonical_representative(spec("soplus", 3), L((2,), (1,)))
    with pytest.raises(ValueError):
        canonical_representative(spec("sominus", 3), L((2, 1)))
    with pytest.raises(ValueError):
        L((3, 1), (), True)


def test_fixed_weight_examples():
    gl3 = spec("gl", 3)
    assert fixed_weight_count(SignedPermutation.identity(3), gl3, 1) == 3
    assert fixed_weight_count(canonical_representative(gl3, L((3,))), gl3, 1) == 0
    sp2 = spec("sp", 2)
    assert fixed_weight_count(canonical_representative(sp2, L((), (2,))), sp2, 1) == 0
    assert fixed_weight_count(canonical_representative(sp2, L((1, 1))), sp2, 1) == 4
    with pytest.raises(ValueError):
        fixed_weight_count(SignedPermutation.identity(3), spec("sominus", 3), 3)


def test_coset_examples():
    gl3 = spec("gl", 3)
    assert induced_trivial_by_cosets(canonical_representative(gl3, L((2, 1))), gl3, 1) == 1
    gl4 = spec("gl", 4)
    assert induced_trivial_by_cosets(canonical_representative(gl4, L((2, 2))), gl4, 2) == 2
    with pytest.raises(ValueError):
        induced_trivial_by_cosets(SignedPermutation.identity(4), spec("sp", 4), 1, guard=100)


@pytest.mark.parametrize("fam", list(Family))
def test_identity_fixes_every_coset(fam):
    for n in (2, 3, 4):
        s = spec(fam, n)
        w = SignedPermutation.identity(n)
        for j in range(max_level(s) + 1):
            if s.family.twisted:
                continue
            assert induced_trivial_by_cosets(w, s, j) == len(weight_orbit(s, j))


@pytest.mark.parametrize("fam", list(Family))
def test_three_routes_to_induced_values(fam):
    top = 5
    for n in range(1 if Family(fam).weyl_type == "A" else 2, top + 1):
        s = spec(fam, n)
        for label in enumerate_classes(s):
            w = canonical_representative(s, label)
            for j in range(max_level(s) + 1):
                a = fixed_weight_count(w, s, j)
                assert a == induced_trivial_character(s, label, j)
                assert a == induced_trivial_by_cosets(w, s, j)


def test_orbit_sizes_are_indices():
    for fam in Family:
        s = spec(fam, 4)
        for j in range(max_level(s) + 1):
            full = weyl_order(s)
            if s.family.weyl_type == "A":
                assert len(weight_orbit(s, j)) == math.comb(4, j)
            elif s.family.weyl_type == "D" and j == 4:
                assert len(weight_orbit(s, j)) == 8
            else:
                assert len(weight_orbit(s, j)) == math.comb(4, j) * 2**j
            assert full % len(weight_orbit(s, j)) == 0


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [sum(1 for _ in partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


signed = st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.permutations(range(n)), st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
)


@settings(max_examples=80, deadline=None)
@given(signed, signed)
def test_composition_is_action(a, b):
    x = SignedPermutation(*a)
    n = x.n
    y = SignedPermutation(b[0][:n], b[1][:n]) if len(b[0]) == n else SignedPermutation.identity(n)
    mu = tuple(range(1, n + 1))
    assert (x * y).apply(mu) == x.apply(y.apply(mu))
    assert (x * x.inverse()) == SignedPermutation.identity(n)
    assert sum(1 for _, s in x.cycles() if s > 0) == x.fixed_dimension()


def test_keys_compose_like_elements():
    keys = group_keys("B", 3)
    for a, b in itertools.islice(itertools.product(keys, keys), 0, 48 * 48, 37):
        assert SignedPermutation.from_key(compose_keys(a, b)) == SignedPermutation.from_key(a) * SignedPermutation.from_key(b)
