from fractions import Fraction

import pytest

from torusinv.stdecomp import (
    ClassFunctionOnTori,
    VirtualUnipotentVector,
    epsilon_sign,
    hc_steinberg_vector,
    is_l_controlled,
    steinberg_inner,
    steinberg_vector,
    theorem_th5_report,
    unipotent_part,
)
from torusinv.tori import orbit_char_multiplicity
from torusinv.weyl import Family, GroupSpec, WeylClassLabel as L, enumerate_classes, max_level

SPECS = [
    ("gl", 3), ("sl", 3), ("sp", 3), ("soodd", 3), ("soplus", 3), ("sominus", 3), ("spinplus", 2), ("spinminus", 2),
]


def _specs(max_n=5):
    for fam, q in SPECS:
        for n in range(1 if fam in ("gl", "sl") else 2, max_n + 1):
            yield GroupSpec.from_q(fam, n, q)


def test_steinberg_examples():
    st2 = steinberg_vector(GroupSpec.from_q("gl", 2, 3))
    assert st2.coeffs == {L((2,)): Fraction(-1, 2), L((1, 1)): Fraction(1, 2)}
    st1 = steinberg_vector(GroupSpec.from_q("gl", 1, 5))
    assert st1.coeffs == {L((1,)): Fraction(1)}


def test_epsilon_signs():
    s = GroupSpec.from_q("gl", 3, 2)
    assert [epsilon_sign(s, l) for l in enumerate_classes(s)] == [1, -1, 1]
    s = GroupSpec.from_q("sominus", 2, 3)
    # the quasi-split torus carries sign +1
    assert {str(l): epsilon_sign(s, l) for l in enumerate_classes(s)} == {"1-1": 1, "-2": -1}
    s = GroupSpec.from_q("sp", 3, 3)
    for label in enumerate_classes(s):
        assert epsilon_sign(s, label) == (-1) ** (3 - label.k)


@pytest.mark.parametrize("spec", list(_specs(6)), ids=str)
def test_steinberg_norms(spec):
    st = steinberg_vector(spec)
    assert st.inner(st) == 1
    for j in range(max_level(spec) + 1):
        assert st.inner(hc_steinberg_vector(spec, j)) == 1
    assert hc_steinberg_vector(spec, 0) == st


@pytest.mark.parametrize("spec", list(_specs(4)), ids=str)
def test_orbit_functions_are_controlled(spec):
    st = steinberg_vector(spec)
    for j in range(1, max_level(spec) + 1):
        phi = ClassFunctionOnTori.from_function(spec, lambda l: orbit_char_multiplicity(spec, l, j))
        assert is_l_controlled(phi, j)
        u = unipotent_part(phi)
        assert u == hc_steinberg_vector(spec, j)
        assert steinberg_inner(phi) == st.inner(u)


def test_unipotent_part_examples():
    s = GroupSpec.from_q("gl", 3, 2)
    assert unipotent_part(ClassFunctionOnTori.constant(s, 0)).is_zero()
    assert unipotent_part(ClassFunctionOnTori.constant(s, 1)) == steinberg_vector(s)
    phi = ClassFunctionOnTori(s, {L((1, 1, 1)): 3, L((2, 1)): 1, L((3,)): 0})
    expected = {L((1, 1, 1)): Fraction(1, 2), L((2, 1)): Fraction(-1, 2), L((3,)): Fraction(0)}
    assert unipotent_part(phi).coeffs == expected
    assert hc_steinberg_vector(s, 1).coeffs == expected


def test_zero_iff_all_values_zero():
    s = GroupSpec.from_q("sp", 3, 3)
    labels = enumerate_classes(s)
    for k, label in enumerate(labels):
        values = {l: 0 for l in labels}
        values[label] = k + 1
        assert not unipotent_part(ClassFunctionOnTori(s, values)).is_zero()


def test_steinberg_inner_examples():
    for n in range(1, 7):
        for q in (2, 3, 4, 5, 7, 8, 9):
            gl = GroupSpec.from_q("gl", n, q)
            assert steinberg_inner(ClassFunctionOnTori.from_function(gl, lambda l: 2**l.k - 1)) == n
            sl = GroupSpec.from_q("sl", n, q)
            assert steinberg_inner(ClassFunctionOnTori.from_function(sl, lambda l: q - 3 + 2**l.k)) == n + q - 2
    assert steinberg_inner(ClassFunctionOnTori.constant(GroupSpec.from_q("sp", 2, 3), 0)) == 0


def test_l_controlled_examples():
    s = GroupSpec.from_q("gl", 2, 3)
    assert is_l_controlled(ClassFunctionOnTori.constant(s, 1), 0)
    assert not is_l_controlled(ClassFunctionOnTori(s, {L((1, 1)): 1, L((2,)): 1}), 1)


def test_gl_chi_decomposes_into_levi_sum():
    for n in range(1, 6):
        s = GroupSpec.from_q("gl", n, 4)
        phi = ClassFunctionOnTori.from_function(s, lambda l: 2**l.k - 1)
        total = VirtualUnipotentVector(s)
        for j in range(1, n + 1):
            total = total + hc_steinberg_vector(s, j)
        assert unipotent_part(phi) == total


def test_missing_classes_rejected():
    with pytest.raises(ValueError):
        ClassFunctionOnTori(GroupSpec.from_q("gl", 2, 3), {L((2,)): 1})


def test_th5_examples():
    r = theorem_th5_report(GroupSpec.from_q("sl", 2, 3), (2,))
    s = r.spec
    assert (r.case, r.special_index, r.d0) == ("special", 1, 1)
    assert r.vector == steinberg_vector(s) + hc_steinberg_vector(s, 1)
    r = theorem_th5_report(GroupSpec.from_q("sl", 3, 2), (1, 0))
    assert (r.case, r.d0) == ("special", 0)
    assert r.vector == hc_steinberg_vector(r.spec, 1)
    r = theorem_th5_report(GroupSpec.from_q("sl", 2, 5), (1,), d0=0)
    assert r.case == "generic" and r.vector.is_zero()
    r = theorem_th5_report(GroupSpec.from_q("sl", 3, 5), (0, 0))
    assert r.vector == steinberg_vector(r.spec)


def test_th5_errors():
    with pytest.raises(ValueError, match="digit"):
        theorem_th5_report(GroupSpec.from_q("sl", 3, 3), (2, 2))
    with pytest.raises(ValueError, match="supplied"):
        theorem_th5_report(GroupSpec.from_q("sl", 2, 5), (1,))
    with pytest.raises(ValueError, match="contradicts"):
        theorem_th5_report(GroupSpec.from_q("sl", 3, 2), (1, 0), d0=1)
    with pytest.raises(ValueError):
        theorem_th5_report(GroupSpec.from_q("gl", 3, 2), (1, 0))
    with pytest.raises(ValueError):
        theorem_th5_report(GroupSpec.from_q("sl", 3, 2), (1,))


def test_vector_arithmetic():
    s = GroupSpec.from_q("sp", 2, 3)
    st = steinberg_vector(s)
    assert (st + st - st.scale(2)).is_zero()
    with pytest.raises(ValueError):
        st.inner(steinberg_vector(GroupSpec.from_q("sp", 2, 5)))
    assert hash(st) == hash(steinberg_vector(s))
    assert Family.SP == s.family
