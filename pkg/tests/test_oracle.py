import pytest

from torusinv.oracle import (
    centralizer_order_brute,
    exterior_power_fixed_dim,
    in8_cell,
    pm2_rows,
    torus_element_qchar_count,
    torus_orbit_count,
)
from torusinv.tori import orbit_char_multiplicity
from torusinv.weyl import GroupSpec, WeylClassLabel as L, enumerate_classes, induced_trivial_character, max_level

P = L.parse

# values frozen from the element and orbit oracles
SOMINUS3_Q3 = {"2-1": (0, 2), "1+1-1": (4, 4), "1-2": (2, 0), "-3": (0, 0), "-1-1-1": (0, 0)}
SP2_Q3 = {"2": (0, 2), "1+1": (4, 4), "1-1": (2, 0), "-2": (0, 0), "-1-1": (0, 0)}
EXT4 = {"4": (0, 0), "3+1": (1, 0), "2+2": (0, 2), "2+1+1": (2, 2), "1+1+1+1": (4, 6)}
SP3_CENTRALIZERS = {"3": 6, "2+1": 8, "1+1+1": 48, "2-1": 8, "1+1-1": 16, "1-2": 8, "1-1-1": 16,
                    "-3": 6, "-2-1": 8, "-1-1-1": 48}


def test_sl3_orbit_counts():
    s2 = GroupSpec.from_q("sl", 3, 2)
    assert {str(l): torus_orbit_count(s2, l) for l in enumerate_classes(s2)} == {"3": 1, "2+1": 3, "1+1+1": 7}
    s4 = GroupSpec.from_q("sl", 3, 4)
    assert {str(l): torus_orbit_count(s4, l) for l in enumerate_classes(s4)} == {"3": 3, "2+1": 5, "1+1+1": 9}


@pytest.mark.parametrize("fam", ["gl", "sl"])
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_nonzero_orbit_count_closed_form(fam, q):
    for n in range(1, 4):
        s = GroupSpec.from_q(fam, n, q)
        for label in enumerate_classes(s):
            expected = 2**label.k - 1 if fam == "gl" else q - 3 + 2**label.k
            assert torus_orbit_count(s, label) == expected


def test_element_counts_frozen():
    s = GroupSpec.from_q("sominus", 3, 3)
    assert {str(l): tuple(torus_element_qchar_count(s, l, j) for j in (1, 2)) for l in enumerate_classes(s)} == SOMINUS3_Q3
    s = GroupSpec.from_q("sp", 2, 3)
    assert {str(l): tuple(torus_element_qchar_count(s, l, j) for j in (1, 2)) for l in enumerate_classes(s)} == SP2_Q3


@pytest.mark.parametrize("fam,q", [("gl", 3), ("sl", 4), ("sp", 2), ("soodd", 3), ("soplus", 3),
                                   ("sominus", 3), ("spinplus", 2), ("spinminus", 4)])
def test_element_counts_match_weight_side(fam, q):
    for n in (2, 3):
        s = GroupSpec.from_q(fam, n, q)
        for label in enumerate_classes(s):
            for j in range(max_level(s) + 1):
                assert torus_element_qchar_count(s, label, j) == orbit_char_multiplicity(s, label, j)


def test_element_guard():
    with pytest.raises(ValueError, match="guard"):
        torus_element_qchar_count(GroupSpec.from_q("gl", 3, 9), P("1+1+1"), 1, guard=100)


def test_exterior_power_frozen():
    assert {k: (exterior_power_fixed_dim(4, 1, P(k)), exterior_power_fixed_dim(4, 2, P(k))) for k in EXT4} == EXT4
    assert exterior_power_fixed_dim(4, 0, P("4")) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_exterior_power_matches_weight_count(n):
    s = GroupSpec.from_q("gl", n, 2)
    for label in enumerate_classes(s):
        for j in range(n + 1):
            assert exterior_power_fixed_dim(n, j, label) == orbit_char_multiplicity(s, label, j)


def test_centralizer_brute_frozen():
    s = GroupSpec.from_q("sp", 3, 3)
    assert {str(l): centralizer_order_brute(s, l) for l in enumerate_classes(s)} == SP3_CENTRALIZERS


@pytest.mark.parametrize("fam", ["gl", "sp", "soplus", "sominus", "spinminus"])
def test_in8_three_routes(fam):
    s = GroupSpec.from_q(fam, 3, 3 if fam != "spinminus" else 2)
    for label in enumerate_classes(s):
        for j in range(max_level(s) + 1):
            a, b, c = in8_cell(s, label, j)
            assert a == b == c == induced_trivial_character(s, label, j)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_pm2_subset_counts(n):
    cycles, counts = pm2_rows(n)
    # the sum over invariant subsets of every size is 2^(number of cycles)
    assert (counts.sum(axis=1) == 2**cycles).all()
    assert counts[:, 0].tolist() == [1] * len(cycles)
