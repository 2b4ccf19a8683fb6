import numpy as np
import pytest

from emrings.construct import (
    OrderCapError,
    build_spec,
    cyclic,
    direct_product,
    group_ring,
    idealization,
    localization,
    monomial_quotient,
    poly_quotient_xn,
    product_embed,
    product_project,
)
from emrings.grading import trivial_grading
from emrings.rings import (
    find_isomorphism,
    idempotents,
    units,
    validate_ring,
    zero_divisors,
)

from oracles import all_permutation_isomorphism


def test_cyclic_basic(z4, z6):
    assert zero_divisors(z6).elements == (0, 2, 3, 4)
    one_ring = cyclic(1)
    assert one_ring.order == 1 and one_ring.one == 0
    validate_ring(one_ring)


def test_order_cap():
    with pytest.raises(OrderCapError):
        cyclic(100, max_order=50)
    with pytest.raises(OrderCapError):
        poly_quotient_xn(cyclic(10), 4, max_order=4096)


def test_direct_product_idempotents():
    klein = direct_product([cyclic(2), cyclic(2)])
    validate_ring(klein)
    # (1,0), (0,1), (1,1) are the nontrivial idempotents
    assert idempotents(klein).elements == (0, 1, 2, 3)
    assert klein.one == 3


def test_direct_product_single_factor(z6):
    same = direct_product([z6])
    assert np.array_equal(same.add_table, z6.add_table)
    assert np.array_equal(same.mul_table, z6.mul_table)


def test_direct_product_projections():
    prod = direct_product([cyclic(2), cyclic(3)])
    e = product_embed(prod, 1, 2)
    assert product_project(prod, 1, e) == 2
    assert product_project(prod, 0, e) == 0
    assert find_isomorphism(prod, cyclic(6)) is not None
    assert all_permutation_isomorphism(prod, cyclic(6)) is not None


def test_poly_quotient_e1(z4, e1):
    assert e1.order == 16
    validate_ring(e1)
    # Y * Y = 0
    assert e1.mul(4, 4) == 0
    assert e1.label(6) == "2 + Y"


def test_poly_quotient_z2_cubed():
    ring = poly_quotient_xn(cyclic(2), 3, var="Y")
    validate_ring(ring)
    assert ring.order == 8
    # zero divisors are exactly the multiples of Y
    assert zero_divisors(ring).elements == (0, 2, 4, 6)


def test_monomial_quotient_basis_and_order():
    ring = monomial_quotient(6, 2, [[1, 1]], 2, max_order=8192)
    assert ring.aux["basis_monomials"] == [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)]
    assert ring.order == 6**5


def test_monomial_quotient_matches_poly_quotient(z4):
    mono = monomial_quotient(4, 1, [[2]], 1, varnames=["Y"])
    xn = poly_quotient_xn(z4, 2, var="Y")
    assert np.array_equal(mono.add_table, xn.add_table)
    assert np.array_equal(mono.mul_table, xn.mul_table)


def test_monomial_quotient_degree_zero_is_base():
    ring = monomial_quotient(6, 2, [], 0)
    assert ring.order == 6
    assert np.array_equal(ring.mul_table, cyclic(6).mul_table)


def test_monomial_quotient_rejects_bad_relation():
    with pytest.raises(ValueError):
        monomial_quotient(4, 2, [[1]], 1)  # wrong arity
    with pytest.raises(ValueError):
        monomial_quotient(4, 2, [[-1, 0]], 1)


def test_idealization_basics(z4):
    ring = idealization(z4)
    validate_ring(ring)
    assert ring.order == 16
    assert ring.one == 1  # (1, 0)
    # (0,m)(0,m') = (0,0) for all m, m'
    for m in range(4):
        for mp in range(4):
            assert ring.mul(m * 4, mp * 4) == 0
    assert find_isomorphism(ring, poly_quotient_xn(z4, 2)) is not None


def test_idealization_matches_square_zero_quotient_for_small_bases():
    for n in (2, 3, 4):
        base = cyclic(n)
        a = idealization(base)
        b = poly_quotient_xn(base, 2)
        c = monomial_quotient(n, 1, [[2]], 1)
        assert find_isomorphism(a, b) is not None
        assert find_isomorphism(b, c) is not None


def test_group_ring_z4_z2():
    ring = group_ring(cyclic(4), [2])
    validate_ring(ring)
    assert ring.order == 16
    # the group element g is a unit: g * g = 1
    g = 4  # coefficient 1 at the sigma slot
    assert ring.mul(g, g) == ring.one
    assert g in units(ring)


def test_group_ring_z2_z2_zero_divisor():
    ring = group_ring(cyclic(2), [2])
    one_plus_sigma = 3
    assert ring.mul(one_plus_sigma, one_plus_sigma) == 0
    assert one_plus_sigma in zero_divisors(ring)


def test_group_ring_trivial_group(z6):
    same = group_ring(z6, [])
    assert np.array_equal(same.add_table, z6.add_table)
    assert np.array_equal(same.mul_table, z6.mul_table)


def test_group_ring_rejects_bad_moduli(z4):
    with pytest.raises(ValueError):
        group_ring(z4, [0])


def _canonical_map_is_hom(base, loc):
    cm = loc.aux["canonical_map"]
    n = base.order
    phi = cm.astype(np.int64)
    assert np.array_equal(phi[base.add_table], loc.add_table[phi[:, None], phi[None, :]])
    assert np.array_equal(phi[base.mul_table], loc.mul_table[phi[:, None], phi[None, :]])


def test_localization_at_one(z6):
    g = trivial_grading(z6)
    loc = localization(z6, g, [1])
    assert loc.order == 6
    _canonical_map_is_hom(z6, loc)
    assert find_isomorphism(loc, z6) is not None


def test_localization_at_units(z6):
    g = trivial_grading(z6)
    loc = localization(z6, g, units(z6).elements)
    assert loc.order == 6
    _canonical_map_is_hom(z6, loc)


def test_localization_ht_e1(e1, e1_grading):
    # homogeneous regular elements of Z4[Y]/(Y^2) are {1, 3}
    loc = localization(e1, e1_grading, [1, 3])
    assert loc.order == 16
    _canonical_map_is_hom(e1, loc)
    assert find_isomorphism(loc, e1) is not None


def test_localization_kernel(z6):
    g = trivial_grading(z6)
    # S = {1, 3, 3*3=3} -> multiplicatively closed {1, 3}
    loc = localization(z6, g, [1, 3])
    cm = loc.aux["canonical_map"]
    kernel = {a for a in range(6) if cm[a] == loc.zero}
    expected = {a for a in range(6) if any((u * a) % 6 == 0 for u in (1, 3))}
    assert kernel == expected


def test_localization_validates_input(z6):
    g = trivial_grading(z6)
    with pytest.raises(ValueError):
        localization(z6, g, [3])  # misses 1
    with pytest.raises(ValueError):
        localization(z6, g, [1, 2])  # 2*2=4 missing


def test_build_spec_round_trip():
    doc = {"kind": "polyQuotientXn", "base": {"kind": "cyclic", "n": 4}, "n": 2, "var": "Y"}
    ring = build_spec(doc)
    assert ring.order == 16
    with pytest.raises(ValueError):
        build_spec({"kind": "nope"})


def test_build_spec_localization():
    doc = {
        "kind": "localization",
        "base": {"kind": "cyclic", "n": 6},
        "grading": "trivial",
        "s": [1, 5],
    }
    ring = build_spec(doc)
    assert ring.order == 6


def test_every_small_constructor_output_validates(z4, z6):
    rings = [
        cyclic(7),
        direct_product([cyclic(2), cyclic(3), cyclic(2)]),
        poly_quotient_xn(z6, 2),
        monomial_quotient(6, 2, [[1, 1]], 1),
        idealization(z6),
        group_ring(z4, [2]),
    ]
    for ring in rings:
        validate_ring(ring)
