import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaffine.cartan import cartan_from_label
from qaffine.ylattice import (
    ONE,
    APosition,
    Monomial,
    YLatticeError,
    a_monomial,
    a_product,
    bar_monomial,
    cyclic_pair_ok,
    decompose_over_A,
    dual_highest_monomial,
    format_monomial,
    in_C_ell,
    is_dominant,
    is_left_negative,
    is_right_negative,
    leq,
    lt,
    monomial_from_json,
    monomial_to_json,
    parse_monomial,
    pi_twisted,
    sigma_involution,
    tau_shift,
    trunc_parts,
    weight,
    y_of_point,
    zeta_monomial,
)

SL2 = cartan_from_label("A1^1")
TYPES = ["A1^1", "A2^1", "B3^1", "C2^1", "G2^1", "A2^2", "A4^2", "D3^2", "D4^3"]


def Y(*pairs):
    """Y(lam, e, lam, e, ...) on node 1 of sl2."""
    return Monomial(Counter({(1, 0, pairs[k]): pairs[k + 1] for k in range(0, len(pairs), 2)}))


def positions(cd, lo=-3, hi=3):
    """Admissible A-positions with integral lambda in [lo, hi]."""
    out = []
    for i in cd.nodes:
        for kappa in range(cd.twist_order):
            for lam in range(lo, hi + 1):
                p = APosition(i, kappa, lam)
                try:
                    a_monomial(cd, p)
                except YLatticeError:
                    continue
                out.append(p)
    return out


POS = {t: positions(cartan_from_label(t)) for t in TYPES}


def mono_strategy(label, lo=-3, hi=3):
    cd = cartan_from_label(label)
    keys = [(i, k, l) for i in cd.nodes for k in range(cd.twist_order) for l in range(lo, hi + 1)]
    return st.dictionaries(st.sampled_from(keys), st.integers(-2, 2).filter(bool), max_size=4).map(Monomial)


sl2_mono = mono_strategy("A1^1")


# ------------------------------------------------------------ examples

def test_y_of_point_examples():
    assert y_of_point(SL2, 1, (0, 0)) == (1, 0, 0)
    assert y_of_point(cartan_from_label("A2^2"), 1, (0, 1)) == (1, 0, 1)
    d42 = cartan_from_label("D4^2")
    long_node = d42.d.index(2)
    assert y_of_point(d42, long_node, (0, 1)) == (long_node, 0, 2)


def test_dominance_examples():
    assert is_dominant(Y(0, 1, 4, 1))
    assert not is_dominant(Y(0, 1, 2, -1))
    assert is_dominant(ONE)


def test_decompose_examples():
    assert decompose_over_A(SL2, Y(0, -1), Y(-2, 1)) == Counter({APosition(1, 0, -1): 1})
    m = Y(0, 1, 4, 1)
    assert decompose_over_A(SL2, m, m) == Counter()
    assert decompose_over_A(SL2, Y(2, 1), Y(0, 1)) is None
    assert leq(SL2, Y(0, -1), Y(-2, 1))
    assert leq(SL2, m, m) and not lt(SL2, m, m)
    assert not leq(SL2, Y(0, 1), Y(2, 1))


def test_negativity_examples():
    assert is_right_negative(SL2, a_monomial(SL2, APosition(1, 0, 1)).inv())
    assert not is_right_negative(SL2, Y(0, 1))
    m = Y(0, 1, 2, -1)
    assert is_right_negative(SL2, m) and not is_left_negative(SL2, m)
    with pytest.raises(YLatticeError):
        is_right_negative(SL2, ONE)


def test_trunc_examples():
    assert trunc_parts(SL2, Y(0, 1, 4, 1), 3) == (Y(0, 1), ONE, Y(4, 1))
    assert trunc_parts(SL2, Y(3, 1), 3) == (Y(3, 1), Y(3, 1), Y(3, 1))
    assert trunc_parts(SL2, ONE, 3) == (ONE, ONE, ONE)


def test_shift_dual_bar_examples():
    assert tau_shift(SL2, Y(-2, 1), 2) == Y(0, 1)
    assert dual_highest_monomial(SL2, Y(0, 1)) == Y(-2, 1)
    assert dual_highest_monomial(SL2, ONE) == ONE
    assert dual_highest_monomial(SL2, Y(2, 1)) == Y(-4, 1)
    assert bar_monomial(SL2, Y(1, 1), 4) == Y(3, 1)
    with pytest.raises(YLatticeError):
        bar_monomial(SL2, Y(5, 1), 4)
    assert zeta_monomial(SL2, Y(0, 1), 2) == Y(4, -1)


def test_C_ell_and_cyclic_examples():
    assert in_C_ell(SL2, Y(0, 1, 2, 1), 2)
    assert not in_C_ell(SL2, Y(3, 1), 2)
    assert not in_C_ell(SL2, Y(0, -1), 0)
    assert cyclic_pair_ok(SL2, Y(2, 1), Y(0, 1))
    assert cyclic_pair_ok(SL2, Y(0, 1), ONE)
    assert not cyclic_pair_ok(SL2, Y(0, 1), Y(2, 1))


def test_pi_twisted():
    d43 = cartan_from_label("D4^3")
    assert pi_twisted(d43, {(1, 2, (0, 1)): 1}) == Monomial({(1, 2, 1): 1})
    assert pi_twisted(d43, {(2, 0, (0, 1)): 1}) == Monomial({(2, 0, 3): 1})
    with pytest.raises(YLatticeError):
        pi_twisted(SL2, {})


def test_weight_of_a_is_simple_root():
    for label in TYPES:
        cd = cartan_from_label(label)
        for p in POS[label]:
            w = weight(cd, a_monomial(cd, p))
            assert w.coeffs == tuple(cd.C[j][p[0]] for j in cd.nodes), (label, p)


def test_parse_and_format():
    m = parse_monomial("Y[1,0,0]^2 * Y[2,1,3/2]^-1")
    assert m == Monomial({(1, 0, 0): 2, (2, 1, Fraction(3, 2)): -1})
    assert parse_monomial(format_monomial(m)) == m
    assert parse_monomial("Y[1,0,0];Y[1,0,2]") == Y(0, 1, 2, 1)
    assert parse_monomial("1") == ONE and format_monomial(ONE) == "1"
    assert parse_monomial("Y[1,0,4/2]") == Y(2, 1)
    with pytest.raises(YLatticeError):
        parse_monomial("Z[1,0,0]")
    with pytest.raises(YLatticeError):
        monomial_from_json([[1, 0, 1, 0, 1]])


def test_twisted_rejections():
    d43 = cartan_from_label("D4^3")
    long_node = d43.r.index(3)
    for bad in ((long_node, 0, 1), (long_node, 1, 3)):
        with pytest.raises(YLatticeError):
            a_monomial(d43, APosition(*bad))
    with pytest.raises(YLatticeError):
        a_monomial(SL2, APosition(0, 0, 0))


# ------------------------------------------------------------ properties

@pytest.mark.parametrize("label", TYPES)
@given(data=st.data())
def test_decompose_recovers_multiset(label, data):
    cd = cartan_from_label(label)
    S = Counter(data.draw(st.lists(st.sampled_from(POS[label]), max_size=4)))
    mref = data.draw(mono_strategy(label))
    m = mref * a_product(cd, S).inv()
    assert decompose_over_A(cd, m, mref) == S
    assert leq(cd, m, mref)
    if S:
        assert is_right_negative(cd, m * mref.inv())
        assert not leq(cd, mref, m)


@pytest.mark.parametrize("label", ["A1^1", "A2^1", "A2^2"])
def test_decompose_against_enumeration(label):
    """Every ratio within reach of <= 2 A's over a small window is found; nothing else is."""
    cd = cartan_from_label(label)
    pos = positions(cd, -1, 1)
    reachable = {}
    for size in range(3):
        for combo in itertools.combinations_with_replacement(pos, size):
            reachable.setdefault(a_product(cd, Counter(combo)), Counter(combo))
    keys = sorted({k for P in reachable for k in P.keys()}, key=lambda k: (k[0], k[1], Fraction(k[2])))
    mref = Monomial({keys[0]: 1}) if keys else ONE
    found = 0
    for P, S in reachable.items():
        assert decompose_over_A(cd, mref * P.inv(), mref) == S
        found += 1
    # single-variable ratios are never products of A's
    for k in keys:
        for e in (1, -1, 2):
            P = Monomial({k: e})
            assert (decompose_over_A(cd, mref * P.inv(), mref) is None) == (P not in reachable)
    assert found == len(reachable)


@given(sl2_mono, sl2_mono, sl2_mono)
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inv() == ONE
    assert (a * b).inv() == a.inv() * b.inv()
    assert a ** 3 == a * a * a


@given(sl2_mono, sl2_mono)
def test_sigma_is_involutive_morphism(a, b):
    assert sigma_involution(sigma_involution(a)) == a
    assert sigma_involution(a * b) == sigma_involution(a) * sigma_involution(b)


@given(sl2_mono, st.integers(-4, 4), st.integers(-4, 4))
def test_shift_additive(m, s, t):
    assert tau_shift(SL2, tau_shift(SL2, m, s), t) == tau_shift(SL2, m, s + t)


@given(sl2_mono, st.integers(-4, 4))
def test_trunc_parts_recombine(m, L):
    le, eq, ge = trunc_parts(SL2, m, L)
    assert le * ge == m * eq


@given(sl2_mono)
def test_roundtrips(m):
    assert parse_monomial(format_monomial(m)) == m
    assert monomial_from_json(monomial_to_json(m)) == m


@pytest.mark.parametrize("label", ["A1^1", "A3^1", "D5^1", "E6^1", "A2^2", "D4^3"])
def test_dual_is_involutive(label):
    cd = cartan_from_label(label)
    for i in cd.nodes:
        for lam in range(-2, 3):
            m = Monomial({(i, 0, lam * cd.d[i]): 1})
            assert dual_highest_monomial(cd, dual_highest_monomial(cd, m)) == m


@given(st.dictionaries(st.integers(0, 4), st.integers(1, 2), max_size=3))
def test_bar_involution_on_C_ell(pts):
    m = Monomial({(1, 0, x): e for x, e in pts.items()})
    assert in_C_ell(SL2, m, 4)
    assert bar_monomial(SL2, bar_monomial(SL2, m, 4), 4) == m
