import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harqcorr.channel import ChannelSpec
from harqcorr.exceptions import DomainError, ResourceError
from harqcorr.negmult import (
    build_table,
    correlation_ratios,
    iter_indices,
    nm_params,
    order_for_deficit,
    weight,
)

# rho = 1/2, delta = 1, K = 2: r = (1/4, 1/16), u = (1/3, 1/15)
HAND = ChannelSpec(0.5, 1.0, (1.0, 1.0))
HAND_W = {
    (0, 0): Fraction(5, 7),
    (1, 0): Fraction(25, 147),
    (0, 1): Fraction(5, 147),
    (2, 0): Fraction(125, 3087),
    (1, 1): Fraction(50, 3087),
    (0, 2): Fraction(5, 3087),
}


def test_hand_parameters():
    w0, w = nm_params(HAND)
    assert w0 == pytest.approx(5 / 7, rel=1e-15)
    assert np.allclose(w, [5 / 21, 1 / 21], rtol=1e-14)
    assert np.allclose(correlation_ratios(HAND), [1 / 3, 1 / 15], rtol=1e-14)


@pytest.mark.parametrize("l,expected", sorted(HAND_W.items()))
def test_hand_weights(l, expected):
    assert weight(HAND, l) == pytest.approx(float(expected), rel=1e-14)


def test_table_matches_hand_values():
    table = build_table(HAND, 2)
    assert table.as_dict() == pytest.approx({k: float(v) for k, v in HAND_W.items()}, rel=1e-14)
    assert table.mass == pytest.approx(float(sum(HAND_W.values())), rel=1e-15)


def test_rho_zero_single_term():
    table = build_table(ChannelSpec.uniform(4, 0.0), 3)
    assert table.indices == ((0, 0, 0, 0),)
    assert table.weights[0] == 1.0 and table.mass == 1.0 and table.deficit == 0.0


def test_deficit_is_geometric_tail():
    # sum(l) is geometric with success probability W0
    spec = ChannelSpec.uniform(3, 0.7)
    w0, _ = nm_params(spec)
    for N in range(6):
        assert build_table(spec, N).deficit == pytest.approx((1 - w0) ** (N + 1), rel=1e-10)


def test_extended_summation():
    spec = ChannelSpec.uniform(2, 0.6)
    w0, _ = nm_params(spec)
    big = build_table(spec, 50)
    assert big.mass == pytest.approx(1 - (1 - w0) ** 51, abs=1e-14)
    masses = [build_table(spec, N).mass for N in range(10)]
    assert all(b >= a for a, b in zip(masses, masses[1:]))
    assert masses[-1] <= 1.0


def test_index_enumeration():
    for K, N in ((1, 4), (3, 3), (4, 5)):
        idx = list(iter_indices(K, N))
        assert len(idx) == math.comb(N + K, K) == len(set(idx))
        totals = [sum(l) for l in idx]
        assert totals == sorted(totals) and max(totals) == N


def test_weight_validation():
    with pytest.raises(DomainError):
        weight(HAND, (1,))
    with pytest.raises(DomainError):
        weight(HAND, (-1, 0))


def test_delta_zero_is_degenerate():
    with pytest.raises(DomainError):
        ChannelSpec.uniform(2, 0.5, delta=0.0)
    assert build_table(ChannelSpec.uniform(2, 0.0, delta=0.0), 3).mass == 1.0


def test_table_size_guard():
    with pytest.raises(ResourceError):
        build_table(ChannelSpec.uniform(8, 0.9), 40, max_entries=1000)


def test_order_for_deficit():
    spec = ChannelSpec.uniform(2, 0.9)
    N = order_for_deficit(spec, 1e-6)
    assert build_table(spec, N).deficit <= 1e-6 < build_table(spec, N - 1).deficit


@settings(max_examples=40, deadline=None)
@given(rho=st.floats(0.01, 0.95), K=st.integers(1, 4), delta=st.floats(0.05, 3.0))
def test_table_mass_consistent(rho, K, delta):
    spec = ChannelSpec.uniform(K, rho, delta)
    w0, w = nm_params(spec)
    assert w0 + w.sum() == pytest.approx(1.0, rel=1e-12)
    t = build_table(spec, 3)
    assert 0 < t.mass <= 1.0 + 1e-15
    assert math.fsum(t.weights) == pytest.approx(t.mass, rel=1e-14)
