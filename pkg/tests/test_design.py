import math
import warnings

import numpy as np
import pytest

from harqcorr.channel import ChannelSpec, PowerProfile
from harqcorr.design import (
    AsymptoticRegimeWarning,
    DesignTarget,
    allocate_equal_powers,
    max_rate,
    required_power_product,
    verify_design,
)
from harqcorr.exceptions import DomainError, InfeasibleTargetError
from harqcorr.outage import OutageQuery, outage_asymptotic


def p_asy(spec, power, R):
    return outage_asymptotic(OutageQuery(spec, power, R, method="asymptotic")).p


@pytest.fixture(autouse=True)
def quiet_regime_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AsymptoticRegimeWarning)
        yield


def test_target_validation():
    spec = ChannelSpec.uniform(2, 0.5)
    with pytest.raises(DomainError):
        DesignTarget(0.0, spec, rate=1.0)
    with pytest.raises(DomainError):
        DesignTarget(1.0, spec, rate=1.0)
    with pytest.raises(DomainError):
        required_power_product(DesignTarget(0.1, spec))


def test_power_product_k1_closed_form():
    t = DesignTarget(1e-3, ChannelSpec.uniform(1, 0.4), rate=3.0)
    assert required_power_product(t) == pytest.approx(7.0 / 1e-3, rel=1e-14)


def test_power_product_inverse_in_epsilon():
    spec = ChannelSpec.uniform(3, 0.6)
    a = required_power_product(DesignTarget(1e-4, spec, rate=2.0))
    b = required_power_product(DesignTarget(5e-5, spec, rate=2.0))
    assert b == pytest.approx(2 * a, rel=1e-14)


@pytest.mark.parametrize("K,rho,eps,R", [(1, 0.0, 1e-3, 1.0), (2, 0.5, 1e-6, 2.0), (4, 0.9, 1e-8, 3.0), (6, 0.3, 1e-5, 0.5)])
def test_power_round_trip(K, rho, eps, R):
    spec = ChannelSpec.uniform(K, rho)
    power = allocate_equal_powers(required_power_product(DesignTarget(eps, spec, rate=R)), K)
    assert p_asy(spec, power, R) == pytest.approx(eps, rel=1e-12)


def test_low_power_design_warns():
    with pytest.warns(AsymptoticRegimeWarning):
        warnings.simplefilter("always", AsymptoticRegimeWarning)
        required_power_product(DesignTarget(0.1, ChannelSpec.uniform(2, 0.0), rate=1.0))


def test_equal_split():
    assert allocate_equal_powers(10_000.0, 4).powers == pytest.approx((10.0,) * 4, rel=1e-15)
    assert allocate_equal_powers(7.0, 1).powers == (7.0,)
    with pytest.raises(DomainError):
        allocate_equal_powers(0.0, 2)


def test_equal_split_beats_random_splits():
    # AM-GM: among splits with the same product the equal one has least total power
    rng = np.random.default_rng(12)
    for _ in range(1000):
        K = int(rng.integers(2, 7))
        prod = float(10 ** rng.uniform(0, 12))
        logs = rng.normal(size=K)
        logs += (math.log(prod) - logs.sum()) / K
        assert sum(allocate_equal_powers(prod, K).powers) <= np.exp(logs).sum() * (1 + 1e-12)


def test_max_rate_k1_closed_form():
    spec = ChannelSpec.uniform(1, 0.0)
    assert max_rate(PowerProfile((100.0,)), spec, 0.02) == pytest.approx(math.log2(3.0), rel=1e-12)


@pytest.mark.parametrize("K", range(1, 7))
def test_newton_matches_bisection_and_residual(K):
    spec = ChannelSpec.uniform(K, 0.7)
    budget = PowerProfile.from_db(K, 25.0)
    eps = 1e-4
    rn = max_rate(budget, spec, eps)
    rb = max_rate(budget, spec, eps, method="bisect")
    assert rn == pytest.approx(rb, abs=1e-9)
    assert abs(p_asy(spec, budget, rn) - eps) < 1e-10 * eps


def test_max_rate_monotone():
    eps = 1e-4
    by_power = [max_rate(PowerProfile.from_db(3, d), ChannelSpec.uniform(3, 0.5), eps) for d in (20, 25, 30, 35)]
    assert all(b > a for a, b in zip(by_power, by_power[1:]))
    by_rho = [max_rate(PowerProfile.from_db(3, 25), ChannelSpec.uniform(3, r), eps) for r in np.linspace(0, 0.9, 10)]
    assert all(b <= a for a, b in zip(by_rho, by_rho[1:]))


def test_max_rate_errors():
    spec = ChannelSpec.uniform(1, 0.0)
    with pytest.raises(InfeasibleTargetError):
        max_rate(PowerProfile((1e300,)), spec, 0.5)
    with pytest.raises(DomainError):
        max_rate(PowerProfile((1.0, 1.0)), spec, 0.5)
    with pytest.raises(ValueError):
        max_rate(PowerProfile((10.0,)), spec, 0.5, method="secant")


def test_verify_design_reports_exact_outage():
    spec = ChannelSpec.uniform(2, 0.5)
    power = allocate_equal_powers(required_power_product(DesignTarget(1e-5, spec, rate=2.0)), 2)
    res = verify_design(spec, power, 2.0)
    assert res.method == "exact" and res.p == pytest.approx(1e-5, rel=0.05)
