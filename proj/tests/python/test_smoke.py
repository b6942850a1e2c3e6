import cmath
import math

import pytest

import fiveprime as fp


def test_word_baab_is_two_sevenths_four_sevenths():
    pair = fp.apply_word("BA^2B")
    assert pair.kappa == ("2", "7")
    assert pair.lam == ("4", "7")


def test_malformed_word_raises():
    with pytest.raises(ValueError):
        fp.apply_word("BXA")


def test_sieve_small_range():
    t = fp.sieve(100.0, 0.1, 1.03, 1.01)
    assert list(t.primes)[:4] == [11, 13, 17, 19]
    assert len(t) == 21
    assert t.chebyshev_weight() == pytest.approx(sum(math.log(p) for p in t.primes), rel=1e-14)


def test_eval_s_at_origin_is_chebyshev_weight():
    t = fp.sieve(1000.0, 0.1, 1.03, 1.01)
    s = fp.eval_S(t, 1.03, 1.01, 0.0, 0.0)
    assert s.imag == 0.0
    assert s.real == pytest.approx(t.chebyshev_weight(), rel=1e-15)


def test_eval_s_matches_direct_sum():
    t = fp.sieve(500.0, 0.1, 1.03, 1.01)
    x, y = 0.0123, -0.0071
    direct = sum(math.log(p) * cmath.exp(2j * math.pi * (p**1.03 * x + p**1.01 * y)) for p in t.primes)
    assert abs(fp.eval_S(t, 1.03, 1.01, x, y) - direct) < 1e-9


def test_kernel_is_self_dual():
    assert abs(fp.kernel_transform(0.5) - math.exp(-math.pi * 0.25)) < 1e-8


def test_hb_identity_small_range():
    assert fp.hb_verify_range(2, 2000) <= 1e-9


def test_thresholds_hold():
    th = fp.thresholds(1e6, 1e6**0.9)
    assert fp.check_thresholds(th) == (True, True)


def test_mitm_matches_exhaustive():
    t = fp.sieve(120.0, 0.1, 1.03, 1.01)
    p = fp.experiment_params(1.03, 1.01, 120.0, 1.02, 0.1, 3.0, 3.0, 3.0)
    a = fp.count(t, p, 3.0, 3.0, method="mitm")
    b = fp.count(t, p, 3.0, 3.0, method="exhaustive")
    assert a.raw_count == b.raw_count
    assert a.weighted_count == b.weighted_count


def test_region_labels():
    p = fp.SystemParams()
    p.log_power = 0
    p.N1 = 1e6
    p.N2 = 1.01 * p.N1 ** (1.01 / 1.03)
    p.alpha, p.beta = 1.005, 1.03
    s = fp.derive_scales(p)
    assert fp.classify_region(s, 0.0, 0.0) == "Omega1"
    assert fp.classify_region(s, 2 * s.K1, 0.0) == "Omega3"


def test_acceptance_criterion_one():
    passed, line = fp.run_criterion(1)
    assert passed, line
