import itertools
import math

import pytest

from nuceft.errors import DomainError, UnreachableBudgetError
from nuceft.models import OpeParams
from nuceft.truncation import (ShellTable, boson_cutoffs, choose_ope_cutoff,
                               ope_cutoff_error, pi_max_bound, realized_shells,
                               shell_count)


def brute_force_shell(r_sq, reach):
    count = 0
    for i, j, k in itertools.product(range(-reach, reach + 1), repeat=3):
        if i * i + j * j + k * k == r_sq:
            count += 1
    return count


def test_shell_count_against_brute_force():
    reach = 21
    for r_sq in range(0, 401):
        assert shell_count(r_sq) == brute_force_shell(r_sq, reach), r_sq


def test_shell_count_known_values():
    # 0, 1, 2, 3, ... realized distances; 7 is not a sum of three squares
    assert [shell_count(k) for k in range(8)] == [1, 6, 12, 8, 6, 24, 24, 0]


def test_shell_table_cumulative():
    # all sites of the closed ball of radius 10: (2*10+1)^3 minus corners
    table = ShellTable(100)
    assert table.cumulative() == sum(
        1 for i, j, k in itertools.product(range(-10, 11), repeat=3)
        if i * i + j * j + k * k <= 100)
    assert table.cumulative() == 4169


def test_realized_shells():
    shells = realized_shells(4.4, 2.2)
    assert [q for _, q in shells] == [6, 12, 8, 6]
    assert shells[0][0] == pytest.approx(2.2)
    assert shells[-1][0] == pytest.approx(4.4)
    assert realized_shells(1.0, 2.2) == []


def test_cutoff_error_rate_decreases_with_range():
    rates = [ope_cutoff_error(k * 2.2, 40, 2.2) for k in range(1, 30)]
    assert all(a > b for a, b in zip(rates, rates[1:]))
    assert ope_cutoff_error(22.0, 40, 2.2) == pytest.approx(
        0.01577059043252916)
    assert ope_cutoff_error(4.4, 40, 2.2) == pytest.approx(14464.373516179827)


def test_cutoff_error_edge_cases():
    assert ope_cutoff_error(4.4, 0, 2.2) == 0.0
    with pytest.raises(DomainError):
        ope_cutoff_error(1.0, 40, 2.2)
    with pytest.raises(DomainError):
        ope_cutoff_error(4.4, -1, 2.2)


def test_choose_cutoff_budget_and_tightness():
    t = 0.7635238930596975
    # 50-point budget grid spanning loose to tight
    for i in range(50):
        eps = 10.0 ** (2 - 0.12 * i)
        k = choose_ope_cutoff(eps, t, 40, 2.2)
        assert t * ope_cutoff_error(k * 2.2, 40, 2.2) <= eps
        if k > 1:
            assert t * ope_cutoff_error((k - 1) * 2.2, 40, 2.2) > eps


def test_choose_cutoff_reference_point():
    assert choose_ope_cutoff(0.1 / 6, 0.7635238930596975, 40, 2.2) == 10


def test_choose_cutoff_unreachable():
    with pytest.raises(UnreachableBudgetError):
        choose_ope_cutoff(1e-30, 1.0, 40, 2.2, max_multiple=5)


def test_pi_max_bounds_positive_and_monotone():
    lecs = OpeParams.from_lecs(2.2, 2.2)
    pi1, Pi1 = pi_max_bound(40, 400.0, 1e-3, 2.2, 10, lecs.C, lecs.C_I2)
    pi2, Pi2 = pi_max_bound(40, 400.0, 1e-4, 2.2, 10, lecs.C, lecs.C_I2)
    assert 0 < pi1 < pi2
    assert 0 < Pi1 < Pi2
    with pytest.raises(DomainError):
        pi_max_bound(40, 400.0, 1e-3, 0.3, 10, lecs.C, lecs.C_I2)


def test_boson_cutoffs_reference_register_width():
    lecs = OpeParams.from_lecs(2.2, 2.2)
    eps_cut = (0.05 / 2) ** 2 / 2
    dig = boson_cutoffs(40, 400.0, eps_cut, 2.2, 10, lecs.C, lecs.C_I2)
    assert dig.n_b == 39
    assert 31 <= dig.n_b <= 39
    # momentum cutoff absorbs the rounding: Pi_max >= its lower bound
    _, Pi0 = pi_max_bound(40, 400.0, eps_cut, 2.2, 10, lecs.C, lecs.C_I2)
    assert dig.Pi_max >= Pi0
    assert dig.delta_pi == pytest.approx(2 * dig.pi_max / (2 ** 39 - 1))


def test_boson_cutoffs_grow_with_budget_tightening():
    lecs = OpeParams.from_lecs(2.2, 2.2)
    widths = [boson_cutoffs(40, 400.0, eps, 2.2, 10, lecs.C, lecs.C_I2).n_b
              for eps in (1e-2, 1e-4, 1e-8)]
    assert widths == sorted(widths)
