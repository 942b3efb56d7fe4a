import pytest

from frobtrace.errors import ValidationError
from frobtrace.qexp import (QSeries, coefficient, eta, f25, hasse_check,
                            hecke_check, qs_add, qs_mul, qs_one, qs_pow,
                            qs_scale, tensor_ap)

F25_COEFFS = {1: 1, 2: 1, 3: 7, 4: -7, 5: 0, 6: 7, 7: 6, 8: -15, 9: 22,
              10: 0, 11: -43, 12: -49, 13: -28, 17: 91, 19: -35, 23: 162,
              29: 160, 31: 42, 37: -314, 41: -203, 43: 92, 47: 196,
              101: 1302, 211: 4307, 421: -3788}


def test_eta_pentagonal_support():
    n = 200
    e = eta(1, n)
    want = {}
    j = 0
    while j * (3 * j + 1) // 2 < n:
        for jj in (j, -j) if j else (0,):
            k = jj * (3 * jj - 1) // 2
            if k < n:
                want[k] = 1 if jj % 2 == 0 else -1
        j += 1
    for k in range(n):
        assert e.coeffs[k] == want.get(k, 0), k


def test_eta_grid():
    assert eta(1, 10).lead_num == 1
    assert eta(5, 10).lead_num == 5
    assert eta(25, 10).lead_num == 25
    with pytest.raises(ValidationError):
        eta(0, 10)


def test_series_arithmetic():
    a = QSeries(0, (1, 2, 3))
    b = QSeries(48, (5,))
    assert qs_add(a, b).coeffs == (1, 2, 8)
    assert qs_scale(a, -2).coeffs == (-2, -4, -6)
    assert qs_mul(eta(1, 5), eta(5, 5)).lead_num == 6
    assert qs_pow(a, 2).coeffs == (1, 4, 10)
    assert qs_one(3).coeffs == (1, 0, 0)
    with pytest.raises(ValidationError):
        qs_pow(a, -1)


def test_incompatible_grids_rejected():
    with pytest.raises(ValidationError):
        qs_add(eta(1, 5), eta(5, 5))
    # 25 = 1 mod 24: same grid, fine
    qs_add(eta(1, 5), eta(25, 5))


def test_coefficient_semantics():
    s = f25(10)
    assert coefficient(s, 1) == 1
    assert coefficient(s, 10) == 0
    assert coefficient(s, 0) == 0           # below the lead: exact zero
    assert coefficient(s, -3) == 0
    assert coefficient(eta(1, 10), 1) == 0  # off the 1/24 grid
    with pytest.raises(ValidationError):
        coefficient(s, 11)                  # past the truncation: loud


def test_f25_coefficients():
    s = f25(430)
    for n, want in F25_COEFFS.items():
        assert coefficient(s, n) == want, n


def test_f25_hecke_and_multiplicativity():
    s = f25(180)
    for p in (2, 3, 7, 11, 13):
        assert hecke_check(s, 4, p), p
    assert coefficient(s, 6) == coefficient(s, 2) * coefficient(s, 3)
    assert coefficient(s, 10) == coefficient(s, 2) * coefficient(s, 5)


def test_f25_hasse():
    s = f25(50)
    res = hasse_check(s, 4, [2, 3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
    assert all(res.values())


def test_eta_combination_tail_coefficients_pinned():
    # rescaling the last two terms of the combination to (1, 5, 20, 1, 1)
    # already breaks the Hecke relation at p = 2, so the stored vector
    # (1, 5, 20, 25, 25) is forced
    n = 10
    e1, e5, e25 = eta(1, n), eta(5, n), eta(25, n)
    terms = None
    for i, c in enumerate((1, 5, 20, 1, 1)):
        t = qs_mul(qs_pow(e1, 4 - i), qs_mul(qs_pow(e5, 4), qs_pow(e25, i)))
        t = qs_scale(t, c)
        terms = t if terms is None else qs_add(terms, t)
    assert not hecke_check(terms, 4, 2)
    assert hecke_check(f25(n), 4, 2)


def test_tensor_ap():
    assert tensor_ap(-43, -3) == 129
    assert tensor_ap(0, 5) == 0
