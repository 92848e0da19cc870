import pytest

import tandemwalks.closed_forms as cf
from tandemwalks.oracle import count_walks
from tandemwalks.steps import WeightSpec


def test_tutte_and_baxter():
    assert [cf.tutte_a(k) for k in range(4)] == [1, 1, 5, 42]
    assert [cf.baxter_b(n) for n in (1, 2, 3)] == [1, 2, 6]
    assert cf.baxter_recurrence(12) == [cf.baxter_b(n) for n in range(1, 13)]


def test_ratio_sequence_tracks_integers():
    for n, r in cf.baxter_ratio_sequence(30):
        assert r == pytest.approx(cf.baxter_b(n) / 8 ** n, rel=1e-12)


def test_dangulations():
    assert cf.dangulation_sequence(1, 5) == [cf.tutte_a(k) for k in range(6)]
    assert cf.dangulation_sequence(2, 2)[:3] == [1, 0, 1]
    seq3 = cf.dangulation_sequence(3, 3)
    spec = WeightSpec(3, (0, 0, 0, 1))
    assert seq3 == [count_walks(spec, (0, 0), (0, 0), 5 * k) for k in range(4)]
    with pytest.raises(ValueError):
        cf.dangulation_sequence(4, 3)


def test_binom_convention():
    assert cf.binom(-1, 0) == 0 and cf.binom(3, 4) == 0 and cf.binom(3, -1) == 0 and cf.binom(5, 2) == 10


def test_lgv():
    assert cf.lgv_qnk(4, 2, 0, 0, 0, 0) == 1
    assert sum(cf.lgv_qnk(4, k, 0, 0, 0, 0) for k in range(5)) == 6
    assert cf.lgv_qnk(4, 0, 0, 0, 0, 0) == 0
    for n in range(2, 8):
        for k in range(n + 1):
            assert cf.lgv_qnk(n, k, 0, 0, 0, 0) == cf.baxter_summand(n, k)


def test_lgv_marginals_match_oracle():
    # the determinant gives 0 at k = 0, so the all-SE walk (possible only when b = c = n) is added back
    for n in range(1, 6):
        for b in range(3):
            for c in range(3):
                tot = sum(cf.lgv_qnk(n, k, 0, b, c, 0) for k in range(n + 1))
                all_se = int(b == c == n)
                assert tot + all_se == count_walks(WeightSpec(n + b + c), (0, b), (c, 0), n)


def test_marked_tilde():
    for n in range(1, 7):
        for k in range(1, n + 1):
            assert cf.marked_qnk_tilde(n, k, 0, 1, 2, 0) == cf.lgv_qnk(n, k, 0, 1, 2, 0)
            assert cf.marked_qnk_tilde(n, k, 1, 0, 2, 2) == cf.marked_qnk_tilde(n, k, 2, 0, 2, 1)


def test_p1_endpoint():
    assert cf.exact_p1_endpoint(0, 0, 0) == 1
    assert cf.exact_p1_endpoint(3, 0, 0) == 1
    assert cf.exact_p1_endpoint(1, 0, 1) == 1
