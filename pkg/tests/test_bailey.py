import pytest

from rqseries import bailey as bl
from rqseries.fps import INFINITY, SeriesError, TruncatedSeries, qp

ORDER = 120


@pytest.mark.parametrize("pid", bl.PAIR_IDS)
def test_pair_relation(pid):
    checks = bl.verify_pair_relation(bl.pair(pid), 8, ORDER)
    assert all(c.equal for c in checks), [c for c in checks if not c.equal]


def test_new_pair_examples():
    p = bl.pair("NEW_A1")
    assert p.beta_at(0, 10).is_zero()
    # b_1 = (-1)^1 (q;q^2)_0 / (q)_1
    assert p.beta_at(1, 10).coeffs == [-1] * 11
    assert p.alpha_at(2, 10).coeffs == [2, 0, 0, 0, -2] + [0] * 6
    q = bl.pair("NEW_AQ")
    assert q.a == qp(1)
    assert q.beta_at(0, 10).coeffs == [1] * 11


@pytest.mark.parametrize("pid", ["NEW_A1", "NEW_AQ", "LEMMA12"])
def test_inversion_round_trip(pid):
    p = bl.pair(pid)
    alphas = bl.bailey_invert(p.beta_at, p.a, 6, ORDER, p.base)
    for n in range(7):
        assert alphas[n] == p.alpha_at(n, ORDER)


def test_corrupted_pair_is_caught():
    bad = bl.corrupted(bl.pair("NEW_A1"), 1)
    checks = bl.verify_pair_relation(bad, 4, 40)
    first = next(c for c in checks if not c.equal)
    assert (first.n, first.first_mismatch) == (1, 1)


def test_u_sequence():
    for n in range(12):
        assert bl.u_sequence(n, 150) == bl.u_closed(n, 150)
    for n in range(10):
        lhs = bl.u_closed(n + 2, 150)
        rhs = bl.u_closed(n, 150).shift(2 * n) + TruncatedSeries.monomial(0, 150, 2 * (-1) ** n)
        assert lhs == rhs


@pytest.mark.parametrize(
    "abc", [(qp(2), qp(1), qp(4)), (qp(1, -1), qp(1), qp(3, -1)), (qp(0, -1), qp(1), qp(2))]
)
def test_heine(abc):
    lhs, rhs = bl.heine_check(*abc, 100)
    assert lhs == rhs


def test_heine_divergent():
    # c/ab = q^0 does not converge q-adically
    with pytest.raises(bl.DivergentSpecialization):
        bl.heine_check(qp(1), qp(1), qp(2), 50)
    with pytest.raises(bl.DivergentSpecialization):
        bl.heine_check(qp(1), qp(1), qp(0), 50)


@pytest.mark.parametrize("key", sorted(bl.LEMMA_SPECS))
def test_lemma_sides_agree(key):
    alpha_side, beta_side = bl.LEMMA_SPECS[key].sides(150)
    assert alpha_side == beta_side


def test_rho2_limit_needs_vanishing_first_terms():
    with pytest.raises(SeriesError, match="illegal"):
        bl.bailey_lemma_rho2_to_one(bl.pair("NEW_AQ"), INFINITY, 40)


def test_unknown_pair():
    with pytest.raises(KeyError):
        bl.pair("NOPE")
