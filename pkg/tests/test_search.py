import pytest

from ghcsearch.conditions import TripleParams, check_numeric
from ghcsearch.multidegree import MultiDegree
from ghcsearch.search import (
    SearchConfig,
    Status,
    candidate_bs,
    enumerate_a,
    enumerate_subsequences_with_max,
    numlin_goal_witnesses,
    search_b,
    search_pairs_numlin,
    trial_seed,
    verify_triple,
)

M = MultiDegree.parse


def test_verified_triple():
    rep = verify_triple(10, M("(2^2,3)"), M("(1^7,2)"), SearchConfig(trials_per_prime=3))
    assert rep.status is Status.VERIFIED
    assert rep.target == 5 and rep.achieved == 5
    assert rep.trials[-1].dim == 5


def test_numeric_fail_has_no_trials():
    rep = verify_triple(4, M("(3)"), M("(1,1)"))
    assert rep.status is Status.NUMERIC_FAIL
    assert rep.trials == () and rep.achieved is None


def test_zero_trials_is_inconclusive():
    rep = verify_triple(4, M("(3)"), M("(1^3)"), SearchConfig(trials_per_prime=0))
    assert rep.status is Status.INCONCLUSIVE and rep.trials == ()


def test_inconclusive_when_target_never_reached():
    cfg = SearchConfig(primes=(101, 103), trials_per_prime=2)
    rep = verify_triple(4, M("(3)"), M("(1^2,3)"), cfg)
    assert rep.status is Status.INCONCLUSIVE
    assert len(rep.trials) == 4
    assert all(t.dim > rep.target for t in rep.trials)
    assert {t.prime for t in rep.trials} == {101, 103}


def test_verification_is_deterministic():
    cfg = SearchConfig(trials_per_prime=2, base_seed=7)
    r1 = verify_triple(5, M("(2^2)"), M("(1^4)"), cfg)
    r2 = verify_triple(5, M("(2^2)"), M("(1^4)"), cfg)
    assert r1.to_record() == r2.to_record()


def test_trial_seed_pinned():
    assert trial_seed(0, 4, (3,), (1, 1, 1), 101, 0) == trial_seed(0, 4, M("(3)"), M("(1^3)"), 101, 0)
    assert trial_seed(0, 4, (3,), (1, 1, 1), 101, 0) != trial_seed(1, 4, (3,), (1, 1, 1), 101, 0)
    assert trial_seed(0, 4, (3,), (1, 1, 1), 101, 0) == 4560629994115989360


def test_to_record_fields():
    rec = verify_triple(4, M("(3)"), M("(1^3)")).to_record()
    assert set(rec) == {"n", "a", "b", "num1_ok", "num2_ok", "target", "trials", "achieved", "status"}
    assert rec["b"] == "(1^3)" and rec["status"] == "Verified"


@pytest.mark.parametrize("primes", [(100,), (4,), (65537,), ()])
def test_config_rejects_bad_primes(primes):
    with pytest.raises(ValueError):
        SearchConfig(primes=primes)


def test_config_rejects_negative_trials():
    with pytest.raises(ValueError):
        SearchConfig(trials_per_prime=-1)


def test_candidates_pass_numeric_and_have_length_n_minus_k():
    cands = list(candidate_bs(10, M("(2^2,3)")))
    assert cands == sorted(cands)
    assert M("(1^7,2)") in cands
    for b in cands:
        assert len(b) == 8
        assert check_numeric(TripleParams(10, M("(2^2,3)"), b)).ok


def test_search_b_cubic_threefold_all():
    found = search_b(4, M("(3)"), SearchConfig(trials_per_prime=2))
    bs = {str(rep.b) for rep in found}
    assert {"(1^3)", "(1^2,2)", "(1,2^2)", "(2^3)"} <= bs
    assert all(rep.achieved == 2 for rep in found)


def test_search_b_first_stops_early():
    found = search_b(10, M("(2^2,3)"), SearchConfig(trials_per_prime=2), first=True)
    assert len(found) == 1 and found[0].status is Status.VERIFIED


def test_search_b_precondition():
    with pytest.raises(ValueError, match="2k"):
        search_b(4, M("(2)"))


def test_enumerate_a_small():
    assert [str(a) for a in enumerate_a(4)] == ["(2)", "(2^2)", "(3)", "(4)"]
    assert [str(a) for a in enumerate_a(5)] == ["(2)", "(2^2)", "(2,3)", "(3)", "(4)", "(5)"]
    assert len(enumerate_a(6)) == 10


def test_enumerate_a_rejects_small_n():
    with pytest.raises(ValueError):
        enumerate_a(3)


def test_subsequences_with_max():
    subs = enumerate_subsequences_with_max(M("(2^2,3)"))
    assert [(str(s), str(r)) for s, r in subs] == [
        ("(3)", "(2^2)"),
        ("(2,3)", "(2)"),
        ("(2^2,3)", "()"),
    ]
    assert [str(s) for s, _ in enumerate_subsequences_with_max(M("(3^2)"))] == ["(3)", "(3^2)"]


def test_numlin_goal_witnesses():
    [w] = numlin_goal_witnesses(6, M("(3)"))
    assert (str(w.a_prime), str(w.a_double_prime), w.lam, str(w.b)) == ("(3)", "()", 2, "(1^4)")
    ws = numlin_goal_witnesses(8, M("(2,3)"))
    assert [(str(w.a_prime), w.lam, str(w.b)) for w in ws] == [("(2,3)", 2, "(1^6)")]
    assert numlin_goal_witnesses(10, M("(2^2,3)")) == []


def test_search_pairs_small():
    assert search_pairs_numlin(5) == {}
    assert search_pairs_numlin(6) == {6: [M("(3)")]}
