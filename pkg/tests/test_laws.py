import pytest

from cyclonorm.laws import (
    FamilyWitness,
    check_base_scaling,
    check_doubling_representability,
    check_doubling_subclaim,
    check_norm_form_doubling,
    check_scaling_representability,
    check_theorem_family,
    doubling_modulus,
    run_law,
    theorem_family,
    verify_small_witnesses,
)
from cyclonorm.msets import MSetSpec, is_member, is_sum_of_two_squares
from cyclonorm.represent import ReprQuery, is_representable
from oracles import brute_member, two_squares_scan

N3, N4 = MSetSpec.nk(3), MSetSpec.nk(4)
M3, M5, M7 = MSetSpec.mp(3), MSetSpec.mp(5), MSetSpec.mp(7)


def test_doubling_modulus():
    assert doubling_modulus(3) == 196
    assert doubling_modulus(4) == 8 * 225


def test_base_scaling_n3():
    rep = check_base_scaling(N3, 1, 10**4, 3)
    assert rep.passed and not rep.vacuous
    assert rep.law == "L3"


def test_base_scaling_m3_point_three_is_vacuous():
    rep = check_base_scaling(M3, 3, 3, 2)
    assert rep.vacuous and rep.passed


def test_base_scaling_m3_point_two():
    rep = check_base_scaling(M3, 2, 2, 2)
    assert rep.instances == 1 and rep.passed
    for v in (2, 6, 18):
        assert not brute_member("Mp", 3, v)


def test_base_scaling_m5_one_is_vacuous():
    rep = check_base_scaling(M5, 1, 1, 5)
    assert rep.vacuous and rep.law == "L5"


def test_base_scaling_rejects_a_max():
    with pytest.raises(ValueError):
        check_base_scaling(N3, 1, 10, 0)


def test_doubling_k3_vacuous():
    rep = check_doubling_representability(3, 1, 10**5)
    assert rep.vacuous and rep.passed


def test_doubling_196_has_witness():
    assert is_representable(ReprQuery(196, N3, 3, 2)).member == 196
    assert check_doubling_representability(3, 196, 196).vacuous


def test_doubling_k4_vacuous():
    rep = check_doubling_representability(4, 1, 10**5)
    assert rep.vacuous and rep.passed and rep.law == "L4"


def test_doubling_needs_k3():
    with pytest.raises(ValueError):
        check_doubling_representability(2, 1, 10)


def test_doubling_detects_counterexample(monkeypatch):
    # Pretend 196 is non-representable; its double 392 = 392 (member?) decides the verdict.
    import cyclonorm.laws as laws
    from cyclonorm.represent import SearchReport

    def fake(spec, base, t, lo, hi):
        return SearchReport(spec, base, t, lo, hi, [196])

    monkeypatch.setattr(laws, "find_nonrepresentable", fake)
    rep = laws.check_doubling_representability(3, 1, 1000)
    assert rep.instances == 1
    assert not rep.passed
    assert rep.counterexamples[0]["scaled"] == 392


@pytest.mark.parametrize("k,step", [(3, 49), (4, 225), (5, 961)])
def test_subclaim(k, step):
    rep = check_doubling_subclaim(k, 1, 10**5)
    assert rep.passed and not rep.vacuous
    assert rep.instances == 10**5 // step


def test_subclaim_single_point():
    rep = check_doubling_subclaim(3, 49, 49)
    assert rep.instances == 1 and rep.passed
    assert not two_squares_scan(91) and not is_sum_of_two_squares(91)
    assert not is_member(N3, 91)


def test_scaling_representability_p3():
    rep = check_scaling_representability(3, 1, 2000)
    assert rep.passed and 11 in rep.sample
    for v in (33, 32, 30, 24, 6):  # 33 minus nothing, 1, 3, 9, 27
        assert not brute_member("Mp", 3, v)


def test_scaling_representability_p5():
    rep = check_scaling_representability(5, 1, 500)
    assert rep.passed and 9 in rep.sample
    assert is_representable(ReprQuery(45, M5, 3)) is None


def test_scaling_representability_p7():
    rep = check_scaling_representability(7, 20, 20)
    assert rep.instances == 1 and rep.passed
    assert is_representable(ReprQuery(140, M7, 5)) is None


def test_small_witnesses():
    rep = verify_small_witnesses()
    assert rep.passed and rep.instances == 3 and rep.sample == [11, 9, 20]


def test_norm_form_doubling():
    rep = check_norm_form_doubling(1, 250, 3)
    assert rep.passed and not rep.vacuous
    assert 3 in rep.sample


@pytest.mark.parametrize("p,count,ns", [(3, 1, [11]), (3, 3, [11, 23, 35]), (5, 1, [9]), (7, 1, [20])])
def test_theorem_family_examples(p, count, ns):
    fam = theorem_family(p, count)
    assert [w.n for w in fam] == ns
    assert all(w.verified for w in fam)


def test_theorem_family_first_pairs():
    assert theorem_family(3, 1)[0] == FamilyWitness(3, 2, 5, 11, True)
    assert theorem_family(5, 1)[0] == FamilyWitness(5, 2, 3, 9, True)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_theorem_family_invariants(p):
    spec = MSetSpec.mp(p)
    fam = theorem_family(p, 30)
    ns = [w.n for w in fam]
    assert ns == sorted(ns) and len(set(ns)) == len(ns)
    for w in fam:
        prod = w.q1 * w.q2
        assert w.q1 < w.q2
        assert w.q1 % p not in (0, 1) and w.q2 % p not in (0, 1)
        assert prod % p == 1 and w.n == prod + p - 2
        assert w.n % p == p - 1
        assert not is_member(spec, prod)
        assert w.verified


def test_theorem_family_is_exactly_smallest():
    # Independent scan: every n = q1*q2 + 1 with q1 < q2 primes = 2 mod 3.
    from oracles import trial_is_prime

    ps = [q for q in range(2, 400) if trial_is_prime(q) and q % 3 == 2]
    prods = sorted(a * b for i, a in enumerate(ps) for b in ps[i + 1:] if a * b % 3 == 1)
    assert [w.n for w in theorem_family(3, 20)] == [x + 1 for x in prods[:20]]


def test_repeated_prime_breaks_construction():
    # q1 = q2 = 2 gives 4, a member of M3, and 5 = 4 + 1 is representable.
    assert is_member(M3, 4)
    assert is_representable(ReprQuery(5, M3, 1)) is not None


def test_theorem_family_verify_bound():
    fam = theorem_family(3, 5, verify_bound=20)
    assert [w.verified for w in fam] == [True, None, None, None, None]


def test_theorem_family_rejects():
    with pytest.raises(ValueError):
        theorem_family(4, 1)
    with pytest.raises(ValueError):
        theorem_family(3, 0)


def test_check_theorem_family():
    rep = check_theorem_family(7, 10)
    assert rep.passed and rep.instances == 10 and rep.law == "THM"


@pytest.mark.parametrize("law", ["l1", "l2", "l3", "l4", "l5", "l6", "l7", "thm"])
def test_run_law_defaults(law):
    reports = run_law(law, hi=2000 if law not in ("l1",) else None)
    assert reports and all(r.passed for r in reports)


def test_run_law_rejects():
    with pytest.raises(ValueError):
        run_law("l9")
    with pytest.raises(ValueError):
        run_law("l3", spec=M3)


def test_report_dict_keys():
    d = verify_small_witnesses().to_dict()
    assert set(d) == {"law", "params", "lo", "hi", "instances", "vacuous", "passed",
                      "counterexamples", "sample"}
