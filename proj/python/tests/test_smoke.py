import pytest

import morava_rings as mr


def test_group_orders():
    assert mr.gl_order(3, 4) == 181440
    assert mr.vp_gl_order(3, 4, 3) == 4
    d = mr.sylow_gl_descriptor(2, 4, 3)
    assert d["text"] == "C3^2"
    assert d["log_order"] == 2


def test_counts():
    P = mr.CountParams(3, 1, 4)
    assert P.v == 1
    assert [P.rep_count(d) for d in (1, 2, 3)] == [3, 6, 12]
    assert P.rep_count_bruteforce(3, 2) == 12
    assert P.hkr_rank_crosscheck(3)["rank"] == 12


def test_algebra():
    C = mr.GLpChain(3, 1, 4)
    A = C.algebra()
    assert A.rank == 12
    rep = A.k_reduce()
    assert rep["first_vanishing"] == 5
    c = A.unit(A.cp_index)
    assert all(x % 3 == 0 for x in A.pow(c, 5))
    assert any(x % 3 for x in A.pow(c, 4))
    j = A.to_json(False)
    assert j["rank"] == 12


def test_errors():
    with pytest.raises(mr.InputError):
        mr.CountParams(3, 1, 5)
    with pytest.raises(mr.MoravaError):
        mr.gl_order(2, 6)


def test_acceptance_subset():
    rs = mr.run_acceptance([2, 4])
    assert [r["id"] for r in rs] == [2, 4]
    assert all(r["pass"] for r in rs)
