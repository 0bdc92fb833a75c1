import pytest

import piclat


def test_pi1():
    assert piclat.pi1("SL:4/mu:2") == [2]
    assert piclat.pi1("GL:3") == [0]
    assert piclat.pi1("Spin:7") == []


def test_compute_envelope():
    env = piclat.compute("GL:4", "coker-ev-tilde", g=2, n=0, delta=1)
    assert env["result"]["group"]["invariant_factors"] == []
    env = piclat.compute("Spin:8", "coker-omega", g=1, n=1, delta=0)
    assert env["result"]["group"]["invariant_factors"] == [2, 2]
    env = piclat.compute("torus:1", "coker-gamma-bar", g=3, delta=0)
    assert env["result"]["group"]["text"] == "Z/2"
    assert list(env) == ["input", "quantity", "result", "assumptions", "theorems", "checks", "notes"]


def test_direct_functions():
    assert piclat.coker_ev("GL:6", delta=4, tilde=True) == [2]
    assert piclat.coker_r_G("E7ad") == [2]
    assert piclat.multiplier("PGL:2") == (2, 1)
    assert piclat.multiplier("PGL:2", even=True) == (4, 1)
    assert piclat.coker_omega("SL:2", g=2, n=1) == [2]
    assert piclat.coker_gamma_bar("torus:2", g=2, delta_vec="1,0") == [2]


def test_errors():
    with pytest.raises(piclat.PiclatError) as e:
        piclat.pi1("SL:4/mu:3")
    assert piclat.error_kind(e.value) == "InvalidIsogeny"
    assert piclat.exit_code_for("InvalidIsogeny") == 2
    with pytest.raises(piclat.PiclatError) as e:
        piclat.compute("SL:2", "genus0", g=1, n=1)
    assert piclat.error_kind(e.value) == "GenusOutOfRange"
    assert isinstance(e.value, ValueError)


def test_table_and_verify():
    t = piclat.table("A", nmax=4)
    assert t["all_agree"]
    assert len(t["rows"]) > 0
    r = piclat.verify("weyl-bruteforce")
    assert r["ok"] and r["failed"] == 0
    assert piclat.bruteforce_invariant_forms("A2")["gram"] == [[2, -1], [-1, 2]]
