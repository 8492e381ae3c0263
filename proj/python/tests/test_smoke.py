import pytest

import spinlab


def test_presets_load():
    assert set(spinlab.preset_names()) == {"cubic9", "quintic11", "E8"}
    K = spinlab.load_preset("cubic9")
    assert K.degree == 3
    assert K.signature == (3, 0)
    assert K.validation_ok()
    assert K.big_f() == 32 * 17 * 19 * 81


def test_arithmetic():
    K = spinlab.load_preset("cubic9")
    assert K.mul([0, 1, 0], [0, 0, 1]) == [1, 3, 0]
    assert K.norm([0, 1, 0]) == 1
    assert K.norm([2, 0, 0]) == 8
    big = 10**30
    assert K.norm([big, 0, 0]) == big**3


def test_spin_stream_and_type1():
    K = spinlab.load_preset("cubic9")
    sigma = K.automorphism_orders().index(3)
    recs = spinlab.spin_stream(K, 20, [sigma])
    assert [r["p"] for r in recs] == [17] * 3 + [19] * 3
    assert recs[0]["s"] == 1
    assert all(r["s"] in (-1, 1) for r in recs)
    a = spinlab.type1_sum(K, [1000, 10000], [sigma])
    b = spinlab.type1_sum(K, [1000, 10000], [sigma], enumerate=True)
    assert a == b
    assert a[-1] == (10000, -60, 1567)


def test_invalid_S_raises():
    K = spinlab.load_preset("cubic9")
    sigma = K.automorphism_orders().index(3)
    inv = [s for s in range(3) if s not in (0, sigma)][0]
    assert not spinlab.check_S_valid(K, [sigma, inv])
    with pytest.raises(spinlab.SpinlabError):
        spinlab.spin_stream(K, 100, [sigma, inv])


def test_class_groups_and_sieve():
    assert spinlab.class_number(-20) == 2
    assert spinlab.two_power_rank(41, 3) == 1
    assert spinlab.sqf(360, 2) == (5, 9, 8)
    r = spinlab.charsum_scan(15, 2)
    assert r["N"] == 3
    E = spinlab.load_preset("E8")
    assert not spinlab.splits_completely(E, 17)
    assert spinlab.splits_completely(E, 41)


def test_cli_roundtrip():
    rc, out, err = spinlab.run_cli(["validate", "--preset", "E8"])
    assert rc == 0
    assert out.startswith("# validate")
    rc, out, err = spinlab.run_cli(["charsum", "--modulus", "16"])
    assert rc == 2
    assert "BadModulus" in err
