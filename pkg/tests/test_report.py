import json
import math

from tfo.report import Claim, SpectralReport


def test_claim_constructors():
    assert Claim.at_most("a", "x", 1e-9, 1e-8).passed is True
    assert Claim.at_most("a", "x", math.nan, 1e-8).passed is False
    assert Claim.at_least("a", "x", 1e-3, 1e-5).passed is True
    assert Claim.at_least("a", "x", math.inf, 1e-5).passed is False
    assert Claim.info("a", "x", 3).passed is None
    assert Claim.flag("a", "x", False).passed is False


def test_report_schema():
    rep = SpectralReport("s", grid={"kind": "interval", "a": 1.0, "cutoff": None, "n": 64}, seed=0)
    rep.add(Claim.at_most("c", "anchor", 0.0, 1.0))
    d = json.loads(json.dumps(rep.to_dict()))
    assert list(d) == ["suite", "grid", "seed", "claims"]
    assert list(d["grid"]) == ["kind", "a", "cutoff", "n"]
    assert list(d["claims"][0]) == ["id", "anchor", "value", "tol", "pass"]


def test_info_claims_do_not_fail_a_report():
    rep = SpectralReport("s")
    rep.add(Claim.info("i", "x", 1.0))
    assert rep.passed and rep.failures == []
    rep.add(Claim.flag("f", "x", False))
    assert not rep.passed and [c.id for c in rep.failures] == ["f"]


def test_merge_prefixes_ids():
    inner = SpectralReport("inner", claims=[Claim.flag("c", "x", True)])
    outer = SpectralReport("outer")
    outer.merge(inner)
    assert outer.claim("inner.c").passed
    assert "PASS" in outer.summary()
