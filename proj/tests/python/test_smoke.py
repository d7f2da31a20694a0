"""Smoke tests for the python bindings.

The property checks live in the C++ test suite; these only confirm that the
module round-trips real instances, that both report formats come back intact,
and that bad input surfaces as python exceptions.
"""

import json
import os
import sys
import tempfile

import fairdiv

CHAIN = "two-overlap-chain"


def chain_instance():
    return fairdiv.fixtures()[CHAIN]


def test_fixture_catalog():
    fx = fairdiv.fixtures()
    assert sorted(fx) == [
        "additive-two-by-two",
        "completion-bait-reported",
        "completion-bait-true",
        "near-tie-additive",
        "single-item-duel",
        "single-item-solo",
        "single-prized-item",
        "two-overlap-chain",
    ]
    for name, inst in fx.items():
        assert inst["schema"] == "fairdiv-instance/1", name
        assert inst["agents"], name


def test_solve_sec():
    report = fairdiv.solve(chain_instance(), "sec")
    assert report["schema"] == "fairdiv-report/1"
    assert report["mechanism"] == "sec"
    assert report["allocation"]["alice"] == ["g1", "g2"]
    assert report["allocation"]["unallocated"] == []
    assert report["subsidies"] == {"alice": 0, "bob": 1, "carol": 1}
    assert report["utilities"] == {"alice": 2, "bob": 2, "carol": 2}
    assert report["welfare"] == 4
    assert "sec: subsidy a1" in report["trace"]


def test_solve_se_subsidy_bounds():
    inst = chain_instance()
    n = len(inst["agents"])
    report = fairdiv.solve(inst, "se")
    subs = list(report["subsidies"].values())
    assert all(s in (0, 1) for s in subs)
    assert sum(subs) <= n - 1


def test_fractional_payments_are_strings():
    report = fairdiv.solve(fairdiv.fixtures()["additive-two-by-two"], "vcg")
    assert report["subsidies"] == {"alice": "8/5", "bob": "3/2"}
    assert report["utilities"]["bob"] == "21/10"


def test_audit_exchange():
    report = fairdiv.audit(chain_instance(), "exchange", jobs=2, seed=7)
    assert report["suite"] == "exchange"
    assert report["audit"], "suite produced no checks"
    assert all(e["verdict"] == "holds" for e in report["audit"])


def test_validate():
    report = fairdiv.validate(chain_instance())
    assert [e["status"] for e in report["validate"]] == ["valid"] * 3
    assert all(e["issues"] == [] for e in report["validate"])


def test_evaluate():
    text = json.dumps(chain_instance())
    values = fairdiv.evaluate(text, [["g1", "g2"], ["g3"], ["g4", "g5"]])
    assert values == ["2", "1", "1"]


def test_run_cli():
    code, out, err = fairdiv.run_cli([])
    assert code == 2
    assert "fairdiv --help" in err

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "chain.json")
        with open(path, "w") as f:
            json.dump(chain_instance(), f)
        code, out, err = fairdiv.run_cli(["solve", path, "--mechanism", "se"])
        assert code == 0, err
        assert "welfare: 4" in out


def test_errors():
    try:
        fairdiv.solve(chain_instance(), "frob")
    except ValueError as e:
        assert "unknown mechanism" in str(e)
    else:
        raise AssertionError("unknown mechanism accepted")

    try:
        fairdiv.validate({"schema": "fairdiv-instance/1"})
    except ValueError as e:
        assert "instance:" in str(e)
    else:
        raise AssertionError("truncated instance accepted")

    try:
        fairdiv.solve(chain_instance(), "vcg")
    except ValueError as e:
        assert "superadditive" in str(e)
    else:
        raise AssertionError("vcg accepted a matroid-rank profile")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print("ok", t.__name__)
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
