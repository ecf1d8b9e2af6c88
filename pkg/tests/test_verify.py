import json

import pytest

from littlewood import verify


@pytest.mark.parametrize("name", ["field", "spectral", "bounds", "asymptotics"])
def test_suite_passes(name):
    rep = verify.SUITES[name]()
    assert rep.checks
    assert rep.passed, [c.to_dict() for c in rep.checks if not c.passed]


def test_norms_suite_small():
    rep = verify.norms_suite(n_arrays=40, seed=3)
    assert rep.passed, [c.to_dict() for c in rep.checks if not c.passed]


def test_report_shape():
    rep = verify.run(["bounds"])
    obj = json.loads(rep.to_json())
    assert obj["pass"] and obj["n_failed"] == 0 and obj["n_checks"] == len(obj["checks"])
    assert {"id", "anchor", "pass", "slack", "bound", "detail"} <= set(obj["checks"][0])
    with pytest.raises(KeyError):
        verify.run(["nope"])
