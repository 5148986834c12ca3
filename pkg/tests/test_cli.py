import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seshadri_ruled import cli, verify
from seshadri_ruled.cli import Scenario

from strategies import surfaces

PRODUCT = ["--genus", "1", "--invariant-e", "0", "--product"]
F1 = ["--genus", "0", "--invariant-e", "1"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    return code, json.loads(out)


def walk(obj):
    yield obj
    if isinstance(obj, dict):
        for v in obj.values():
            yield from walk(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from walk(v)


class TestDocumentedInvocations:
    def test_witness(self):
        code, doc = run_json("witness", *PRODUCT, "--s", "3")
        assert code == 0
        assert doc["epsilon"] == {"p": "0/1", "q": "1/1", "d": 2}
        assert doc["r"] == 16
        assert doc["conditionality"] == "negative-curve-conjecture"

    def test_threshold(self):
        code, doc = run_json("threshold", *F1, "--bundle", "1,2")
        assert code == 0 and doc["r0"] == 27

    def test_equivalence_sweep(self):
        code, doc = run_json("verify", "--suite", "equivalence", "--bounds", "3,4,3", "--r-max", "4")
        assert code == 0
        (res,) = doc["results"]
        assert res["conjecture_violation_candidates"] == 0
        assert res["violation_count"] == 0


class TestExitCodes:
    def test_unknown_flag(self):
        code, out, err = run("threshold", *F1, "--bundle", "1,2", "--frobnicate")
        assert code == 2 and out == "" and "usage" in err

    def test_unknown_command(self):
        code, _, err = run("bogus")
        assert code == 2 and "usage" in err

    def test_invalid_surface(self):
        code, doc = run_json("threshold", "--genus", "0", "--invariant-e", "-1", "--bundle", "1,1")
        assert code == 2 and doc["error"]["type"] == "InvalidSurface"

    def test_missing_surface(self):
        code, doc = run_json("threshold", "--bundle", "1,1")
        assert code == 2 and "surface" in doc["error"]["message"]

    def test_non_ample_bundle(self):
        code, doc = run_json("threshold", *F1, "--bundle", "1,1")
        assert code == 2 and doc["error"]["type"] == "PreconditionError"

    def test_conditional_hypothesis(self):
        code, doc = run_json("ample", *PRODUCT, "--bundle", "1,1", "--r", "1")
        assert code == 3
        assert doc["error"]["type"] == "ConditionalHypothesisError"
        assert doc["conditionality"] == "negative-curve-conjecture"

    def test_assumed_conjecture_is_recorded(self):
        code, doc = run_json("ample", *PRODUCT, "--bundle", "1,1", "--r", "1", "--assume-conjecture")
        assert code == 0 and doc["ample"] is True and doc["assumed_conjecture"] is True

    def test_window_empty(self):
        code, doc = run_json("construct", *F1, "--r", "12")
        assert code == 2 and doc["error"]["nearest"][0]["s"] == 2

    def test_sweep_violation(self, monkeypatch):
        fake = {"suite": "witness", "cases": 1, "violation_count": 1, "violations": [{"x": 1}]}
        monkeypatch.setattr(verify, "witness_suite", lambda workers=1: fake)
        code, doc = run_json("verify", "--suite", "witness")
        assert code == 1 and doc["passed"] is False


class TestCommands:
    def test_intersect(self):
        code, doc = run_json("intersect", *F1, "--class", "0,1,1")
        assert code == 0
        assert doc["intersection"] == -1 and doc["anticanonical_degree"] == 1
        assert doc["arithmetic_genus"] == "0/1"

    def test_intersect_with(self):
        code, doc = run_json("intersect", *F1, "--class", "1,0", "--with", "0,1")
        assert doc["intersection"] == 1

    def test_classify(self):
        code, doc = run_json("classify", *F1, "--class", "0,2,3")
        assert doc["verdict"] == "RigidExcluded" and doc["detail"]["fired"] == "xu_filter"

    def test_bound_check(self):
        code, doc = run_json("bound-check", *F1, "--class", "1,1,1,1")
        assert doc["check"] == "equality_minus_one"

    def test_enumerate_streams_lines(self):
        code, out, _ = run("enumerate", *F1, "--r", "1", "--bounds", "1,2,2")
        lines = [json.loads(x) for x in out.splitlines()]
        assert code == 0 and [x["index"] for x in lines] == [0, 1, 2]
        assert {"a": 0, "b": 1, "mults": [1]} in [x["class"] for x in lines]

    def test_good_form_with_generic_point(self):
        code, doc = run_json(
            "good-form", *PRODUCT, "--class", "3,3," + ",".join(["1"] * 16), "--ex-mult-sqrt", "2", "--nonneg"
        )
        assert doc["is_good"] is True and doc["nonneg"]["violations"] == []

    def test_nbs(self):
        code, doc = run_json("nbs", *F1, "--bundle", "1,2", "--r", "27", "--class", "0,1,1")
        assert doc["holds"] is True

    def test_multipoint(self):
        code, doc = run_json("multipoint", *PRODUCT, "--bundle", "1,1", "--r", "3")
        assert doc["status"] == "below-threshold"
        assert doc["value"] == {"p": "0/1", "q": "1/3", "d": 6}

    def test_window(self):
        code, doc = run_json("window", *PRODUCT, "--s", "3")
        assert (doc["r_min"], doc["r_max"]) == (16, 17)

    def test_certify_from_bundle(self):
        code, doc = run_json("certify", *PRODUCT, "--bundle", "3,3", "--r", "17")
        assert doc["valid"] and doc["epsilon"] == {"p": "1/1", "q": "0/1", "d": 0}

    def test_upper_bound(self):
        code, doc = run_json("upper-bound", *F1, "--class", "1,2")
        assert doc["upper_bound"] == {"p": "1/1", "q": "0/1", "d": 0}

    def test_approx_is_labelled_string(self):
        code, doc = run_json("witness", *PRODUCT, "--s", "3", "--approx", "12")
        assert doc["epsilon"]["approx"] == "1.41421356237"

    def test_no_floats_anywhere(self):
        for argv in (
            ("witness", *PRODUCT, "--s", "3", "--approx", "8"),
            ("threshold", *F1, "--bundle", "1,2"),
            ("multipoint", *PRODUCT, "--bundle", "1,1", "--r", "3"),
        ):
            _, doc = run_json(*argv)
            assert not any(isinstance(v, float) for v in walk(doc))


class TestScenario:
    def test_file_input(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"surface": {"g": 0, "e": 1, "is_product": False}, "bundle": [1, 2]}))
        code, doc = run_json("threshold", "--json-in", str(path))
        assert code == 0 and doc["r0"] == 27

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"surface": {"g": 1, "e": 0, "is_product": True}, "s": 4}))
        _, doc = run_json("witness", "--json-in", str(path), "--s", "3")
        assert doc["r"] == 16

    def test_class_object_in_file(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"surface": {"g": 0, "e": 1}, "class": {"a": 1, "b": 1, "mults": [1, 1]}}))
        _, doc = run_json("classify", "--json-in", str(path))
        assert doc["verdict"] == "MinusOne"

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"surfac": {}}))
        code, _ = run_json("threshold", "--json-in", str(path))
        assert code == 2

    def test_missing_file(self, tmp_path):
        code, _ = run_json("threshold", "--json-in", str(tmp_path / "nope.json"))
        assert code == 2

    @given(
        surfaces(),
        st.fixed_dictionaries(
            {},
            optional={
                "bundle": st.lists(st.integers(-9, 9), min_size=2, max_size=2),
                "r": st.integers(0, 100),
                "s": st.integers(1, 20),
                "bounds": st.lists(st.integers(0, 5), min_size=3, max_size=3),
                "class": st.lists(st.integers(-5, 5), min_size=2, max_size=8),
            },
        ),
    )
    def test_round_trip(self, s, payload):
        sc = Scenario(s, payload)
        text = json.dumps(sc.to_json())
        assert Scenario.from_json(json.loads(text)) == sc


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("verify", "--suite", "lattice", "--samples", "400", "--seed", "7"),
            ("verify", "--suite", "exactnum", "--samples", "400", "--seed", "3"),
            ("verify", "--suite", "goodform", "--r-max", "2"),
        ],
    )
    def test_worker_count_does_not_change_output(self, argv):
        _, one, _ = run(*argv, "--workers", "1")
        _, three, _ = run(*argv, "--workers", "3")
        assert one == three

    def test_repeat_runs_identical(self):
        a = run("enumerate", *PRODUCT, "--r", "3", "--bounds", "2,2,2")
        b = run("enumerate", *PRODUCT, "--r", "3", "--bounds", "2,2,2")
        assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "seshadri_ruled", "threshold", *F1, "--bundle", "1,2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["r0"] == 27
