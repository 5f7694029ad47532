#
# Copyright (c) 2026 The selmer-census authors.
#
# This file is part of selmer-census.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
#
import json
import logging
from io import StringIO

import pytest

from selmer.__version__ import __version__
from selmer.census import CensusCache
from selmer.cli import SCHEMA_VERSION, build_parser, resolve_config, run

logging.basicConfig(level=logging.INFO)

SETTINGS = "tests/resources/settings/selmer-settings-with-defaults.json"


@pytest.fixture
def cache_path(tmp_path):
    return str(tmp_path / "census.jsonl")


def invoke(*argv):
    out = StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_unknown_flag_is_a_usage_error():
    assert invoke("hurwitz", "--disc", "-27", "--frobnicate")[0] == 2


def test_missing_command_is_a_usage_error():
    assert invoke()[0] == 2


def test_version(capsys):
    assert invoke("--version")[0] == 0
    assert "selmer" in capsys.readouterr().out


def test_hurwitz_text():
    code, output = invoke("hurwitz", "--disc", "-27")

    assert code == 0
    assert output.splitlines()[0] == "H(-27) = 2"
    assert "(3, 3, 3)  content 3" in output


def test_run_logs_version_and_resolved_config(caplog):
    with caplog.at_level(logging.INFO, logger="selmer.cli"):
        assert invoke("hurwitz", "--disc", "-27", "--seed", "5")[0] == 0

    record = next(r for r in caplog.records if r.name == "selmer.cli._main" and r.levelno == logging.INFO)
    assert __version__ in record.getMessage()
    assert '"seed": 5' in record.getMessage()
    assert '"command": "hurwitz"' in record.getMessage()


def test_hurwitz_json():
    code, output = invoke("hurwitz", "--disc", "-12", "--json")
    document = json.loads(output)

    assert code == 0
    assert document["schema"] == SCHEMA_VERSION
    assert document["command"] == "hurwitz"
    assert document["result"]["H"] == 2
    assert document["result"]["forms"] == [[1, 0, 3], [2, 2, 2]]
    assert document["result"]["decomposition"] == {"1": 1, "2": 1}


def test_hurwitz_rejects_bad_discriminant():
    assert invoke("hurwitz", "--disc", "5")[0] == 2


def test_census_caches_records(cache_path):
    code, output = invoke("census", "--prime", "7", "--exact-ap", "--cache", cache_path, "--json")
    record = json.loads(output)["result"][0]

    assert code == 0
    assert (record["p"], record["sp"], record["method"]) == ("7", "4", "fiber")
    assert CensusCache(cache_path).require(7, require_ap=True).sp == 4


def test_census_csv_range(cache_path):
    code, output = invoke("census", "--prime-range", "5..13", "--cache", cache_path, "--csv")
    lines = output.splitlines()

    assert code == 0
    assert lines[0] == "p,sbar,sp,sp_j0,sp_j1728,ap,ap1,ap2"
    assert [line.split(",")[0] for line in lines[1:]] == ["5", "7", "11", "13"]


def test_census_rejects_small_prime(cache_path):
    assert invoke("census", "--prime", "3", "--cache", cache_path)[0] == 2


def test_census_ceiling_from_settings(cache_path):
    # default ceiling is 500
    code, _ = invoke("census", "--prime", "503", "--cache", cache_path, "--settings", SETTINGS)

    assert code == 2


def test_census_output_is_deterministic(cache_path):
    first = invoke("census", "--prime-range", "5..11", "--exact-ap", "--cache", cache_path, "--json")
    second = invoke("census", "--prime-range", "5..11", "--exact-ap", "--cache", cache_path, "--json")

    assert first == second


def test_table1_check():
    code, output = invoke("table1", "--check", "--max-p", "40")

    assert code == 0
    assert "0.0276816608996540" in output
    assert "MISMATCH" not in output


def test_scan():
    code, output = invoke("scan", "--a", "3", "--b", "0", "--max-p", "10", "--json")

    assert code == 0
    assert json.loads(output)["result"]["anomalous"] == [5]


def test_scan_singular_curve():
    assert invoke("scan", "--a", "-3", "--b", "2", "--max-p", "10")[0] == 2


def test_verdict_rank_two_is_out_of_scope():
    assert invoke("verdict", "--a", "1", "--b", "1", "--prime", "7", "--rank", "2")[0] == 2


def test_verdict_tamagawa():
    code, output = invoke(
        "verdict", "--a", "3", "--b", "0", "--prime", "7", "--rank", "0", "--tamagawa", "2,7", "--json"
    )
    result = json.loads(output)["result"]

    assert code == 0
    assert result["status"] == "inconclusive"
    assert result["failed_condition"] == "Tamagawa"


def test_bounds(cache_path):
    code, output = invoke("bounds", "--prime", "7", "--theorem", "4.8", "--cache", cache_path, "--json")
    result = json.loads(output)["result"]

    assert code == 0
    assert result["bound"] == "Dp"
    assert result["e5_source"] == "heuristic"
    assert "conditional" in result["disclaimer"]


@pytest.mark.parametrize("theorem, bound", [("4.4", "Fp"), ("4.6", "Bp"), ("4.8", "Dp")])
def test_bounds_theorem_labels_match_bound_names(cache_path, theorem, bound):
    _, by_theorem = invoke("bounds", "--prime", "7", "--theorem", theorem, "--cache", cache_path, "--json")
    _, by_name = invoke("bounds", "--prime", "7", "--bound", bound, "--cache", cache_path, "--json")

    assert json.loads(by_theorem)["result"] == json.loads(by_name)["result"]
    assert json.loads(by_name)["result"]["bound"] == bound


def test_bounds_needs_exactly_one_selector(cache_path):
    assert invoke("bounds", "--prime", "7", "--cache", cache_path)[0] == 2
    assert invoke("bounds", "--prime", "7", "--theorem", "4.4", "--bound", "Fp", "--cache", cache_path)[0] == 2


def test_sieve_csv(cache_path):
    code, output = invoke(
        "sieve", "--y", "5", "--box-c", "13", "--box-d", "13", "--exhaustive", "--betas", "1,2", "--cache",
        cache_path, "--csv"
    )
    lines = output.splitlines()

    assert code == 0
    assert lines[0] == "beta,observed_fraction,chebyshev_ceiling"
    assert len(lines) == 3


def test_sieve_rejects_small_box(cache_path):
    args = ("sieve", "--y", "7", "--box-c", "100", "--box-d", "100", "--samples", "10", "--cache", cache_path)

    assert invoke(*args)[0] == 2
    assert invoke(*args, "--allow-small-box")[0] == 0


def test_verify_waterhouse_schoof():
    code, output = invoke("verify", "--check", "waterhouse-schoof", "--prime-range", "5..50", "--json")
    document = json.loads(output)

    assert code == 0
    assert document["result"]["passed"]
    assert [o["p"] for o in document["result"]["outcomes"]][:3] == [5, 7, 11]


def test_verify_fibers_text():
    code, output = invoke("verify", "--check", "fibers", "--prime-range", "5..13")

    assert code == 0
    assert "FAILED" not in output


def test_verify_lemma_rank_skips_large_primes():
    code, output = invoke("verify", "--check", "lemma-rank", "--prime-range", "17..19", "--json")
    outcomes = json.loads(output)["result"]["outcomes"]

    assert code == 0
    assert all(o["skipped"] for o in outcomes)


@pytest.mark.slow
def test_verify_oracle_equivalence():
    code, output = invoke("verify", "--check", "oracle-equivalence", "--prime-range", "11..13", "--json")
    outcomes = json.loads(output)["result"]["outcomes"]

    assert code == 0
    assert [(o["p"], o["checked"]) for o in outcomes] == [(11, 1000), (13, 1000)]


def test_verify_rejects_bad_range():
    assert invoke("verify", "--prime-range", "50..5")[0] == 2


def test_minimality():
    code, output = invoke("minimality", "--a-max", "16", "--b-max", "64", "--json")
    result = json.loads(output)["result"]

    assert code == 0
    assert result["fraction"] == "472/473"
    assert result["distance"] < 0.01


def test_resolve_config_prefers_explicit_flags():
    args = build_parser().parse_args(
        ["hurwitz", "--disc", "-3", "--settings", SETTINGS, "--profile", "cluster", "--parallelism", "3"]
    )
    config = resolve_config(args)

    assert config.parallelism == 3
    assert config.census_ceiling == 2000
    assert config.padic_precision == 12
    assert config.flag("disc") == -3
    assert config.as_dict()["flags"] == {"disc": -3}


def test_resolve_config_uses_profile():
    args = build_parser().parse_args(["hurwitz", "--disc", "-3", "--settings", SETTINGS, "--profile", "laptop"])
    config = resolve_config(args)

    assert config.seed == 7
    assert config.parallelism == -1
    assert config.output_format == "text"


def test_unknown_profile_is_a_usage_error():
    assert invoke("hurwitz", "--disc", "-3", "--settings", SETTINGS, "--profile", "nope")[0] == 2
