import json
import subprocess
import sys

import pytest

from satake_verify.cli import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_IO,
    EXIT_OK,
    IDENTITIES,
    CampaignConfig,
    ConfigError,
    emit_report,
    exit_status,
    main,
    parse_reports,
    run_campaign,
)
from satake_verify.lgroup import INERT, SPLIT


def test_single_identity_campaign():
    reports = run_campaign(CampaignConfig(["cauchy"], [(1, 0)], places=(INERT,), truncation_order=4))
    assert len(reports) == 1
    assert reports[0].status == "pass"


def test_all_identities_cover_the_table():
    cfg = CampaignConfig(sorted(IDENTITIES), [(1, 0)], places=(INERT,))
    reports = run_campaign(cfg)
    assert sorted({r.identity_id for r in reports}) == sorted(IDENTITIES)
    assert [r.identity_id for r in reports] == sorted(r.identity_id for r in reports)
    assert exit_status(reports) == EXIT_OK


def test_capacity_becomes_skipped():
    (rep,) = run_campaign(CampaignConfig(["key_identity"], [(1, 9)], places=(INERT,)))
    assert rep.status == "skipped"
    assert exit_status([rep]) == EXIT_OK


def test_config_validation():
    with pytest.raises(ConfigError):
        CampaignConfig(["nonsense"], [(1, 0)]).validate()
    with pytest.raises(ConfigError):
        CampaignConfig(["cauchy"], [(-1, 0)]).validate()
    with pytest.raises(ConfigError):
        CampaignConfig(["cauchy"], [(1, 0)], mode="guess").validate()


def test_emit_empty_and_round_trip():
    assert emit_report([], "json") == "[]\n"
    assert emit_report([], "text") == ""
    reports = run_campaign(CampaignConfig(["cauchy", "modulus_identity"], [(1, 0)], places=(SPLIT,)))
    text = emit_report(reports, "json")
    assert text.endswith("\n")
    back = parse_reports(text)
    assert [r.to_json() for r in back] == [r.to_json() for r in reports]
    for obj in json.loads(text):
        assert {"identity_id", "params", "status", "elapsed_ms"} <= set(obj)


def test_exit_codes(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--identities", "cauchy", "--ranks", "1,0", "--out", str(out), "--format", "json"]) == EXIT_OK
    assert json.loads(out.read_text())[0]["status"] == "pass"
    assert main(["--identities", "key_identity", "--ranks", "1,1", "--place", "split", "--out", str(out)]) == EXIT_FAIL
    assert main(["--identities", "bogus", "--ranks", "1,0", "--out", str(out)]) == EXIT_CONFIG
    assert main(["--identities", "cauchy", "--ranks", "1;0", "--out", str(out)]) == EXIT_CONFIG
    missing = tmp_path / "no" / "such" / "dir" / "r.json"
    assert main(["--identities", "cauchy", "--ranks", "1,0", "--out", str(missing)]) == EXIT_IO


def test_failing_report_carries_a_witness():
    (rep,) = run_campaign(CampaignConfig(["key_identity"], [(1, 1)], places=(SPLIT,)))
    assert rep.status == "fail"
    assert rep.witness and len(rep.witness) <= 500


def test_output_is_byte_deterministic(tmp_path):
    args = ["--identities", "cauchy,lemma_vs_liu,rhs_constancy", "--ranks", "1,0;1,1", "--no-timings", "--format", "json"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == EXIT_OK
    assert main(args + ["--out", str(b), "--jobs", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "satake_verify", "--identities", "modulus_identity", "--ranks", "2,1", "--place", "inert"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "modulus_identity" in proc.stdout and "PASS" in proc.stdout
