import json

import pytest

from permdeg.cli import (
    EXIT_BUDGET,
    EXIT_CONTRADICTION,
    EXIT_OK,
    EXIT_USAGE,
    run,
)
from permdeg.cache import CacheError, CacheRecord, SCHEMA_VERSION, load_cache, save_cache
from permdeg.pipeline import enumerate_degree


class TestExitCodes:
    def test_mu_inline(self, capsys):
        assert run(["mu", "--gens", "(1 2)(3 4 5)", "--degree", "5"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "5"

    def test_mu_comma_separated_gens(self, capsys):
        assert run(["mu", "--gens", "(1 2),(1 2 3 4 5)", "--degree", "5"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "5"

    def test_mu_from_file(self, tmp_path, capsys):
        gfile = tmp_path / "group.txt"
        gfile.write_text("degree: 6\ngens: (1 2 3 4 5 6)\n")
        assert run(["mu", "--file", str(gfile)]) == EXIT_OK
        # mu(C6) = 5: faithful on a 2-cycle plus a 3-cycle
        assert capsys.readouterr().out.strip() == "5"

    def test_mu_missing_args_is_usage_error(self, capsys):
        assert run(["mu", "--gens", "(1 2)"]) == EXIT_USAGE

    def test_mu_bad_cycle_is_usage_error(self, capsys):
        assert run(["mu", "--gens", "(1 9)", "--degree", "5"]) == EXIT_USAGE

    def test_unknown_command_is_usage_error(self, capsys):
        assert run(["frobnicate"]) == EXIT_USAGE

    def test_budget_exit(self, capsys, monkeypatch):
        import permdeg.pipeline as pipeline
        from permdeg.dense import BudgetExceeded

        def boom(*a, **k):
            raise BudgetExceeded("node budget exhausted")

        monkeypatch.setattr(pipeline, "subgroup_classes", boom)
        assert run(["enumerate", "-m", "5"]) == EXIT_BUDGET

    def test_witness_ok(self, capsys):
        assert run(["witness"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "10 < 10 + 2 = 12" in out
        assert "order-2 centralizing element" in out


class TestSurveyOutput:
    def test_verify_max_5(self, capsys):
        assert run(["verify", "--max", "5"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "m=5: minemb classes=7" in out
        assert "verdict" in out

    def test_survey_table(self, capsys):
        assert run(["survey", "-m", "5"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "7 minimally embedded" in out
        assert "comp: empty" in out

    def test_survey_json_deterministic(self, capsys, tmp_path):
        cache = str(tmp_path)
        assert run(["survey", "-m", "6", "--json", "--cache", cache]) == EXIT_OK
        first = capsys.readouterr().out
        assert run(["survey", "-m", "6", "--json", "--cache", cache]) == EXIT_OK
        second = capsys.readouterr().out
        assert first == second
        data = json.loads(first)
        assert data["minemb_count"] == 18
        assert data["ind_multiset"] == {"1": 18}
        assert data["comp_nonempty"] is False
        assert len(data["classes"]) == 18

    def test_enumerate_prints_counts(self, capsys):
        assert run(["enumerate", "-m", "5"]) == EXIT_OK
        assert "19 subgroup classes, 156 subgroups" in capsys.readouterr().out


class TestCache:
    def test_round_trip(self, tmp_path):
        cache = str(tmp_path)
        enumerate_degree(5, cache)
        records = load_cache(cache, 5)
        assert len(records) == 19
        save_cache(records, cache)
        assert load_cache(cache, 5) == records

    def test_missing_returns_none(self, tmp_path):
        assert load_cache(str(tmp_path), 8) is None

    def test_wrong_schema_refused(self, tmp_path):
        cache = str(tmp_path)
        enumerate_degree(3, cache)
        path = tmp_path / "degree3.jsonl"
        lines = [json.loads(l) for l in path.read_text().splitlines()]
        for l in lines:
            l["schema_version"] = SCHEMA_VERSION + 1
        path.write_text("\n".join(json.dumps(l) for l in lines) + "\n")
        with pytest.raises(CacheError):
            load_cache(cache, 3)

    def test_corrupt_order_refused(self, tmp_path):
        cache = str(tmp_path)
        enumerate_degree(3, cache)
        path = tmp_path / "degree3.jsonl"
        lines = [json.loads(l) for l in path.read_text().splitlines()]
        lines[-1]["order"] += 1
        path.write_text("\n".join(json.dumps(l) for l in lines) + "\n")
        with pytest.raises(CacheError):
            load_cache(cache, 3)

    def test_noncontiguous_ids_refused(self, tmp_path):
        cache = str(tmp_path)
        enumerate_degree(3, cache)
        path = tmp_path / "degree3.jsonl"
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[1:]) + "\n")
        with pytest.raises(CacheError):
            load_cache(cache, 3)

    def test_record_line_round_trip(self):
        rec = CacheRecord(
            schema_version=SCHEMA_VERSION,
            degree=4,
            class_id=0,
            generators=["(1 2)"],
            order=2,
            class_size=6,
            fingerprint="x",
            minemb=False,
            ind=None,
            comp_witness=None,
        )
        assert CacheRecord.from_line(rec.to_line()) == rec
