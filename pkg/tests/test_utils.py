import json
from fractions import Fraction
from pathlib import Path

import pytest

from src.constants import CACHE_ENV_VAR, DEFAULT_CACHE_FILE_NAME
from src.core import chern, cobordism, fgl
from src.core.chern import ProjSpace
from src.core.config import Config, default_cache_path
from src.core.errors import BoundError
from src.utils.file_utils import ResultCache
from src.utils.format_utils import (
    chern_numbers_frame,
    chern_numbers_to_json,
    cobordism_from_json,
    cobordism_to_json,
    coefficient_frame,
    dump_json,
    pretty_polynomial,
    series_from_json,
    series_to_json,
    rational_str,
)


class TestResultCache:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "cache.tsv"
        cache = ResultCache(path)
        key = ResultCache.key("P2*P1", 3)
        cache.put(key, Fraction(-7, 2))
        assert ResultCache(path).get(key) == Fraction(-7, 2)

    def test_key_format(self):
        assert ResultCache.key("PB(P2; 0, h1)", 2, version=4) == "PB(P2;0,h1)|2|4"

    def test_later_lines_win(self, tmp_path):
        path = tmp_path / "cache.tsv"
        path.write_text("k\t1\nk\t2\n")
        assert ResultCache(path).get("k") == 2

    def test_corrupt_lines_ignored(self, tmp_path, capsys):
        path = tmp_path / "cache.tsv"
        path.write_text("k\t1\ngarbage\nx\tnot-a-number\n\ny\t3/0\n")
        cache = ResultCache(path)
        assert len(cache) == 1
        assert "[ResultCache] ignored 3 corrupt line(s)" in capsys.readouterr().err

    def test_version_invalidates(self, tmp_path):
        path = tmp_path / "cache.tsv"
        ResultCache(path).put(ResultCache.key("P3", 1, version=0), 20)
        assert ResultCache(path).get(ResultCache.key("P3", 1)) is None

    def test_in_memory(self):
        cache = ResultCache()
        cache.put("a", 1)
        assert cache.get("a") == 1
        assert len(cache) == 1

    def test_missing_file(self, tmp_path):
        assert ResultCache(tmp_path / "absent.tsv").get("k") is None


class TestConfig:
    def test_defaults_validate(self):
        assert Config().validate() == Config()

    @pytest.mark.parametrize("changes", [
        {"fgl_degree": 0}, {"q_order": -1}, {"jobs": 0}, {"output_format": "yaml"},
        {"dimension_bound": -2},
    ])
    def test_invalid(self, changes):
        with pytest.raises(BoundError):
            Config().with_overrides(**changes).validate()

    def test_none_overrides_ignored(self):
        assert Config().with_overrides(seed=None, jobs=None) == Config()

    def test_cache_path_from_environment(self, monkeypatch, tmp_path):
        monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / "c.tsv"))
        assert Config.from_environment().cache_path == tmp_path / "c.tsv"

    def test_cache_path_default(self, monkeypatch, tmp_path):
        monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
        monkeypatch.chdir(tmp_path)
        assert default_cache_path() == Path.cwd() / DEFAULT_CACHE_FILE_NAME


class TestFormatting:
    def test_rationals(self):
        assert rational_str(Fraction(-1, 2)) == "-1/2"
        assert rational_str(20) == "20"

    def test_cobordism_json(self):
        cls = cobordism.decompose(chern.BlowupPoint(ProjSpace(3)))
        payload = cobordism_to_json(cls)
        assert payload["coefficients"] == [
            {"partition": [3], "coefficient": "1/2"},
            {"partition": [1, 1, 1], "coefficient": "1/2"},
        ]
        assert cobordism_from_json(payload) == cls

    def test_series_json(self):
        law = fgl.universal_fgl(3)
        payload = json.loads(dump_json(series_to_json(law.F)))
        assert payload["truncation"] == ["u", "v"]
        assert payload["weights"] == [-1, -1, 1, 2, 3]
        assert {"exponents": [1, 1, 1, 0, 0], "coefficient": "-1"} in payload["terms"]
        assert series_from_json(payload) == law.F
        assert series_from_json(payload).table == law.F.table

    def test_chern_numbers(self):
        numbers = chern.chern_numbers(ProjSpace(3))
        assert chern_numbers_to_json(numbers) == {"c1^3": "64", "c1*c2": "24", "c3": "4"}
        frame = chern_numbers_frame({"P3": numbers})
        assert frame.loc["P3", "c1^3"] == "64"

    def test_coefficient_frame(self):
        coeffs = fgl.universal_fgl(3).coefficients()
        frame = coefficient_frame(coeffs, "a")
        row = frame[frame["coefficient"] == "a_1,2"].iloc[0]
        assert row["value"] == "p1**2 - p2"

    def test_pretty_polynomial(self):
        law = fgl.universal_fgl(2)
        assert pretty_polynomial(law.coefficient(1, 1)) == "-p1"

    def test_json_sorted(self):
        assert dump_json({"b": 1, "a": "x"}) == '{\n  "a": "x",\n  "b": 1\n}'
