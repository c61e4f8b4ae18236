import json
import logging

from grasscalc import cache
from grasscalc.grassmann import GrassSpec, _monomial_class, box_product
from grasscalc.pipelines import class_coefficients, fixed_locus_class
from grasscalc.symfunc import _lr_cached


def test_put_get_round_trip(tmp_path):
    store = cache.DiskCache(tmp_path)
    store.put("a", [1, 2])
    store.put("a", [9])  # first value wins, no duplicate line
    assert store.get("a") == [1, 2]
    assert "a" in store
    again = cache.DiskCache(tmp_path)
    assert again.get("a") == [1, 2]
    assert len(again) == 1
    assert len((tmp_path / cache.FILENAME).read_text().splitlines()) == 1


def test_corrupt_lines_are_skipped(tmp_path, caplog):
    path = tmp_path / cache.FILENAME
    path.write_text('{"key": "good", "value": 3}\nnot json\n{"value": 1}\n\n', encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        store = cache.DiskCache(tmp_path)
    assert store.get("good") == 3
    assert len(store) == 1
    assert sum("corrupt" in rec.message for rec in caplog.records) == 2


def test_environment_and_disable(tmp_path, monkeypatch):
    assert cache.active_cache() is None
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    assert cache.active_cache() is not None
    cache.set_enabled(False)
    assert cache.active_cache() is None


def test_cache_is_a_pure_memo(tmp_path, monkeypatch):
    spec = GrassSpec(3, 6)
    plain = box_product(spec, (2, 1, 0), (2, 1, 0))
    baseline = class_coefficients(fixed_locus_class(1))
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    _lr_cached.cache_clear()
    _monomial_class.cache_clear()
    cold = class_coefficients(fixed_locus_class(1))
    assert (tmp_path / cache.FILENAME).exists()
    cache.reset()
    _lr_cached.cache_clear()
    _monomial_class.cache_clear()
    warm = class_coefficients(fixed_locus_class(1))
    assert cold == warm == baseline
    assert box_product(spec, (2, 1, 0), (2, 1, 0)) == plain
    lines = (tmp_path / cache.FILENAME).read_text().splitlines()
    assert all(json.loads(line)["key"].startswith("lr:") for line in lines)
