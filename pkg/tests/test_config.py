import json
import re
from pathlib import Path

import pytest

from src.core.config import load_campaign_config, load_settings, parse_campaign_config
from src.core.exceptions import ConfigError, FixtureError
from src.core.fixtures import list_fixtures, load_fixture_document, resolve_fixture
from src.core.models import HarnessSettings, Phase


# -------------------------
# settings.json
# -------------------------
def test_bundled_settings_match_defaults():
    assert load_settings() == HarnessSettings()


def test_missing_settings_file_uses_defaults(tmp_path):
    settings = load_settings(tmp_path / "nao_existe.json")
    assert settings.widening_attempts == 5
    assert settings.tolerance == 1e-9


def test_partial_settings_file(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"harness": {"random_probes": 3}}))
    settings = load_settings(path)
    assert settings.random_probes == 3
    assert settings.gap_span == 16


def test_broken_settings_json(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text("{ harness: ")
    with pytest.raises(ConfigError):
        load_settings(path)


def test_invalid_settings_value(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"harness": {"widening_attempts": 0}}))
    with pytest.raises(ConfigError):
        load_settings(path)


# -------------------------
# Campanhas
# -------------------------
def test_campaign_defaults():
    config = parse_campaign_config({"subject": "kth", "variants": ["correct"]})
    assert config.relations == "all"
    assert config.trials == 1
    assert config.phase == Phase.TESTING


def test_relations_all_in_a_list():
    config = parse_campaign_config({"subject": "kth", "variants": ["correct"], "relations": ["all"]})
    assert config.relations == "all"


def test_vertex_refs_become_strings():
    config = parse_campaign_config({"subject": "shortest-path", "variants": ["correct"], "src": 1, "dst": 3})
    assert (config.src, config.dst) == ("1", "3")


@pytest.mark.parametrize("data", [
    {"subject": "kth", "variants": ["correct"], "trials": 0},
    {"subject": "kth", "variants": []},
    {"subject": "  ", "variants": ["correct"]},
    {"subject": "kth", "variants": ["correct"], "phase": "staging"},
    {"variants": ["correct"]},
])
def test_invalid_campaigns(data):
    with pytest.raises(ConfigError):
        parse_campaign_config(data)


def test_missing_campaign_file(tmp_path):
    with pytest.raises(ConfigError):
        load_campaign_config(tmp_path / "campanha.json")


def test_campaign_file(tmp_path):
    path = tmp_path / "campanha.json"
    path.write_text(json.dumps({"subject": "gauss", "variants": ["mutant-pivot"], "swap": [2, 3]}))
    assert load_campaign_config(path).swap == (2, 3)


# -------------------------
# Fixtures
# -------------------------
def test_builtin_fixtures():
    ids = [f.id for f in list_fixtures()]
    assert ids == ["paper-3.1", "paper-3.2", "paper-3.4", "fig1-like"]


def test_unknown_fixture():
    with pytest.raises(FixtureError):
        load_fixture_document("nenhuma")


def test_fixture_file_must_be_an_object(tmp_path):
    path = tmp_path / "lista.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(FixtureError):
        load_fixture_document(str(path))


def test_fixture_subject_mismatch():
    with pytest.raises(ConfigError):
        resolve_fixture("paper-3.4", "binsearch")


def test_fixture_document_is_a_copy():
    document = resolve_fixture("fig1-like", "shortest-path")
    document["labels"].append("e")
    assert resolve_fixture("fig1-like", "shortest-path")["labels"] == ["a", "b", "c", "d"]


# -------------------------
# Manifesto
# -------------------------
ROOT = Path(__file__).resolve().parent.parent


def _requirements():
    names = []
    for line in (ROOT / "requirements.txt").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.append(re.split(r"[<>=!~\[;]", line, maxsplit=1)[0].strip())
    return names


def test_every_requirement_is_imported():
    sources = "\n".join(
        p.read_text(encoding="utf-8")
        for folder in ("src", "tests")
        for p in (ROOT / folder).rglob("*.py")
    )
    for name in _requirements():
        module = name.lower().replace("-", "_")
        assert re.search(rf"^\s*(import|from) {module}\b", sources, re.MULTILINE), name
