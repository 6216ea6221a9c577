import json

import pytest

from src.core.exceptions import ConfigError, FixtureError, InputError, PhaseViolation
from src.core.models import CampaignConfig, HarnessSettings
from src.services.campaign_runner import CampaignRunner, run_campaign, run_matrix
from src.services.report_writer import render_json, report_to_dict
from src.services.subjects import get_subject


def campaign(**kwargs):
    return CampaignConfig(**kwargs)


# -------------------------
# Episódios reproduzidos com fixtures embutidas
# -------------------------
def test_binsearch_splitting_episode():
    matrix = run_campaign(campaign(
        subject="binsearch", variants=["mutant-split"], relations=["split-neighbors"],
        fixture="paper-3.1", key=25,
    ), HarnessSettings())
    assert matrix.row("mutant-split", "split-neighbors").fails == 1


def test_kth_initialization_episode():
    report = CampaignRunner(HarnessSettings()).run(campaign(
        subject="kth", variants=["mutant-init"], relations=["wrong-occurrence"],
        fixture="paper-3.2", key=1, k=2,
    ))
    assert report.has_failures
    assert [e.reason for e in report.failures()] == ["expected 5 got -1"]


def test_shortest_path_reverse_episode():
    matrix = run_campaign(campaign(
        subject="dijkstra", variants=["mutant-relax", "correct"], relations="all",
        fixture="fig1-like", src="c", dst="a",
    ), HarnessSettings())
    assert matrix.row("mutant-relax", "reverse").fails == 1
    for relation_id in get_subject("shortest-path").relations:
        assert matrix.row("correct", relation_id).fails == 0


def test_gauss_row_swap_episode():
    matrix = run_campaign(campaign(
        subject="gauss", variants=["mutant-pivot"], relations=["residual", "row-swap"],
        fixture="paper-3.4", swap=(2, 3),
    ), HarnessSettings())
    assert matrix.row("mutant-pivot", "residual").passes == 1
    assert matrix.row("mutant-pivot", "row-swap").fails == 1


def test_gauss_correct_fixture_is_sound():
    matrix = run_campaign(campaign(
        subject="gauss", variants=["correct"], fixture="paper-3.4", trials=100, seed=7,
    ), HarnessSettings())
    assert matrix.total_fails == 0


# -------------------------
# Configuração e erros
# -------------------------
def test_writing_mutant_refused_before_execution():
    with pytest.raises(PhaseViolation):
        CampaignRunner(HarnessSettings()).run(campaign(
            subject="binsearch", variants=["correct", "mutant-overwrite"], phase="production",
        ))


def test_fixture_of_other_subject():
    with pytest.raises(ConfigError):
        run_campaign(campaign(subject="kth", variants=["correct"], fixture="paper-3.1"), HarnessSettings())


def test_unknown_fixture():
    with pytest.raises(FixtureError):
        run_campaign(campaign(subject="kth", variants=["correct"], fixture="no-such-fixture"), HarnessSettings())


def test_fixture_file(tmp_path):
    path = tmp_path / "graph.json"
    path.write_text(json.dumps({"n": 3, "directed": True, "edges": [[1, 2, 2], [2, 3, 2], [1, 3, 9]]}))
    report = CampaignRunner(HarnessSettings()).run(campaign(
        subject="shortest-path", variants=["correct"], fixture=str(path), src=1, dst=3,
    ))
    assert not report.has_failures
    assert report.matrix.row("correct", "reverse").inapplicable == 1
    assert report.matrix.row("correct", "split").passes == 1


def test_invalid_source_override_is_input_error():
    with pytest.raises(InputError):
        run_campaign(campaign(subject="kth", variants=["correct"], fixture="paper-3.2", key=1, k=9), HarnessSettings())


def test_unknown_relation():
    with pytest.raises(ConfigError):
        run_campaign(campaign(subject="gauss", variants=["correct"], relations=["reverse"]), HarnessSettings())


# -------------------------
# Matriz e determinismo
# -------------------------
def test_matrix_accounting():
    matrix = run_matrix(["binsearch", "kth"], trials=30, seed=1, settings=HarnessSettings())
    assert len(matrix.rows) == 3 * 4 + 3 * 5
    for row in matrix.rows.values():
        assert row.trials == 30
        assert row.trials == row.passes + row.fails + row.abandoned + row.inapplicable
        assert row.ratio_count <= row.passes + row.fails


def test_reports_are_byte_identical():
    config = campaign(subject="kth", variants=["correct", "mutant-init"], trials=25, seed=9)
    first = render_json(report_to_dict(CampaignRunner(HarnessSettings()).run(config)))
    second = render_json(report_to_dict(CampaignRunner(HarnessSettings()).run(config)))
    assert first == second


def test_report_meta_carries_relation_descriptors():
    report = CampaignRunner(HarnessSettings()).run(campaign(subject="binsearch", variants=["correct"], seed=2))
    ids = [r["id"] for r in report.meta["relations"]]
    assert ids == ["position-check", "random-probe", "gap-probe", "split-neighbors"]
    gap = report.meta["relations"][2]
    assert gap["production_safe"] is False
    assert gap["suspected_error"] == "Overwriting error"


@pytest.mark.slow
@pytest.mark.parametrize("subject", ["binsearch", "kth", "shortest-path", "gauss"])
def test_correct_variants_are_sound_10k(subject):
    matrix = run_campaign(campaign(subject=subject, variants=["correct"], trials=10_000, seed=1), HarnessSettings())
    assert matrix.total_fails == 0
    for row in matrix.rows.values():
        assert row.trials == 10_000
