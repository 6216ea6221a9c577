import numpy as np
import pytest

from src.core.exceptions import ConfigError, PhaseViolation, UndefinedRatioError
from src.core.models import CampaignConfig, HarnessSettings, Phase
from src.services.mt_engine import apply_relation, oh_ratio, relation_rng, run_subject
from src.services.mt_models import CostMeter, DetectionMatrix, Verdict, VerdictKind
from src.services.subjects import get_subject
from src.services.subjects.base import SubjectVariant, VariantRun
from src.services.subjects.binsearch import BinSearchInput, SortedFixture, binsearch_correct
from src.services.subjects.kth import KthInput, UnsortedFixture

SAMPLE = SortedFixture.of([4, 6, 10, 15, 18, 25, 40])
BIN = get_subject("binsearch")


def test_cost_meter_only_grows():
    meter = CostMeter()
    meter.tick()
    meter.tick(3)
    assert meter.steps == 4
    with pytest.raises(ValueError):
        meter.tick(-1)
    meter.reset()
    assert meter.steps == 0


def test_run_subject_is_deterministic():
    v = BIN.variant("correct")
    assert run_subject(v, BinSearchInput(25, SAMPLE)) == run_subject(v, BinSearchInput(25, SAMPLE))


def test_kth_example_through_engine():
    v = get_subject("kth").variant("correct")
    execution = run_subject(v, KthInput(1, 2, UnsortedFixture.of([1, 3, 1, 4, 1, 3, 2])))
    assert execution.output == 3
    assert execution.subject == "kth"
    assert execution.cost.steps > 0


def test_writing_variant_is_refused_in_production():
    with pytest.raises(PhaseViolation):
        run_subject(BIN.variant("mutant-overwrite"), BinSearchInput(5, SAMPLE), Phase.PRODUCTION)


def test_relation_from_other_subject_is_config_error():
    v = BIN.variant("correct")
    source = run_subject(v, BinSearchInput(25, SAMPLE))
    with pytest.raises(ConfigError):
        apply_relation(get_subject("kth").relation("position-check"), source, v)


def test_source_from_other_variant_is_config_error():
    source = run_subject(BIN.variant("correct"), BinSearchInput(25, SAMPLE))
    with pytest.raises(ConfigError):
        apply_relation(BIN.relation("split-neighbors"), source, BIN.variant("mutant-split"))


def test_unknown_identifiers_are_config_errors():
    with pytest.raises(ConfigError):
        get_subject("quicksort")
    with pytest.raises(ConfigError):
        BIN.variant("mutant-x")
    with pytest.raises(ConfigError):
        BIN.relation("reverse")


def test_subject_aliases():
    assert get_subject("dijkstra").name == "shortest-path"
    assert get_subject("linear-solver").name == "gauss"


def test_undeclared_write_in_production_is_a_fail():
    def leaky(inp, meter, settings=None):
        run = binsearch_correct(inp, meter)
        return VariantRun(run.output, run.data, True)

    v = SubjectVariant(subject="binsearch", name="leaky", fn=leaky)
    source = run_subject(v, BinSearchInput(25, SAMPLE), Phase.PRODUCTION)
    verdict = apply_relation(BIN.relation("split-neighbors"), source, v, phase=Phase.PRODUCTION)
    assert verdict.kind == VerdictKind.FAIL
    assert verdict.reason == "production-write"
    assert len(verdict.violations) == 2


def test_production_followups_never_write():
    settings = HarnessSettings()
    config = CampaignConfig(subject="binsearch", variants=["correct"], size=32)
    for subject_name in ("binsearch", "kth"):
        subj = get_subject(subject_name)
        for trial in range(50):
            source_input = subj.make_source(relation_rng(3, trial, "source"), None, config)
            for v in subj.variants.values():
                if v.writes_data:
                    continue
                source = run_subject(v, source_input, Phase.PRODUCTION)
                for relation in subj.relations.values():
                    verdict = apply_relation(relation, source, v, phase=Phase.PRODUCTION, trial=trial, settings=settings)
                    assert not any(f.wrote_data for f in verdict.followups)
                    assert verdict.reason != "production-write"


def test_relation_streams_are_independent():
    a = relation_rng(1, 0, "split").integers(0, 10**9, size=4)
    b = relation_rng(1, 0, "split").integers(0, 10**9, size=4)
    c = relation_rng(1, 0, "trim").integers(0, 10**9, size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_oh_ratio():
    v = BIN.variant("correct")
    source = run_subject(v, BinSearchInput(25, SAMPLE))
    verdict = apply_relation(BIN.relation("position-check"), source, v)
    assert oh_ratio(verdict, source) == pytest.approx(3 / 5)


def test_oh_ratio_undefined_cases():
    v = BIN.variant("correct")
    empty = run_subject(v, BinSearchInput(1, SortedFixture.of([])))
    with pytest.raises(UndefinedRatioError):
        oh_ratio(Verdict(kind=VerdictKind.PASS), empty)
    source = run_subject(v, BinSearchInput(5, SAMPLE))
    inapplicable = apply_relation(BIN.relation("position-check"), source, v)
    with pytest.raises(UndefinedRatioError):
        oh_ratio(inapplicable, source)


def test_detection_matrix_accounting_and_merge():
    left = DetectionMatrix()
    left.record("kth", "correct", "random-probe", VerdictKind.PASS, 0.5)
    left.record("kth", "correct", "random-probe", VerdictKind.ABANDONED)
    right = DetectionMatrix()
    right.record("kth", "correct", "random-probe", VerdictKind.FAIL, 1.5)

    merged = left.merge(right)
    row = merged.row("correct", "random-probe")
    assert (row.trials, row.passes, row.fails, row.abandoned) == (3, 1, 1, 1)
    assert row.mean_oh_ratio == pytest.approx(1.0)
    assert left.row("correct", "random-probe").trials == 2
    with pytest.raises(KeyError):
        merged.row("correct", "split")


def test_diagnostics_are_in_portuguese():
    with pytest.raises(ConfigError, match="variante desconhecida 'mutant-x'"):
        BIN.variant("mutant-x")
    with pytest.raises(ConfigError, match="relação desconhecida 'reverse'"):
        BIN.relation("reverse")
    with pytest.raises(ConfigError, match="subject desconhecido 'quicksort'"):
        get_subject("quicksort")
    with pytest.raises(PhaseViolation, match="não pode rodar na fase production"):
        run_subject(BIN.variant("mutant-overwrite"), BinSearchInput(5, SAMPLE), Phase.PRODUCTION)
    source = run_subject(BIN.variant("correct"), BinSearchInput(25, SAMPLE))
    with pytest.raises(ConfigError, match="pertence a kth"):
        apply_relation(get_subject("kth").relation("position-check"), source, BIN.variant("correct"))
