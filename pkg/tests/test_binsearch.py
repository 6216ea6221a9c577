import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from src.core.exceptions import InputError
from src.core.models import CampaignConfig, HarnessSettings, Phase
from src.services.campaign_runner import CampaignRunner
from src.services.mt_engine import apply_relation, run_subject
from src.services.mt_models import VerdictKind
from src.services.subjects import get_subject
from src.services.subjects.binsearch import BinSearchInput, SortedFixture, select_gap_value

SAMPLE = SortedFixture.of([4, 6, 10, 15, 18, 25, 40])
SUBJECT = "binsearch"


def query(key, fixture=SAMPLE):
    return BinSearchInput(key, fixture)


def linear_oracle(elements, key):
    for i, v in enumerate(elements, start=1):
        if v == key:
            return i
    return -1


# -------------------------
# Variantes
# -------------------------
@pytest.mark.parametrize("key, expected", [(25, 6), (5, -1), (4, 1), (40, 7), (41, -1)])
def test_correct_on_sample_array(run, key, expected):
    assert run(SUBJECT, "correct", query(key)).output == expected


def test_correct_singleton_hit(run):
    assert run(SUBJECT, "correct", query(7, SortedFixture.of([7]))).output == 1


def test_correct_on_empty_range(run):
    execution = run(SUBJECT, "correct", query(3, SortedFixture.of([])))
    assert execution.output == -1
    assert execution.cost.steps == 0


@pytest.mark.parametrize("key, expected", [(25, 6), (18, -1), (40, -1)])
def test_mutant_split_drops_right_neighbor(run, key, expected):
    assert run(SUBJECT, "mutant-split", query(key)).output == expected


def test_mutant_overwrite_hit_path_is_correct(run):
    execution = run(SUBJECT, "mutant-overwrite", query(25))
    assert execution.output == 6
    assert execution.wrote_data is False


def test_mutant_overwrite_writes_key_on_miss(run):
    execution = run(SUBJECT, "mutant-overwrite", query(5))
    assert execution.output == 1
    assert execution.wrote_data is True
    assert execution.data[0] == 5
    # a cópia privada não vaza para a fixture
    assert SAMPLE.elements[0] == 4


def test_probe_cost_counts_reads_and_comparisons(run):
    # 15 (miss, 3 passos) e 25 (hit, 2 passos)
    assert run(SUBJECT, "correct", query(25)).cost.steps == 5


def test_unsorted_fixture_is_input_error(run):
    with pytest.raises(InputError):
        run(SUBJECT, "correct", query(3, SortedFixture.of([5, 3, 9])))


def test_bounds_outside_array_are_input_error(run):
    with pytest.raises(InputError):
        run(SUBJECT, "correct", query(3, SortedFixture.of([1, 2, 3], lo=1, hi=5)))


@hsettings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(-50, 50), unique=True, max_size=64).map(sorted),
    st.integers(-60, 60),
)
def test_correct_agrees_with_linear_scan(elements, key):
    v = get_subject(SUBJECT).variant("correct")
    assert run_subject(v, query(key, SortedFixture.of(elements))).output == linear_oracle(elements, key)


@pytest.mark.slow
def test_correct_agrees_with_linear_scan_10k():
    rng = np.random.default_rng(2024)
    v = get_subject(SUBJECT).variant("correct")
    for _ in range(10_000):
        n = int(rng.integers(0, 65))
        elements = sorted(rng.choice(4 * n + 8, size=n, replace=False).tolist())
        key = int(rng.integers(-2, 4 * n + 10))
        assert run_subject(v, query(key, SortedFixture.of(elements))).output == linear_oracle(elements, key)


# -------------------------
# select_gap_value
# -------------------------
def test_gap_value_first_window_of_sample_array():
    assert select_gap_value(SAMPLE, 6, 25, 5) == 19


def test_gap_value_random_draws_stay_in_window():
    allowed = set(range(19, 25)) | set(range(26, 40))
    for seed in range(50):
        y = select_gap_value(SAMPLE, 6, 25, 5, rng=np.random.default_rng(seed))
        assert y in allowed


def test_gap_value_singleton_uses_infinite_window():
    y = select_gap_value(SortedFixture.of([7]), 1, 7, 1)
    assert y is not None and y != 7


def test_gap_value_widens_when_window_is_full():
    fixture = SortedFixture.of([4, 5, 6])
    assert select_gap_value(fixture, 2, 5, 1) is None
    y = select_gap_value(fixture, 2, 5, 2, rng=np.random.default_rng(3))
    assert y is not None and y not in {4, 5, 6}


def test_gap_value_rejects_bad_arguments():
    with pytest.raises(InputError):
        select_gap_value(SAMPLE, 8, 25, 5)
    with pytest.raises(InputError):
        select_gap_value(SAMPLE, 6, 25, 0)


@hsettings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(-40, 40), unique=True, min_size=1, max_size=40).map(sorted),
    st.data(),
)
def test_gap_value_is_never_in_the_array(elements, data):
    fixture = SortedFixture.of(elements)
    k = data.draw(st.integers(1, len(elements)))
    seed = data.draw(st.integers(0, 2**16))
    y = select_gap_value(fixture, k, elements[k - 1], 5, rng=np.random.default_rng(seed))
    if y is not None:
        assert y not in elements


# -------------------------
# Relações
# -------------------------
def test_split_neighbors_reveals_splitting_error(check):
    verdict = check(SUBJECT, "mutant-split", "split-neighbors", query(25))
    assert verdict.kind == VerdictKind.FAIL
    assert verdict.reason == "expected 5 got -1"
    assert [f.input.key for f in verdict.followups] == [18, 40]


def test_split_neighbors_passes_on_correct(check):
    verdict = check(SUBJECT, "correct", "split-neighbors", query(25))
    assert verdict.kind == VerdictKind.PASS
    assert len(verdict.followups) == 2


def test_split_neighbors_singleton_is_inapplicable(check):
    verdict = check(SUBJECT, "correct", "split-neighbors", query(7, SortedFixture.of([7])))
    assert verdict.kind == VerdictKind.INAPPLICABLE


def test_split_neighbors_substitutes_missing_neighbor(check):
    verdict = check(SUBJECT, "correct", "split-neighbors", query(3, SortedFixture.of([3, 9])))
    assert verdict.kind == VerdictKind.PASS
    assert [f.input.key for f in verdict.followups] == [9]


def test_position_check(check):
    assert check(SUBJECT, "correct", "position-check", query(25)).kind == VerdictKind.PASS
    assert check(SUBJECT, "correct", "position-check", query(5)).kind == VerdictKind.INAPPLICABLE


def test_position_check_is_fooled_by_overwrite(check):
    # o mutante grava a chave onde "encontrou": a checagem simples passa
    assert check(SUBJECT, "mutant-overwrite", "position-check", query(5)).kind == VerdictKind.PASS


def test_random_probe_on_absent_key(check):
    verdict = check(SUBJECT, "correct", "random-probe", query(5))
    assert verdict.kind == VerdictKind.PASS
    assert len(verdict.followups) == 1
    assert check(SUBJECT, "correct", "random-probe", query(5, SortedFixture.of([]))).kind == VerdictKind.INAPPLICABLE


def test_random_probe_count_is_configurable():
    subj = get_subject(SUBJECT)
    v = subj.variant("correct")
    source = run_subject(v, query(5))
    verdict = apply_relation(subj.relation("random-probe"), source, v, settings=HarnessSettings(random_probes=4))
    assert verdict.kind == VerdictKind.PASS
    assert len(verdict.followups) == 4


def test_gap_probe_passes_on_correct(check):
    verdict = check(SUBJECT, "correct", "gap-probe", query(25))
    assert verdict.kind == VerdictKind.PASS
    assert verdict.followups[0].output == -1


def test_gap_probe_reveals_overwriting_error(check):
    verdict = check(SUBJECT, "mutant-overwrite", "gap-probe", query(5))
    assert verdict.kind == VerdictKind.FAIL
    assert verdict.reason == "expected -1 got 1"


def test_gap_probe_abandons_when_no_gap_exists():
    subj = get_subject(SUBJECT)
    v = subj.variant("correct")
    source = run_subject(v, query(5, SortedFixture.of([4, 5, 6])))
    verdict = apply_relation(subj.relation("gap-probe"), source, v, settings=HarnessSettings(widening_attempts=1))
    assert verdict.kind == VerdictKind.ABANDONED
    assert verdict.reason


def test_gap_probe_is_not_production_safe(check):
    verdict = check(SUBJECT, "correct", "gap-probe", query(25), phase=Phase.PRODUCTION)
    assert verdict.kind == VerdictKind.INAPPLICABLE
    assert verdict.reason == "not production-safe"


@hsettings(max_examples=150, deadline=None)
@given(
    st.lists(st.integers(0, 80), unique=True, max_size=40).map(sorted),
    st.integers(-5, 85),
    st.integers(0, 1000),
)
def test_relations_never_fail_on_correct(elements, key, seed):
    subj = get_subject(SUBJECT)
    v = subj.variant("correct")
    source = run_subject(v, query(key, SortedFixture.of(elements)))
    for relation in subj.relations.values():
        verdict = apply_relation(relation, source, v, seed=seed)
        assert verdict.kind != VerdictKind.FAIL, (relation.id, verdict.reason)


# -------------------------
# Custo (propriedade oh)
# -------------------------
def test_oh_ratio_below_one_at_large_n():
    config = CampaignConfig(subject=SUBJECT, variants=["correct"], trials=500, seed=11, size=4096)
    report = CampaignRunner(HarnessSettings()).run(config)
    ratios = [e.oh_ratio for e in report.entries if e.oh_ratio is not None]
    assert len(ratios) >= 500
    below = sum(1 for r in ratios if r < 1)
    assert below >= 0.99 * len(ratios)


@pytest.mark.parametrize("size", [7, 16, 64])
def test_mutant_split_detected_on_random_arrays(size):
    config = CampaignConfig(subject=SUBJECT, variants=["mutant-split"], trials=200, seed=5, size=size)
    matrix = CampaignRunner(HarnessSettings()).run(config).matrix
    assert matrix.row("mutant-split", "split-neighbors").fails > 0
    assert matrix.row("mutant-split", "random-probe").fails > 0
