import pytest

from src.core.models import HarnessSettings, Phase
from src.services.mt_engine import apply_relation, run_subject
from src.services.subjects import get_subject


@pytest.fixture
def settings():
    return HarnessSettings()


@pytest.fixture
def run(settings):
    """run(subject, variant, entrada, fase) -> Execution"""
    def _run(subject, variant, subject_input, phase=Phase.TESTING):
        return run_subject(get_subject(subject).variant(variant), subject_input, phase, settings)
    return _run


@pytest.fixture
def check(settings):
    """check(subject, variant, relação, entrada, ...) -> Verdict (executa a fonte e aplica a relação)"""
    def _check(subject, variant, relation_id, subject_input, phase=Phase.TESTING, seed=0, trial=0, options=None):
        subj = get_subject(subject)
        v = subj.variant(variant)
        source = run_subject(v, subject_input, phase, settings)
        return apply_relation(
            subj.relation(relation_id), source, v,
            phase=phase, seed=seed, trial=trial, settings=settings, options=options,
        )
    return _check
