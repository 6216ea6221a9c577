# src/services/campaign_runner.py
"""
Service: CampaignRunner

Responsável por:
- Resolver subject, variantes, relações e fixture de uma campanha
- Gerar (ou carregar) uma entrada fonte por trial, a mesma para todas as variantes
- Aplicar todas as relações selecionadas e acumular a matriz de detecção
"""
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

from ..core.config import load_settings
from ..core.exceptions import PhaseViolation
from ..core.fixtures import resolve_fixture
from ..core.models import CampaignConfig, HarnessSettings, Phase
from ..utils.logger import get_logger
from .mt_engine import apply_relation, oh_ratio, relation_rng, run_subject
from .mt_models import DetectionMatrix, Report, ReportEntry, VerdictKind
from .subjects import get_subject, subject_names

logger_default = get_logger("campaign_runner")


class CampaignRunner:
    def __init__(self, settings: Optional[HarnessSettings] = None, logger=logger_default):
        self.settings = settings or load_settings()
        self.logger = logger

    def run(self, config: CampaignConfig) -> Report:
        subject = get_subject(config.subject)
        variants = [subject.variant(v) for v in config.variants]
        relations = subject.select_relations(config.relations)

        # ✅ recusa variantes que escrevem antes de executar qualquer coisa
        if config.phase == Phase.PRODUCTION:
            writing = [v.name for v in variants if v.writes_data]
            if writing:
                raise PhaseViolation(
                    f"variante(s) {', '.join(writing)} de {subject.name} escrevem dados e não podem rodar na fase production"
                )

        fixture = None
        if config.fixture:
            fixture = subject.parse_fixture(resolve_fixture(config.fixture, subject.name))

        options = {"swap": config.swap} if config.swap else {}
        matrix = DetectionMatrix()
        for v in variants:
            for r in relations:
                matrix.ensure(subject.name, v.name, r.id)

        self.logger.info(
            f"Campanha {subject.name}: {len(variants)} variante(s) x {len(relations)} relação(ões), "
            f"{config.trials} trial(s), seed={config.seed}, fase={config.phase.value}"
        )

        entries: List[ReportEntry] = []
        for trial in range(config.trials):
            rng = relation_rng(config.seed, trial, f"source:{subject.name}")
            source_input = subject.make_source(rng, fixture, config, self.settings)

            for v in variants:
                source = run_subject(v, source_input, config.phase, self.settings)
                for r in relations:
                    verdict = apply_relation(
                        r, source, v,
                        phase=config.phase,
                        seed=config.seed,
                        trial=trial,
                        settings=self.settings,
                        options=options,
                    )
                    ratio = None
                    if verdict.kind in (VerdictKind.PASS, VerdictKind.FAIL) and source.cost.steps > 0:
                        ratio = oh_ratio(verdict, source)
                    matrix.record(subject.name, v.name, r.id, verdict.kind, ratio)
                    entries.append(
                        ReportEntry(
                            subject=subject.name,
                            variant=v.name,
                            relation_id=r.id,
                            trial=trial,
                            verdict=verdict.kind,
                            reason=verdict.reason,
                            source_cost=source.cost.steps,
                            derive_cost=verdict.derive_cost.steps,
                            check_cost=verdict.check_cost.steps,
                            oh_ratio=ratio,
                        )
                    )

        self.logger.info(f"Campanha {subject.name} concluída: {matrix.total_fails} FAIL(s)")

        meta = {
            "subject": subject.name,
            "variants": [v.name for v in variants],
            "relations": [r.descriptor.to_dict() for r in relations],
            "trials": config.trials,
            "seed": config.seed,
            "phase": config.phase.value,
            "fixture": config.fixture,
        }
        return Report(meta=meta, entries=entries, matrix=matrix)


def run_campaign(config: CampaignConfig, settings: Optional[HarnessSettings] = None) -> DetectionMatrix:
    return CampaignRunner(settings).run(config).matrix


def expand_subjects(subjects: Iterable[str]) -> List[str]:
    names: List[str] = []
    for s in subjects:
        if str(s).strip().lower() == "all":
            candidates = subject_names()
        else:
            candidates = [get_subject(s).name]
        for name in candidates:
            if name not in names:
                names.append(name)
    return names


def run_matrix(
    subjects: Sequence[str],
    trials: int,
    seed: int,
    settings: Optional[HarnessSettings] = None,
) -> DetectionMatrix:
    """Todas as variantes x todas as relações dos subjects, sobre entradas geradas"""
    runner = CampaignRunner(settings)
    matrix = DetectionMatrix()
    for name in expand_subjects(subjects):
        subject = get_subject(name)
        config = CampaignConfig(
            subject=name,
            variants=list(subject.variants),
            relations="all",
            trials=trials,
            seed=seed,
        )
        matrix = matrix.merge(runner.run(config).matrix)
    return matrix
