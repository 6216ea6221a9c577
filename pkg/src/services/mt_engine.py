# src/services/mt_engine.py
"""
Motor de teste metamórfico (independente de subject)

Responsável por:
- Executar uma variante sobre uma entrada e medir o custo em passos
- Aplicar uma relação metamórfica a uma execução fonte
- Calcular a razão oh: (derivação + verificação) / custo da fonte
"""
from __future__ import annotations

import zlib
from typing import Any, Dict, Optional

import numpy as np

from ..core.exceptions import ConfigError, PhaseViolation, UndefinedRatioError
from ..core.models import HarnessSettings, Phase
from ..utils.logger import get_logger
from .mt_models import CostMeter, Execution, Verdict, VerdictKind
from .subjects import get_subject
from .subjects.base import MetamorphicRelation, RelationContext, SubjectVariant

logger = get_logger("mt_engine")

NOT_PRODUCTION_SAFE = "not production-safe"


def relation_rng(seed: int, trial: int, stream: str) -> np.random.Generator:
    """Fluxo próprio por relação: incluir uma relação nova não altera os sorteios das outras"""
    return np.random.default_rng([seed % 2**32, trial, zlib.crc32(stream.encode("utf-8"))])


def run_subject(
    variant: SubjectVariant,
    subject_input: Any,
    phase: Phase = Phase.TESTING,
    settings: Optional[HarnessSettings] = None,
) -> Execution:
    if phase == Phase.PRODUCTION and variant.writes_data:
        raise PhaseViolation(f"variante {variant.subject}/{variant.name} escreve dados e não pode rodar na fase production")

    subject = get_subject(variant.subject)
    subject.validate(subject_input)

    meter = CostMeter()
    run = variant.fn(subject_input, meter, settings)
    return Execution(
        subject=subject.name,
        variant=variant.name,
        input=subject_input,
        output=run.output,
        cost=meter,
        wrote_data=bool(run.wrote),
        data=run.data,
    )


def apply_relation(
    relation: MetamorphicRelation,
    source: Execution,
    variant: SubjectVariant,
    phase: Phase = Phase.TESTING,
    seed: int = 0,
    trial: int = 0,
    settings: Optional[HarnessSettings] = None,
    options: Optional[Dict[str, Any]] = None,
) -> Verdict:
    if relation.subject != variant.subject:
        raise ConfigError(f"relação '{relation.id}' pertence a {relation.subject}, não a {variant.subject}")
    if source.subject != variant.subject or source.variant != variant.name:
        raise ConfigError(
            f"fonte produzida por {source.subject}/{source.variant}, não por {variant.subject}/{variant.name}"
        )
    if phase == Phase.PRODUCTION and variant.writes_data:
        raise PhaseViolation(f"variante {variant.subject}/{variant.name} escreve dados e não pode rodar na fase production")

    if phase == Phase.PRODUCTION and not relation.descriptor.production_safe:
        return Verdict(kind=VerdictKind.INAPPLICABLE, reason=NOT_PRODUCTION_SAFE, relation_id=relation.id)

    ctx = RelationContext(
        relation=relation.descriptor,
        source=source,
        variant=variant,
        phase=phase,
        rng=relation_rng(seed, trial, relation.id),
        settings=settings or HarnessSettings(),
        runner=run_subject,
        options=dict(options or {}),
    )
    verdict = relation.apply(ctx)

    if verdict.violations:
        for v in verdict.violations:
            logger.warning(f"PhaseViolation: {v}")
    logger.debug(
        f"{variant.subject}/{variant.name} {relation.id} trial={trial}: "
        f"{verdict.kind.value} {verdict.reason}".rstrip()
    )
    return verdict


def oh_ratio(verdict: Verdict, source: Execution) -> float:
    if verdict.kind == VerdictKind.INAPPLICABLE:
        raise UndefinedRatioError("razão oh indefinida para veredito inaplicável")
    if source.cost.steps == 0:
        raise UndefinedRatioError("razão oh indefinida: custo da fonte é zero")
    return (verdict.derive_cost.steps + verdict.check_cost.steps) / source.cost.steps
