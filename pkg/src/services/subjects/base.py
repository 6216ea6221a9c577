from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from ...core.exceptions import ConfigError
from ...core.models import CampaignConfig, HarnessSettings, Phase
from ..mt_models import CostMeter, Execution, RelationDescriptor, Verdict, VerdictKind


class VariantRun(NamedTuple):
    output: Any
    data: Optional[Tuple[Any, ...]] = None
    wrote: bool = False


VariantFn = Callable[[Any, CostMeter, Optional[HarnessSettings]], VariantRun]
Runner = Callable[["SubjectVariant", Any, Phase, Optional[HarnessSettings]], Execution]


class ArrayView:
    """Cópia privada de um vetor com acesso 1-based; cada leitura/escrita custa 1 passo."""

    def __init__(self, elements: Iterable[Any], meter: CostMeter) -> None:
        self._items = list(elements)
        self.meter = meter
        self.wrote = False

    def __len__(self) -> int:
        return len(self._items)

    def read(self, i: int) -> Any:
        self.meter.tick()
        return self._items[i - 1]

    def write(self, i: int, value: Any) -> None:
        self.meter.tick()
        self._items[i - 1] = value
        self.wrote = True

    def compare(self) -> None:
        self.meter.tick()

    def snapshot(self) -> Tuple[Any, ...]:
        return tuple(self._items)


@dataclass(frozen=True)
class SubjectVariant:
    subject: str
    name: str
    fn: VariantFn
    writes_data: bool = False
    description: str = ""


@dataclass
class RelationContext:
    """Estado de uma aplicação de relação: fonte, medidores, follow-ups e a visão de dados compartilhada."""
    relation: RelationDescriptor
    source: Execution
    variant: SubjectVariant
    phase: Phase
    rng: np.random.Generator
    settings: HarnessSettings
    runner: Runner
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.derive = CostMeter()
        self.check = CostMeter()
        self.followups: List[Execution] = []
        self.violations: List[str] = []
        self.failures: List[str] = []
        self.data: Optional[List[Any]] = None if self.source.data is None else list(self.source.data)

    # -------------------------
    # Derivação
    # -------------------------
    def read(self, i: int) -> Any:
        """Lê A[i] da visão de dados (1-based), cobrando na derivação."""
        self.derive.tick()
        return self.data[i - 1]

    def snapshot(self) -> Tuple[Any, ...]:
        return tuple(self.data)

    def draw(self, lo: int, hi: int) -> int:
        """Inteiro uniforme em [lo..hi]."""
        return int(self.rng.integers(lo, hi + 1))

    def run(self, subject_input: Any) -> Execution:
        execution = self.runner(self.variant, subject_input, self.phase, self.settings)
        self.followups.append(execution)
        if execution.data is not None:
            self.data = list(execution.data)
        if self.phase == Phase.PRODUCTION and execution.wrote_data:
            self.violations.append(
                f"follow-up #{len(self.followups)} de {self.variant.name} escreveu dados em produção"
            )
        return execution

    # -------------------------
    # Verificação
    # -------------------------
    def expect(self, ok: bool, reason: str) -> bool:
        self.check.tick()
        if not ok:
            self.failures.append(reason)
        return ok

    def expect_equal(self, got: Any, expected: Any) -> bool:
        return self.expect(got == expected, f"expected {expected} got {got}")

    # -------------------------
    # Vereditos
    # -------------------------
    def _make(self, kind: VerdictKind, reason: str = "") -> Verdict:
        return Verdict(
            kind=kind,
            reason=reason,
            derive_cost=self.derive,
            check_cost=self.check,
            followups=list(self.followups),
            violations=list(self.violations),
            relation_id=self.relation.id,
        )

    def verdict(self) -> Verdict:
        if self.violations:
            return self._make(VerdictKind.FAIL, "production-write")
        if self.failures:
            return self._make(VerdictKind.FAIL, self.failures[0])
        return self._make(VerdictKind.PASS)

    def fail(self, reason: str) -> Verdict:
        self.failures.append(reason)
        return self.verdict()

    def abandon(self, reason: str) -> Verdict:
        if self.violations:
            return self.verdict()
        return self._make(VerdictKind.ABANDONED, reason)

    def inapplicable(self, reason: str) -> Verdict:
        return self._make(VerdictKind.INAPPLICABLE, reason)


RelationFn = Callable[[RelationContext], Verdict]


@dataclass(frozen=True)
class MetamorphicRelation:
    descriptor: RelationDescriptor
    apply: RelationFn

    @property
    def id(self) -> str:
        return self.descriptor.id

    @property
    def subject(self) -> str:
        return self.descriptor.subject


SourceFactory = Callable[[np.random.Generator, Optional[Any], CampaignConfig, Optional[HarnessSettings]], Any]


@dataclass
class Subject:
    name: str
    variants: Dict[str, SubjectVariant]
    relations: Dict[str, MetamorphicRelation]
    validate: Callable[[Any], None]
    make_source: SourceFactory
    parse_fixture: Callable[[dict], Any]
    aliases: Tuple[str, ...] = ()

    def variant(self, name: str) -> SubjectVariant:
        v = self.variants.get(name)
        if v is None:
            raise ConfigError(f"variante desconhecida '{name}' para o subject {self.name}")
        return v

    def relation(self, relation_id: str) -> MetamorphicRelation:
        r = self.relations.get(relation_id)
        if r is None:
            raise ConfigError(f"relação desconhecida '{relation_id}' para o subject {self.name}")
        return r

    def select_relations(self, selected: Union[str, Sequence[str]]) -> List[MetamorphicRelation]:
        if selected == "all":
            return list(self.relations.values())
        return [self.relation(r) for r in selected]


def variant(subject: str, name: str, *, writes_data: bool = False, description: str = "") -> Callable[[VariantFn], VariantFn]:
    """Registra a função como variante do subject (usado pelos módulos de subject)."""
    def deco(fn: VariantFn) -> VariantFn:
        fn.__variant__ = SubjectVariant(subject=subject, name=name, fn=fn, writes_data=writes_data, description=description)
        return fn
    return deco


def relation(subject: str, relation_id: str, suspected_error: str, *, production_safe: bool = True) -> Callable[[RelationFn], RelationFn]:
    """Registra a função como relação metamórfica do subject."""
    def deco(fn: RelationFn) -> RelationFn:
        fn.__relation__ = MetamorphicRelation(
            descriptor=RelationDescriptor(
                id=relation_id,
                subject=subject,
                suspected_error=suspected_error,
                production_safe=production_safe,
            ),
            apply=fn,
        )
        return fn
    return deco


def collect_variants(*fns: VariantFn) -> Dict[str, SubjectVariant]:
    return {f.__variant__.name: f.__variant__ for f in fns}


def collect_relations(*fns: RelationFn) -> Dict[str, MetamorphicRelation]:
    return {f.__relation__.id: f.__relation__ for f in fns}
