# src/services/mt_models.py

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple


class VerdictKind(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    ABANDONED = "abandoned"
    INAPPLICABLE = "inapplicable"


@dataclass
class CostMeter:
    """Contador abstrato de passos (leituras, escritas, comparações, relaxações, operações de linha)."""
    steps: int = 0

    def tick(self, n: int = 1) -> None:
        if n < 0:
            raise ValueError("CostMeter só cresce")
        self.steps += n

    def reset(self) -> None:
        self.steps = 0


@dataclass
class Execution:
    subject: str
    variant: str
    input: Any
    output: Any
    cost: CostMeter
    wrote_data: bool = False

    # conteúdo da visão de dados depois da execução (subjects de vetor)
    data: Optional[Tuple[Any, ...]] = None


@dataclass
class Verdict:
    kind: VerdictKind
    reason: str = ""
    derive_cost: CostMeter = field(default_factory=CostMeter)
    check_cost: CostMeter = field(default_factory=CostMeter)
    followups: List[Execution] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    relation_id: str = ""


@dataclass(frozen=True)
class RelationDescriptor:
    id: str
    subject: str
    suspected_error: str
    production_safe: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "subject": self.subject,
            "suspected_error": self.suspected_error,
            "production_safe": self.production_safe,
        }


@dataclass
class MatrixRow:
    subject: str
    variant: str
    relation: str
    trials: int = 0
    passes: int = 0
    fails: int = 0
    abandoned: int = 0
    inapplicable: int = 0
    ratio_sum: float = 0.0
    ratio_count: int = 0

    @property
    def mean_oh_ratio(self) -> Optional[float]:
        if self.ratio_count == 0:
            return None
        return self.ratio_sum / self.ratio_count

    def add(self, kind: VerdictKind, ratio: Optional[float] = None) -> None:
        self.trials += 1
        if kind == VerdictKind.PASS:
            self.passes += 1
        elif kind == VerdictKind.FAIL:
            self.fails += 1
        elif kind == VerdictKind.ABANDONED:
            self.abandoned += 1
        else:
            self.inapplicable += 1
        if ratio is not None:
            self.ratio_sum += ratio
            self.ratio_count += 1

    def merge(self, other: MatrixRow) -> None:
        self.trials += other.trials
        self.passes += other.passes
        self.fails += other.fails
        self.abandoned += other.abandoned
        self.inapplicable += other.inapplicable
        self.ratio_sum += other.ratio_sum
        self.ratio_count += other.ratio_count

    def to_dict(self) -> Dict[str, Any]:
        mean = self.mean_oh_ratio
        return {
            "subject": self.subject,
            "variant": self.variant,
            "relation": self.relation,
            "trials": self.trials,
            "passes": self.passes,
            "fails": self.fails,
            "abandoned": self.abandoned,
            "inapplicable": self.inapplicable,
            "mean_oh_ratio": None if mean is None else round(mean, 6),
        }


RowKey = Tuple[str, str, str]


@dataclass
class DetectionMatrix:
    rows: Dict[RowKey, MatrixRow] = field(default_factory=dict)

    def ensure(self, subject: str, variant: str, relation: str) -> MatrixRow:
        key = (subject, variant, relation)
        row = self.rows.get(key)
        if row is None:
            row = MatrixRow(subject=subject, variant=variant, relation=relation)
            self.rows[key] = row
        return row

    def record(self, subject: str, variant: str, relation: str, kind: VerdictKind, ratio: Optional[float] = None) -> None:
        self.ensure(subject, variant, relation).add(kind, ratio)

    def row(self, variant: str, relation: str, subject: Optional[str] = None) -> MatrixRow:
        for (s, v, r), row in self.rows.items():
            if v == variant and r == relation and (subject is None or s == subject):
                return row
        raise KeyError(f"Linha inexistente: {subject or '*'}/{variant}/{relation}")

    def merge(self, other: DetectionMatrix) -> DetectionMatrix:
        """Une duas matrizes sem alterar nenhuma delas."""
        out = DetectionMatrix()
        for source in (self, other):
            for (s, v, r), row in source.rows.items():
                out.ensure(s, v, r).merge(row)
        return out

    def sorted_rows(self) -> List[MatrixRow]:
        return [self.rows[k] for k in sorted(self.rows)]

    @property
    def total_fails(self) -> int:
        return sum(r.fails for r in self.rows.values())

    def to_records(self) -> List[Dict[str, Any]]:
        return [r.to_dict() for r in self.sorted_rows()]


@dataclass
class ReportEntry:
    subject: str
    variant: str
    relation_id: str
    trial: int
    verdict: VerdictKind
    reason: str
    source_cost: int
    derive_cost: int
    check_cost: int
    oh_ratio: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "variant": self.variant,
            "relation_id": self.relation_id,
            "trial": self.trial,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "source_cost": self.source_cost,
            "derive_cost": self.derive_cost,
            "check_cost": self.check_cost,
            "oh_ratio": None if self.oh_ratio is None else round(self.oh_ratio, 6),
        }


@dataclass
class Report:
    meta: Dict[str, Any]
    entries: List[ReportEntry] = field(default_factory=list)
    matrix: DetectionMatrix = field(default_factory=DetectionMatrix)

    @property
    def has_failures(self) -> bool:
        return any(e.verdict == VerdictKind.FAIL for e in self.entries)

    def failures(self) -> Iterable[ReportEntry]:
        return (e for e in self.entries if e.verdict == VerdictKind.FAIL)
