"""
Eliminação de Gauss com pivotamento parcial.

O mutante reproduz o fluxo do listing: max inicia em 2 e a variável pivot
persiste entre colunas, então uma coluna sem candidato >= 2 reaproveita o
pivô antigo. Internamente os índices são 0-based; as trocas pinadas vêm 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from ...core.exceptions import FixtureError, InputError
from ...core.models import CampaignConfig, HarnessSettings, SystemFixtureFile
from ...utils.logger import get_logger
from ...utils.validators import all_finite, require
from ..mt_models import CostMeter, Verdict
from .base import RelationContext, Subject, VariantRun, collect_relations, collect_variants, relation, variant

log = get_logger("linear_solver")

SUBJECT = "gauss"
DEFAULT_THRESHOLD = 1e-12
DEFAULT_TOLERANCE = 1e-9

# geradores: sistemas bem condicionados, longe do limiar de singularidade
GENERATOR_MIN_PIVOT = 1e-6
GENERATOR_MAX_COND = 1e5


@dataclass(frozen=True)
class LinearSystem:
    a: Tuple[Tuple[float, ...], ...]
    b: Tuple[float, ...]

    @classmethod
    def of(cls, a, b) -> "LinearSystem":
        return cls(tuple(tuple(float(v) for v in row) for row in a), tuple(float(v) for v in b))

    @property
    def n(self) -> int:
        return len(self.b)

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.array(self.a, dtype=float), np.array(self.b, dtype=float)

    def swap_rows(self, i: int, j: int) -> "LinearSystem":
        a, b = self.arrays()
        a[[i, j]] = a[[j, i]]
        b[[i, j]] = b[[j, i]]
        return LinearSystem.of(a.tolist(), b.tolist())

    def swap_columns(self, i: int, j: int) -> "LinearSystem":
        a, b = self.arrays()
        a[:, [i, j]] = a[:, [j, i]]
        return LinearSystem.of(a.tolist(), b.tolist())


@dataclass(frozen=True)
class SolveResult:
    """Solution (x preenchido) ou NoSolution (x=None)"""
    x: Optional[Tuple[float, ...]] = None

    @property
    def is_solution(self) -> bool:
        return self.x is not None

    @classmethod
    def solution(cls, x) -> "SolveResult":
        return cls(tuple(float(v) for v in x))


NO_SOLUTION = SolveResult()


def validate(system: LinearSystem) -> None:
    require(isinstance(system, LinearSystem), f"entrada de gauss inválida: {type(system).__name__}")
    n = system.n
    require(n >= 1, "sistema vazio")
    require(len(system.a) == n and all(len(row) == n for row in system.a), f"A deve ser {n}x{n}")
    require(all(all_finite(row) for row in system.a) and all_finite(system.b), "entradas não finitas")


# -------------------------
# Variantes
# -------------------------
def _gauss(system: LinearSystem, meter: CostMeter, initial_max: float, threshold: float = DEFAULT_THRESHOLD) -> SolveResult:
    a, b = system.arrays()
    n = system.n
    pivot: Optional[int] = None

    for j in range(n):
        top = initial_max
        for i in range(j, n):
            meter.tick()
            if abs(a[i, j]) >= top:
                top = abs(a[i, j])
                pivot = i
        if pivot is not None and pivot != j:
            meter.tick()
            a[[pivot, j]] = a[[j, pivot]]
            b[[pivot, j]] = b[[j, pivot]]
        if abs(a[j, j]) <= threshold:
            return NO_SOLUTION
        for i in range(j + 1, n):
            meter.tick()
            lam = a[i, j] / a[j, j]
            a[i, j:] -= lam * a[j, j:]
            a[i, j] = 0.0
            b[i] -= lam * b[j]

    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        meter.tick()
        if abs(a[k, k]) <= threshold:
            return NO_SOLUTION
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]

    if not np.all(np.isfinite(x)):
        return NO_SOLUTION
    return SolveResult.solution(x)


def _threshold(settings: Optional[HarnessSettings]) -> float:
    return DEFAULT_THRESHOLD if settings is None else settings.singular_threshold


@variant(SUBJECT, "correct", description="pivotamento parcial com max=0")
def gauss_correct(system: LinearSystem, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    return VariantRun(_gauss(system, meter, 0.0, _threshold(settings)))


@variant(SUBJECT, "mutant-pivot", description="max=2 e pivot reaproveitado entre colunas")
def gauss_mutant_pivot(system: LinearSystem, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    return VariantRun(_gauss(system, meter, 2.0, _threshold(settings)))


# -------------------------
# Verificação por substituição
# -------------------------
def relative_residual(system: LinearSystem, x) -> float:
    a, b = system.arrays()
    r = a @ np.asarray(x, dtype=float) - b
    return float(np.linalg.norm(r, np.inf) / max(1.0, np.linalg.norm(b, np.inf)))


def residual_check(system: LinearSystem, result: SolveResult, tolerance: float = DEFAULT_TOLERANCE) -> Optional[bool]:
    """True se ||Ax-b||inf / max(1, ||b||inf) <= tolerance; None para NoSolution"""
    if not result.is_solution:
        return None
    return relative_residual(system, result.x) <= tolerance


# -------------------------
# Relações
# -------------------------
@relation(SUBJECT, "residual", "Incorrect solution returned")
def mr_residual(ctx: RelationContext) -> Verdict:
    system: LinearSystem = ctx.source.input
    result: SolveResult = ctx.source.output
    if not result.is_solution:
        return ctx.inapplicable("source reported no solution")
    ctx.derive.tick(system.n)
    residual = relative_residual(system, result.x)
    ctx.expect(residual <= ctx.settings.tolerance,
               f"relative residual {residual:.3e} exceeds {ctx.settings.tolerance:g}")
    return ctx.verdict()


def _swap_pair(ctx: RelationContext, n: int) -> Tuple[int, int]:
    pinned = ctx.options.get("swap")
    if pinned:
        i, j = (int(v) for v in pinned)
        if not 1 <= i < j <= n:
            raise InputError(f"troca ({i},{j}) inválida: use 1 <= i < j <= {n}")
        return i - 1, j - 1
    i, j = sorted(int(v) for v in ctx.rng.choice(n, size=2, replace=False))
    return i, j


def _permutation_guard(ctx: RelationContext) -> Optional[Verdict]:
    system: LinearSystem = ctx.source.input
    result: SolveResult = ctx.source.output
    if not result.is_solution:
        return ctx.inapplicable("source reported no solution")
    if system.n < 2:
        return ctx.inapplicable("system has a single equation")
    ctx.derive.tick(system.n)
    if relative_residual(system, result.x) > ctx.settings.tolerance:
        return ctx.inapplicable("source solution not verified by residual")
    return None


def _compare(ctx: RelationContext, got: SolveResult, expected: np.ndarray) -> None:
    if not ctx.expect(got.is_solution, "follow-up reported no solution"):
        return
    scale = max(1.0, float(np.linalg.norm(expected, np.inf)))
    diff = float(np.linalg.norm(np.asarray(got.x) - expected, np.inf))
    ctx.check.tick(len(expected))
    ctx.expect(diff <= ctx.settings.tolerance * scale,
               f"expected {np.round(expected, 9).tolist()} got {np.round(got.x, 9).tolist()}")


@relation(SUBJECT, "row-swap", "Incorrect pivot selection")
def mr_row_swap(ctx: RelationContext) -> Verdict:
    guard = _permutation_guard(ctx)
    if guard:
        return guard
    system: LinearSystem = ctx.source.input
    i, j = _swap_pair(ctx, system.n)
    ctx.derive.tick()
    got = ctx.run(system.swap_rows(i, j)).output
    _compare(ctx, got, np.asarray(ctx.source.output.x))
    return ctx.verdict()


@relation(SUBJECT, "column-swap", "Incorrect pivot selection")
def mr_column_swap(ctx: RelationContext) -> Verdict:
    guard = _permutation_guard(ctx)
    if guard:
        return guard
    system: LinearSystem = ctx.source.input
    i, j = _swap_pair(ctx, system.n)
    ctx.derive.tick()
    expected = np.asarray(ctx.source.output.x, dtype=float)
    expected[[i, j]] = expected[[j, i]]
    got = ctx.run(system.swap_columns(i, j)).output
    _compare(ctx, got, expected)
    return ctx.verdict()


# -------------------------
# Entradas fonte
# -------------------------
def parse_fixture(document: dict) -> LinearSystem:
    try:
        doc = SystemFixtureFile(**document)
    except (PydanticValidationError, TypeError) as e:
        raise FixtureError(f"Fixture de sistema inválida: {e}")
    return LinearSystem.of(doc.a, doc.b)


def smallest_pivot(a: np.ndarray) -> float:
    """Menor pivô (em módulo) que a eliminação com pivotamento parcial encontra"""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    smallest = np.inf
    for j in range(n):
        p = j + int(np.argmax(np.abs(a[j:, j])))
        a[[p, j]] = a[[j, p]]
        smallest = min(smallest, abs(a[j, j]))
        if a[j, j] == 0.0:
            return 0.0
        a[j + 1:, j:] -= np.outer(a[j + 1:, j] / a[j, j], a[j, j:])
    return float(smallest)


def random_system(rng: np.random.Generator, n: int, min_pivot: float = GENERATOR_MIN_PIVOT,
                  max_cond: float = GENERATOR_MAX_COND) -> LinearSystem:
    while True:
        a = rng.uniform(-10.0, 10.0, size=(n, n))
        b = rng.uniform(-10.0, 10.0, size=n)
        if smallest_pivot(a) < min_pivot or np.linalg.cond(a) > max_cond:
            continue
        return LinearSystem.of(a.tolist(), b.tolist())


def make_source(rng: np.random.Generator, fixture: Optional[LinearSystem], config: CampaignConfig,
                settings: Optional[HarnessSettings] = None) -> LinearSystem:
    if fixture is not None:
        return fixture
    n = config.size if config.size else int(rng.integers(2, 7))
    # pivôs gerados ficam bem acima do limiar configurado
    return random_system(rng, n, min_pivot=max(GENERATOR_MIN_PIVOT, 2 * _threshold(settings)))


SUBJECT_DEF = Subject(
    name=SUBJECT,
    variants=collect_variants(gauss_correct, gauss_mutant_pivot),
    relations=collect_relations(mr_residual, mr_row_swap, mr_column_swap),
    validate=validate,
    make_source=make_source,
    parse_fixture=parse_fixture,
    aliases=("linear-solver",),
)
