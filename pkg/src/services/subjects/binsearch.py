"""
Busca binária sobre vetor ordenado com elementos distintos.

Variantes: correct, mutant-split (recursão à direita começa em mid+2) e
mutant-overwrite (num miss grava a chave na última sonda e devolve essa posição).
Relações: position-check, random-probe, gap-probe e split-neighbors.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from ...core.exceptions import FixtureError, InputError
from ...core.models import ArrayFixtureFile, CampaignConfig, HarnessSettings
from ...utils.logger import get_logger
from ...utils.validators import is_strictly_increasing, require, validate_bounds, validate_int
from ..mt_models import CostMeter, Verdict
from .base import (
    ArrayView,
    RelationContext,
    Subject,
    VariantRun,
    collect_relations,
    collect_variants,
    relation,
    variant,
)

log = get_logger("binsearch")

SUBJECT = "binsearch"
NOT_FOUND = -1


@dataclass(frozen=True)
class SortedFixture:
    elements: Tuple[int, ...]
    lo: int
    hi: int

    @classmethod
    def of(cls, elements, lo: int = 1, hi: Optional[int] = None) -> "SortedFixture":
        items = tuple(int(v) for v in elements)
        return cls(items, lo, len(items) if hi is None else hi)

    def with_elements(self, elements) -> "SortedFixture":
        return replace(self, elements=tuple(elements))

    def value(self, i: int) -> int:
        return self.elements[i - 1]


@dataclass(frozen=True)
class BinSearchInput:
    key: int
    fixture: SortedFixture


def validate(inp: BinSearchInput) -> None:
    require(isinstance(inp, BinSearchInput), f"entrada de binsearch inválida: {type(inp).__name__}")
    validate_int(inp.key, "key")
    fx = inp.fixture
    validate_bounds(len(fx.elements), fx.lo, fx.hi, allow_empty=True)
    window = fx.elements[fx.lo - 1:fx.hi]
    require(is_strictly_increasing(window), f"vetor não é estritamente crescente em {fx.lo}..{fx.hi}")


# -------------------------
# Variantes
# -------------------------
def _bin_search(x: int, view: ArrayView, i: int, j: int, right_step: int,
                last: Optional[int] = None) -> Tuple[int, Optional[int]]:
    """Devolve (posição, última sonda). right_step=1 é o correto."""
    if i > j:
        return NOT_FOUND, last
    mid = (i + j) // 2
    value = view.read(mid)
    view.compare()
    if value == x:
        return mid, mid
    view.compare()
    if value > x:
        return _bin_search(x, view, i, mid - 1, right_step, mid)
    return _bin_search(x, view, mid + right_step, j, right_step, mid)


@variant(SUBJECT, "correct", description="busca binária do listing")
def binsearch_correct(inp: BinSearchInput, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    view = ArrayView(inp.fixture.elements, meter)
    pos, _ = _bin_search(inp.key, view, inp.fixture.lo, inp.fixture.hi, 1)
    return VariantRun(pos, view.snapshot(), view.wrote)


@variant(SUBJECT, "mutant-split", description="metade direita começa em mid+2")
def binsearch_mutant_split(inp: BinSearchInput, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    view = ArrayView(inp.fixture.elements, meter)
    pos, _ = _bin_search(inp.key, view, inp.fixture.lo, inp.fixture.hi, 2)
    return VariantRun(pos, view.snapshot(), view.wrote)


@variant(SUBJECT, "mutant-overwrite", writes_data=True,
         description="num miss grava a chave na última sonda")
def binsearch_mutant_overwrite(inp: BinSearchInput, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    view = ArrayView(inp.fixture.elements, meter)
    pos, last = _bin_search(inp.key, view, inp.fixture.lo, inp.fixture.hi, 1)
    if pos == NOT_FOUND and last is not None:
        view.write(last, inp.key)
        pos = last
    return VariantRun(pos, view.snapshot(), view.wrote)


# -------------------------
# Seleção do y do gap-probe
# -------------------------
def select_gap_value(
    fixture: SortedFixture,
    k: int,
    exclude: int,
    attempts: int,
    *,
    rng: Optional[np.random.Generator] = None,
    read: Optional[Callable[[int], int]] = None,
    span: int = 16,
) -> Optional[int]:
    """
    Escolhe y dentro de (A[k-r], A[k+r]) diferente de todo elemento da janela,
    alargando r de 1 até attempts. Vizinho fora da faixa conta como -inf/+inf
    (nesse lado usa-se uma faixa de `span` inteiros). None = inviável.
    """
    if not fixture.lo <= k <= fixture.hi:
        raise InputError(f"k={k} fora da faixa {fixture.lo}..{fixture.hi}")
    if attempts < 1:
        raise InputError("attempts deve ser >= 1")

    read = read or fixture.value
    for r in range(1, attempts + 1):
        left = read(k - r) if k - r >= fixture.lo else None
        right = read(k + r) if k + r <= fixture.hi else None
        inner = [read(i) for i in range(max(fixture.lo, k - r + 1), min(fixture.hi, k + r - 1) + 1)]
        points = sorted(set(inner) | {exclude})

        gaps: List[Tuple[int, int]] = []
        bounds = ([left] if left is not None else []) + points + ([right] if right is not None else [])
        if left is None:
            gaps.append((bounds[0] - span, bounds[0] - 1))
        for a, b in zip(bounds, bounds[1:]):
            if b - a >= 2:
                gaps.append((a + 1, b - 1))
        if right is None:
            gaps.append((bounds[-1] + 1, bounds[-1] + span))

        if gaps:
            if rng is None:
                return gaps[0][0]
            a, b = gaps[int(rng.integers(len(gaps)))]
            return int(rng.integers(a, b + 1))
        log.debug(f"gap-probe: janela r={r} sem espaço em torno de {k}")
    return None


# -------------------------
# Relações
# -------------------------
def _follow_up(ctx: RelationContext, key: int) -> BinSearchInput:
    src: BinSearchInput = ctx.source.input
    return BinSearchInput(key, src.fixture.with_elements(ctx.snapshot()))


@relation(SUBJECT, "position-check", "Incorrect position returned")
def mr_position_check(ctx: RelationContext) -> Verdict:
    inp: BinSearchInput = ctx.source.input
    k = ctx.source.output
    if k == NOT_FOUND:
        return ctx.inapplicable("source reported absence")
    fx = inp.fixture
    if not ctx.expect(fx.lo <= k <= fx.hi, f"position {k} outside {fx.lo}..{fx.hi}"):
        return ctx.verdict()
    value = ctx.read(k)
    ctx.expect(value == inp.key, f"expected A[{k}]={inp.key} got {value}")
    return ctx.verdict()


@relation(SUBJECT, "random-probe", "Report non-existence even if the key exists")
def mr_random_probe(ctx: RelationContext) -> Verdict:
    inp: BinSearchInput = ctx.source.input
    if ctx.source.output != NOT_FOUND:
        return ctx.inapplicable("source found the key")
    fx = inp.fixture
    if fx.lo > fx.hi:
        return ctx.inapplicable("empty range")
    for _ in range(ctx.settings.random_probes):
        p = ctx.draw(fx.lo, fx.hi)
        out = ctx.run(_follow_up(ctx, ctx.read(p))).output
        ctx.expect_equal(out, p)
    return ctx.verdict()


@relation(SUBJECT, "gap-probe", "Overwriting error", production_safe=False)
def mr_gap_probe(ctx: RelationContext) -> Verdict:
    inp: BinSearchInput = ctx.source.input
    k = ctx.source.output
    x = inp.key
    fx = inp.fixture
    if k == NOT_FOUND:
        return ctx.inapplicable("source reported absence")
    if not fx.lo <= k <= fx.hi:
        return ctx.fail(f"position {k} outside {fx.lo}..{fx.hi}")

    left = ctx.read(k - 1) if k - 1 >= fx.lo else None
    right = ctx.read(k + 1) if k + 1 <= fx.hi else None
    bracketed = (left is None or left < x) and (right is None or x < right)
    if not ctx.expect(bracketed, f"neighbors {left},{right} of position {k} do not bracket {x}"):
        return ctx.verdict()

    y = select_gap_value(
        fx.with_elements(ctx.snapshot()),
        k,
        x,
        ctx.settings.widening_attempts,
        rng=ctx.rng,
        read=ctx.read,
        span=ctx.settings.gap_span,
    )
    if y is None:
        log.warning(f"gap-probe abandonado: sem y após {ctx.settings.widening_attempts} alargamentos")
        return ctx.abandon(f"no gap value after {ctx.settings.widening_attempts} widenings")

    out = ctx.run(_follow_up(ctx, y)).output
    ctx.expect_equal(out, NOT_FOUND)
    return ctx.verdict()


@relation(SUBJECT, "split-neighbors", "Splitting error")
def mr_split_neighbors(ctx: RelationContext) -> Verdict:
    inp: BinSearchInput = ctx.source.input
    k = ctx.source.output
    fx = inp.fixture
    if k == NOT_FOUND:
        return ctx.inapplicable("source reported absence")
    if not fx.lo <= k <= fx.hi:
        return ctx.fail(f"position {k} outside {fx.lo}..{fx.hi}")

    # vizinho ausente: troca pelo elemento em mid-1 / mid+1 (A[mid] sempre existe)
    mid = (fx.lo + fx.hi) // 2
    probes: List[int] = []
    for neighbor, substitute in ((k - 1, mid - 1), (k + 1, mid + 1)):
        idx = neighbor if fx.lo <= neighbor <= fx.hi else substitute
        if fx.lo <= idx <= fx.hi and idx != k and idx not in probes:
            probes.append(idx)
    if not probes:
        return ctx.inapplicable("no neighbor to probe")

    for idx in probes:
        out = ctx.run(_follow_up(ctx, ctx.read(idx))).output
        ctx.expect_equal(out, idx)
    return ctx.verdict()


# -------------------------
# Entradas fonte
# -------------------------
def parse_fixture(document: dict) -> SortedFixture:
    try:
        doc = ArrayFixtureFile(**document)
    except (PydanticValidationError, TypeError) as e:
        raise FixtureError(f"Fixture de vetor inválida: {e}")
    return SortedFixture.of(doc.array, doc.lo, doc.resolved_hi())


def make_source(rng: np.random.Generator, fixture: Optional[SortedFixture], config: CampaignConfig,
                settings: Optional[HarnessSettings] = None) -> BinSearchInput:
    if fixture is None:
        n = config.size if config.size is not None else int(rng.integers(0, 65))
        domain = 2 * n + 2 if rng.random() < 0.5 else 4 * n + 8
        elements = np.sort(rng.choice(domain, size=n, replace=False))
        fixture = SortedFixture.of(elements.tolist())

    if config.key is not None:
        key = config.key
    elif fixture.lo <= fixture.hi and rng.random() < 0.5:
        key = fixture.value(int(rng.integers(fixture.lo, fixture.hi + 1)))
    else:
        top = max(fixture.elements[fixture.lo - 1:fixture.hi], default=0)
        key = int(rng.integers(0, top + 2))
    return BinSearchInput(int(key), fixture)


SUBJECT_DEF = Subject(
    name=SUBJECT,
    variants=collect_variants(binsearch_correct, binsearch_mutant_split, binsearch_mutant_overwrite),
    relations=collect_relations(mr_position_check, mr_random_probe, mr_gap_probe, mr_split_neighbors),
    validate=validate,
    make_source=make_source,
    parse_fixture=parse_fixture,
)
