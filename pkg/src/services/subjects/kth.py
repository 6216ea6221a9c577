"""
k-ésima ocorrência de uma chave num vetor não ordenado.

As posições sempre usam a indexação 1-based do vetor original, inclusive nas
sub-faixas A[p..hi] das relações.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from ...core.exceptions import FixtureError
from ...core.models import ArrayFixtureFile, CampaignConfig, HarnessSettings
from ...utils.logger import get_logger
from ...utils.validators import require, validate_bounds, validate_int
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

log = get_logger("kth")

SUBJECT = "kth"
NOT_FOUND = -1


@dataclass(frozen=True)
class UnsortedFixture:
    elements: Tuple[int, ...]
    lo: int
    hi: int

    @classmethod
    def of(cls, elements, lo: int = 1, hi: Optional[int] = None) -> "UnsortedFixture":
        items = tuple(int(v) for v in elements)
        return cls(items, lo, len(items) if hi is None else hi)

    def window(self, lo: int, hi: int, elements=None) -> "UnsortedFixture":
        return replace(self, lo=lo, hi=hi, elements=self.elements if elements is None else tuple(elements))

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class KthInput:
    key: int
    k: int
    fixture: UnsortedFixture


def validate(inp: KthInput) -> None:
    require(isinstance(inp, KthInput), f"entrada de kth inválida: {type(inp).__name__}")
    validate_int(inp.key, "key")
    validate_int(inp.k, "k")
    fx = inp.fixture
    validate_bounds(len(fx.elements), fx.lo, fx.hi)
    require(1 <= inp.k <= fx.length, f"k={inp.k} fora de 1..{fx.length}")


# -------------------------
# Variantes
# -------------------------
def _scan(inp: KthInput, view: ArrayView, start: int, overwrite_after_hit: bool = False) -> int:
    x = inp.key
    m = start
    hit = False
    for i in range(inp.fixture.lo, inp.fixture.hi + 1):
        if overwrite_after_hit and hit:
            view.write(i, x)
        value = view.read(i)
        view.compare()
        if value == x:
            if m == inp.k:
                return i
            m += 1
            hit = True
    return NOT_FOUND


@variant(SUBJECT, "correct", description="contagem a partir de m=1")
def kth_correct(inp: KthInput, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    view = ArrayView(inp.fixture.elements, meter)
    return VariantRun(_scan(inp, view, 1), view.snapshot(), view.wrote)


@variant(SUBJECT, "mutant-init", description="m=0: devolve a (k+1)-ésima ocorrência")
def kth_mutant_init(inp: KthInput, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    view = ArrayView(inp.fixture.elements, meter)
    return VariantRun(_scan(inp, view, 0), view.snapshot(), view.wrote)


@variant(SUBJECT, "mutant-overwrite", writes_data=True,
         description="após a primeira ocorrência grava x antes de ler cada entrada")
def kth_mutant_overwrite(inp: KthInput, meter: CostMeter, settings: Optional[HarnessSettings] = None) -> VariantRun:
    view = ArrayView(inp.fixture.elements, meter)
    return VariantRun(_scan(inp, view, 1, overwrite_after_hit=True), view.snapshot(), view.wrote)


# -------------------------
# Relações
# -------------------------
def _probe(ctx: RelationContext, key: int, k: int, lo: int, hi: int) -> int:
    src: KthInput = ctx.source.input
    fx = src.fixture.window(lo, hi, ctx.snapshot())
    return ctx.run(KthInput(key, k, fx)).output


@relation(SUBJECT, "position-check", "Incorrect position returned")
def mr_position_check(ctx: RelationContext) -> Verdict:
    inp: KthInput = ctx.source.input
    p = ctx.source.output
    if p == NOT_FOUND:
        return ctx.inapplicable("source reported absence")
    fx = inp.fixture
    if not ctx.expect(fx.lo <= p <= fx.hi, f"position {p} outside {fx.lo}..{fx.hi}"):
        return ctx.verdict()
    value = ctx.read(p)
    ctx.expect(value == inp.key, f"expected A[{p}]={inp.key} got {value}")
    return ctx.verdict()


@relation(SUBJECT, "random-probe", "Report nonexistence despite the key exists")
def mr_random_probe(ctx: RelationContext) -> Verdict:
    inp: KthInput = ctx.source.input
    if ctx.source.output != NOT_FOUND:
        return ctx.inapplicable("source found the key")
    fx = inp.fixture
    for _ in range(ctx.settings.random_probes):
        r = ctx.draw(fx.lo, fx.hi)
        m = _probe(ctx, ctx.read(r), 1, fx.lo, fx.hi)
        # duplicatas podem aparecer antes de r: m <= r, nunca m == r
        ctx.expect(m != NOT_FOUND and m <= r, f"expected position <= {r} got {m}")
    return ctx.verdict()


@relation(SUBJECT, "wrong-occurrence", "Report q th occurrence where q != k")
def mr_wrong_occurrence(ctx: RelationContext) -> Verdict:
    inp: KthInput = ctx.source.input
    p = ctx.source.output
    fx = inp.fixture
    if p == NOT_FOUND:
        return ctx.inapplicable("source reported absence")
    if not fx.lo <= p <= fx.hi:
        return ctx.fail(f"position {p} outside {fx.lo}..{fx.hi}")

    ctx.expect_equal(_probe(ctx, inp.key, 1, p, fx.hi), p)
    ctx.expect_equal(_probe(ctx, inp.key, 1, p, p), p)
    return ctx.verdict()


@relation(SUBJECT, "overwrite-window", "Overwriting error", production_safe=False)
def mr_overwrite_window(ctx: RelationContext) -> Verdict:
    inp: KthInput = ctx.source.input
    p = ctx.source.output
    fx = inp.fixture
    if p == NOT_FOUND:
        return ctx.inapplicable("source reported absence")
    if not fx.lo <= p <= fx.hi:
        return ctx.fail(f"position {p} outside {fx.lo}..{fx.hi}")

    left = ctx.read(p - 1) if p - 1 >= fx.lo else None
    right = ctx.read(p + 1) if p + 1 <= fx.hi else None
    taken = {inp.key} | {v for v in (left, right) if v is not None}
    candidates = [v for v in range(min(taken) - 3, max(taken) + 4) if v not in taken]
    y = int(candidates[int(ctx.rng.integers(len(candidates)))])

    # janela encolhe para A[p..p+1] ou A[p-1..p] quando falta um vizinho
    lo = p - 1 if left is not None else p
    hi = p + 1 if right is not None else p
    ctx.expect_equal(_probe(ctx, y, 1, p, p), NOT_FOUND)
    ctx.expect_equal(_probe(ctx, y, 1, lo, hi), NOT_FOUND)
    return ctx.verdict()


@relation(SUBJECT, "overwrite-scan", "Overwriting error", production_safe=False)
def mr_overwrite_scan(ctx: RelationContext) -> Verdict:
    inp: KthInput = ctx.source.input
    p = ctx.source.output
    fx = inp.fixture
    x = inp.key
    if p == NOT_FOUND:
        return ctx.inapplicable("source reported absence")
    if not fx.lo <= p <= fx.hi:
        return ctx.fail(f"position {p} outside {fx.lo}..{fx.hi}")

    # orçamento de derivação: no máximo o custo da execução fonte
    budget = ctx.source.cost.steps
    r = p + 1
    while r <= fx.hi:
        if ctx.derive.steps >= budget:
            log.warning(f"overwrite-scan abandonado: orçamento de {budget} passos esgotado")
            return ctx.abandon(f"scan budget of {budget} steps exhausted")
        if ctx.read(r) != x:
            break
        r += 1
    else:
        return ctx.abandon(f"no entry different from {x} after position {p}")

    m = _probe(ctx, x, 2, r - 1, fx.hi)
    ctx.expect(m == NOT_FOUND or m > r, f"expected -1 or a position > {r} got {m}")
    return ctx.verdict()


# -------------------------
# Entradas fonte
# -------------------------
def parse_fixture(document: dict) -> UnsortedFixture:
    try:
        doc = ArrayFixtureFile(**document)
    except (PydanticValidationError, TypeError) as e:
        raise FixtureError(f"Fixture de vetor inválida: {e}")
    return UnsortedFixture.of(doc.array, doc.lo, doc.resolved_hi())


def make_source(rng: np.random.Generator, fixture: Optional[UnsortedFixture], config: CampaignConfig,
                settings: Optional[HarnessSettings] = None) -> KthInput:
    if fixture is None:
        n = config.size if config.size else int(rng.integers(1, 65))
        fixture = UnsortedFixture.of(rng.integers(0, 10, size=n).tolist())

    key = config.key if config.key is not None else int(rng.integers(0, 11))
    k = config.k if config.k is not None else int(rng.integers(1, min(fixture.length, 4) + 1))
    return KthInput(int(key), int(k), fixture)


SUBJECT_DEF = Subject(
    name=SUBJECT,
    variants=collect_variants(kth_correct, kth_mutant_init, kth_mutant_overwrite),
    relations=collect_relations(
        mr_position_check,
        mr_random_probe,
        mr_wrong_occurrence,
        mr_overwrite_window,
        mr_overwrite_scan,
    ),
    validate=validate,
    make_source=make_source,
    parse_fixture=parse_fixture,
)
