from pydantic import BaseModel, Field, field_validator
from typing import Optional, List, Literal, Tuple, Union
from enum import Enum


class Phase(str, Enum):
    TESTING = "testing"
    PRODUCTION = "production"


class ReportFormat(str, Enum):
    JSON = "json"
    TABLE = "table"


class HarnessSettings(BaseModel):
    """Padrões do harness (assets/config/settings.json)"""
    log_level: str = Field("WARNING", description="Nível do log no console")
    log_file: bool = Field(False, description="Gravar log em logs/")

    # Orçamentos das derivações
    widening_attempts: int = Field(5, ge=1, description="Alargamentos da janela do gap-probe")
    random_probes: int = Field(1, ge=1, description="Sondas aleatórias por aplicação")
    gap_span: int = Field(16, ge=1, description="Faixa usada quando um lado da janela é infinito")

    # Tolerâncias numéricas
    tolerance: float = Field(1e-9, gt=0, description="Tolerância relativa de resíduo e comparação")
    singular_threshold: float = Field(1e-12, gt=0, description="Pivô abaixo disso conta como zero")

    # Grafos
    split_exhaustive_max: int = Field(4, ge=1, description="Até quantos intermediários testar todos")
    split_sample: int = Field(3, ge=1, description="Amostra de intermediários em caminhos longos")


class CampaignConfig(BaseModel):
    """Documento JSON de uma campanha"""
    subject: str
    variants: List[str]
    relations: Union[List[str], Literal["all"]] = "all"
    trials: int = Field(1, ge=1)
    seed: int = 0
    phase: Phase = Phase.TESTING
    fixture: Optional[str] = Field(None, description="Id de fixture embutida ou caminho de arquivo")

    # ✅ Tamanho das entradas geradas (None = padrão do subject)
    size: Optional[int] = Field(None, ge=0)

    # Sobrescritas da entrada fonte (reproduzem episódios conhecidos)
    key: Optional[int] = None
    k: Optional[int] = None
    src: Optional[str] = None
    dst: Optional[str] = None
    swap: Optional[Tuple[int, int]] = None

    @field_validator('subject')
    def validate_subject(cls, v):
        if not v or not str(v).strip():
            raise ValueError("Subject não pode estar vazio")
        return str(v).strip()

    @field_validator('variants')
    def validate_variants(cls, v):
        cleaned = [str(x).strip() for x in v if str(x).strip()]
        if not cleaned:
            raise ValueError("Informe ao menos uma variante")
        return cleaned

    @field_validator('relations')
    def validate_relations(cls, v):
        if v == "all":
            return v
        cleaned = [str(x).strip() for x in v if str(x).strip()]
        if not cleaned:
            raise ValueError("Informe ao menos uma relação (ou 'all')")
        if cleaned == ["all"]:
            return "all"
        return cleaned

    @field_validator('src', 'dst', mode='before')
    def coerce_vertex(cls, v):
        if v is None:
            return None
        return str(v).strip()


class ArrayFixtureFile(BaseModel):
    """Fixture de vetor: { "array": [...], "lo": int, "hi": int } (índices 1-based)"""
    array: List[int]
    lo: int = 1
    hi: Optional[int] = None

    def resolved_hi(self) -> int:
        return len(self.array) if self.hi is None else self.hi


class GraphFixtureFile(BaseModel):
    """Fixture de grafo: vértices 1-based, rótulos opcionais"""
    n: int = Field(..., ge=1)
    directed: bool = False
    edges: List[Tuple[int, int, int]] = Field(default_factory=list)
    labels: Optional[List[str]] = None

    @field_validator('labels')
    def validate_labels(cls, v):
        if v is None:
            return None
        cleaned = [str(x).strip() for x in v]
        if len(set(cleaned)) != len(cleaned):
            raise ValueError("Rótulos de vértice repetidos")
        return cleaned


class SystemFixtureFile(BaseModel):
    """Fixture de sistema linear: { "a": [[...]], "b": [...] }"""
    a: List[List[float]]
    b: List[float]
