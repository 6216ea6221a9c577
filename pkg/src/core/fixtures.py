import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .exceptions import ConfigError, FixtureError


@dataclass(frozen=True)
class BuiltinFixture:
    id: str
    subject: str
    origin: str          # "paper" ou "derived"
    note: str
    document: Dict[str, Any]

    def summary(self) -> str:
        return json.dumps(self.document, separators=(",", ":"))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "subject": self.subject,
            "origin": self.origin,
            "note": self.note,
            "contents": self.document,
        }


BUILTIN_FIXTURES: Dict[str, BuiltinFixture] = {
    f.id: f
    for f in (
        BuiltinFixture(
            id="paper-3.1",
            subject="binsearch",
            origin="paper",
            note="vetor ordenado do episódio da busca binária (chave 25 -> 6)",
            document={"array": [4, 6, 10, 15, 18, 25, 40], "lo": 1, "hi": 7},
        ),
        BuiltinFixture(
            id="paper-3.2",
            subject="kth",
            origin="paper",
            note="vetor do episódio da k-ésima ocorrência (x=1, k=2)",
            document={"array": [1, 3, 1, 4, 1, 3, 2], "lo": 1, "hi": 7},
        ),
        BuiltinFixture(
            id="paper-3.4",
            subject="gauss",
            origin="paper",
            note="sistema do episódio do pivô (x = (0, 0, 1/3))",
            document={"a": [[1, 2, 3], [2, 2, 3], [3, 3, 3]], "b": [1, 1, 1]},
        ),
        BuiltinFixture(
            id="fig1-like",
            subject="shortest-path",
            origin="derived",
            note="grafo de 4 vértices construído para o mutante de relaxação; validado pelo oráculo",
            document={
                "n": 4,
                "directed": False,
                "edges": [[1, 2, 19], [1, 3, 12], [2, 4, 10], [3, 4, 5]],
                "labels": ["a", "b", "c", "d"],
            },
        ),
    )
}


def list_fixtures() -> List[BuiltinFixture]:
    return list(BUILTIN_FIXTURES.values())


def load_fixture_document(ref: str) -> Tuple[Optional[str], Dict[str, Any]]:
    """Devolve (subject da fixture embutida ou None, documento JSON)"""
    builtin = BUILTIN_FIXTURES.get(ref)
    if builtin is not None:
        return builtin.subject, json.loads(json.dumps(builtin.document))

    path = Path(ref)
    if not path.exists():
        raise FixtureError(f"Fixture desconhecida: '{ref}' (nem embutida nem arquivo)")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except Exception as e:
        raise FixtureError(f"Erro ao ler fixture {path.name}: {e}")
    if not isinstance(document, dict):
        raise FixtureError(f"Fixture {path.name} deve ser um objeto JSON")
    return None, document


def resolve_fixture(ref: str, subject: str) -> Dict[str, Any]:
    fixture_subject, document = load_fixture_document(ref)
    if fixture_subject is not None and fixture_subject != subject:
        raise ConfigError(f"fixture '{ref}' pertence a {fixture_subject}, não a {subject}")
    return document
