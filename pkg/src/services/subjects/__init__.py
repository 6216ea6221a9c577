from typing import Dict, List

from ...core.exceptions import ConfigError
from . import binsearch, kth, shortest_path, linear_solver
from .base import Subject

SUBJECTS: Dict[str, Subject] = {
    mod.SUBJECT_DEF.name: mod.SUBJECT_DEF
    for mod in (binsearch, kth, shortest_path, linear_solver)
}

_ALIASES: Dict[str, str] = {
    alias: subject.name
    for subject in SUBJECTS.values()
    for alias in subject.aliases
}


def subject_names() -> List[str]:
    return list(SUBJECTS)


def get_subject(name: str) -> Subject:
    key = str(name).strip().lower()
    key = _ALIASES.get(key, key)
    subject = SUBJECTS.get(key)
    if subject is None:
        raise ConfigError(f"subject desconhecido '{name}' (use: {', '.join(SUBJECTS)})")
    return subject


__all__ = [
    'binsearch',
    'kth',
    'shortest_path',
    'linear_solver',
    'SUBJECTS',
    'get_subject',
    'subject_names',
]
