import math
from typing import Iterable, Sequence

from ..core.exceptions import InputError


def require(condition: bool, message: str) -> None:
    """Levanta InputError quando a condição da entrada não vale"""
    if not condition:
        raise InputError(message)


def validate_int(value, name: str) -> int:
    """Aceita só inteiros de verdade (bool não conta)"""
    if isinstance(value, bool) or not isinstance(value, int):
        # numpy.int64 e afins
        if hasattr(value, "__index__") and not isinstance(value, bool):
            return int(value)
        raise InputError(f"{name} deve ser inteiro: {value!r}")
    return value


def validate_bounds(length: int, lo: int, hi: int, allow_empty: bool = False) -> None:
    """Valida a faixa 1-based [lo..hi] dentro de um vetor de tamanho length"""
    require(lo >= 1, f"lo deve ser >= 1 (recebido {lo})")
    require(hi <= length, f"hi={hi} passa do tamanho do vetor ({length})")
    if allow_empty:
        require(hi >= lo - 1, f"faixa inválida {lo}..{hi}")
    else:
        require(hi >= lo, f"faixa vazia {lo}..{hi}")


def is_strictly_increasing(values: Sequence) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def all_finite(values: Iterable[float]) -> bool:
    try:
        return all(math.isfinite(float(v)) for v in values)
    except (TypeError, ValueError):
        return False


def parse_pair(text: str) -> tuple:
    """Converte '2,3' em (2, 3); usado pelas opções de linha de comando"""
    parts = [p.strip() for p in str(text).replace(";", ",").split(",") if p.strip()]
    if len(parts) != 2:
        raise InputError(f"Par inválido '{text}' (use i,j)")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise InputError(f"Par inválido '{text}' (use inteiros)")
