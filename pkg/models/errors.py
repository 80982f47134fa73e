"""Hierarki exception yang dipakai bersama oleh services dan CLI."""
from typing import Optional


class AnSecrecyError(Exception):
    """Kelas dasar untuk semua error dari package ini."""


class DomainError(AnSecrecyError, ValueError):
    """Argumen di luar domain matematis sebuah operasi."""


class ContractError(AnSecrecyError):
    """Kontrak struktural sebuah input dilanggar."""


class NotPositiveSemidefiniteError(ContractError):
    """Matriks punya eigenvalue yang jelas di bawah nol."""


class ConfigurationError(AnSecrecyError):
    """Konfigurasi skenario, recipe atau command-line tidak valid."""


class DegenerateCorrelationError(AnSecrecyError):
    """Spektrum korelasi tidak bisa diperbaiki dengan regularisasi."""


class RankError(AnSecrecyError):
    """Stream pesan yang diminta melebihi rank kanal."""


class NumericalIntegrityError(AnSecrecyError):
    """Peluang yang dievaluasi keluar dari rentang yang sah."""


class ConvergenceError(AnSecrecyError):
    """Kuadratur tidak stabil dalam batas penghalusan."""

    def __init__(self, message: str, previous: Optional[float], latest: Optional[float]):
        super().__init__(f"{message} (previous={previous!r}, latest={latest!r})")
        self.previous = previous
        self.latest = latest


def validate_positive_integer(value: int, name: str) -> int:
    """Validasi bahwa nilai adalah integer positif."""
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def validate_positive_real(value: float, name: str) -> float:
    """Validasi bahwa nilai adalah bilangan real positif berhingga."""
    value = float(value)
    if not value > 0 or value == float('inf'):
        raise DomainError(f"{name} must be a positive real, got {value!r}")
    return value
