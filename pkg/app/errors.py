"""Error types"""

from typing import Any, Optional


class RubyCodeError(Exception):
    """Base error; carries a process exit code and a machine-readable form."""

    exit_code = 4
    kind = "error"

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.kind, "message": self.message, "details": self.details}


class ConfigError(RubyCodeError):
    exit_code = 2
    kind = "config"


class PauliError(RubyCodeError):
    exit_code = 2
    kind = "pauli"


class LatticeError(RubyCodeError):
    exit_code = 2
    kind = "lattice"


class StructureError(RubyCodeError):
    """A Hamiltonian or group does not have the structure an operation needs."""

    exit_code = 2
    kind = "structure"


class ConvergenceError(RubyCodeError):
    exit_code = 3
    kind = "convergence"


class InvariantViolation(RubyCodeError):
    """Internal guard: a relation that must hold by construction failed."""

    exit_code = 4
    kind = "invariant"
