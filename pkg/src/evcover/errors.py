"""Exception types shared across the workbench."""

from __future__ import annotations


class EvcError(Exception):
    """Base class for all workbench errors."""


class GraphParseError(EvcError):
    """Malformed graph input (bad syntax, self-loop, duplicate edge)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class DisconnectedGraphError(EvcError):
    """Operation requires a connected graph."""


class SizeLimitError(EvcError):
    """Instance exceeds the configured solver cap."""


class NonChordalError(EvcError):
    """The polynomial cover solver was handed a non-chordal graph."""


class EvidenceError(EvcError):
    """A caller-certified structural premise is missing or insufficient."""


class VerdictMismatchError(EvcError):
    """No defense strategy mode matches the characterization verdict."""


class InfeasibleKError(EvcError):
    """Requested cover size cannot satisfy the per-vertex requirement."""


class RejectionBudgetError(EvcError):
    """Randomized generator exhausted its retry budget."""


class GadgetInputError(EvcError):
    """Gadget construction received an unusable input."""


class ContractViolationError(EvcError):
    """An internal invariant failed; indicates a breached precondition."""


class DefenseImpossibleError(EvcError):
    """The engine cannot defend an attack within its strategy mode."""

    def __init__(self, message: str, round_number: int | None = None,
                 attack: tuple[str, str] | None = None):
        self.message = message
        self.round_number = round_number
        self.attack = attack
        detail = message
        if round_number is not None:
            detail = f"round {round_number}: {detail}"
        super().__init__(detail)
