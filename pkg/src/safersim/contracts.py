"""Minimal design-by-contract kernel.

Operations are guarded by pre/post-condition predicates, named data
invariants are registered globally, and finite collections can be built
by comprehension.  Contract failures are reported as values of type
ContractViolation rather than raised, so enumeration harnesses can
tally them; genuine programming errors inside operation bodies still
propagate as exceptions.
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Callable, Iterable, Sized
from dataclasses import dataclass, field
from typing import Any


class ViolationKind(enum.Enum):
    PRECONDITION = "Precondition"
    POSTCONDITION = "Postcondition"
    INVARIANT = "Invariant"
    SIGNATURE = "Signature"


@dataclass(frozen=True)
class ContractViolation:
    """A reported contract failure; a value, never an abort."""

    kind: ViolationKind
    location: str  # operation or type name, non-empty
    detail: str

    def __post_init__(self) -> None:
        if not self.location:
            raise ValueError("violation location must be non-empty")

    def __str__(self) -> str:
        return f"{self.kind.value} violation at {self.location}: {self.detail}"


# Global check toggle: on by default, switchable for timing runs.
_checks_enabled: bool = True


def set_checking(enabled: bool) -> None:
    """Globally enable or disable contract evaluation."""
    global _checks_enabled
    _checks_enabled = bool(enabled)


def checking_enabled() -> bool:
    return _checks_enabled


# Named invariants, registered once and checked wherever values of the
# named type are produced.
_INVARIANT_REGISTRY: dict[str, Callable[[Any], bool]] = {}


def register_invariant(name: str, predicate: Callable[[Any], bool]) -> None:
    if not name:
        raise ValueError("invariant name must be non-empty")
    _INVARIANT_REGISTRY[name] = predicate


def registered_invariants() -> frozenset[str]:
    return frozenset(_INVARIANT_REGISTRY)


def check_invariant(name: str, value: Any) -> bool | ContractViolation:
    """Check a registered invariant on a value.

    Returns True when the predicate holds, a ContractViolation when it
    does not, and a Signature violation when the name is unknown.
    """
    if name not in _INVARIANT_REGISTRY:
        return ContractViolation(
            ViolationKind.SIGNATURE, name, "no invariant registered under this name"
        )
    if not _checks_enabled:
        return True
    if _INVARIANT_REGISTRY[name](value):
        return True
    return ContractViolation(
        ViolationKind.INVARIANT, name, f"invariant fails on {value!r}"
    )


@dataclass(frozen=True)
class GuardedOperation:
    """An operation body with optional pre/post-conditions.

    precondition receives the argument tuple; postcondition receives
    (argument tuple, result); invariants is a list of registered
    invariant names checked on the result.
    """

    name: str
    body: Callable[..., Any]
    precondition: Callable[[tuple], bool] | None = None
    postcondition: Callable[[tuple, Any], bool] | None = None
    invariants: tuple[str, ...] = field(default=())


def evaluate_guarded(op: GuardedOperation, *args: Any) -> Any | ContractViolation:
    """Run a guarded operation, reporting contract failures as values.

    Exactly one of {result, ContractViolation} is produced.  Errors
    raised by the body itself propagate untouched.
    """
    if _checks_enabled and op.precondition is not None:
        if not op.precondition(args):
            return ContractViolation(
                ViolationKind.PRECONDITION, op.name, f"precondition fails on {args!r}"
            )
    result = op.body(*args)
    if _checks_enabled and op.postcondition is not None:
        if not op.postcondition(args, result):
            return ContractViolation(
                ViolationKind.POSTCONDITION,
                op.name,
                f"postcondition fails on {args!r} -> {result!r}",
            )
    if _checks_enabled:
        for inv_name in op.invariants:
            outcome = check_invariant(inv_name, result)
            if outcome is not True:
                return outcome
    return result


class Target(enum.Enum):
    SET = "Set"
    SEQUENCE = "Sequence"
    MAP = "Map"


def comprehend(
    domains: Iterable[Iterable[Any]],
    predicate: Callable[[tuple], bool],
    builder: Callable[[tuple], Any],
    target: Target,
) -> frozenset | tuple | dict | ContractViolation:
    """Build a collection by comprehension over finite domains.

    The result contains builder(t) for exactly those tuples t of the
    Cartesian product of the domains where predicate(t) holds.  Set
    deduplicates; Map entries are (key, value) pairs and duplicate keys
    with distinct values are rejected.  Domains must be finite: any
    domain without a length is refused with a Signature violation
    rather than enumerated.
    """
    materialized: list[list[Any]] = []
    for i, domain in enumerate(domains):
        if not isinstance(domain, Sized):
            return ContractViolation(
                ViolationKind.SIGNATURE,
                "comprehend",
                f"domain {i} is not finitely enumerable",
            )
        materialized.append(list(domain))

    if target is Target.SET:
        return frozenset(
            builder(t) for t in itertools.product(*materialized) if predicate(t)
        )
    if target is Target.SEQUENCE:
        return tuple(
            builder(t) for t in itertools.product(*materialized) if predicate(t)
        )

    out: dict[Any, Any] = {}
    for t in itertools.product(*materialized):
        if not predicate(t):
            continue
        key, value = builder(t)
        if key in out and out[key] != value:
            return ContractViolation(
                ViolationKind.INVARIANT,
                "comprehend",
                f"duplicate key {key!r} with distinct values",
            )
        out[key] = value
    return out
