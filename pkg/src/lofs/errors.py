"""Exception types. Every error carries an optional ``witness`` payload."""

from __future__ import annotations

from typing import Any


class LofsError(Exception):
    def __init__(self, message: str = "", witness: Any = None):
        super().__init__(message)
        self.witness = witness


class NotReflexive(LofsError):
    pass


class NotAntisymmetric(LofsError):
    pass


class NotTransitive(LofsError):
    pass


class NotMonotone(LofsError):
    pass


class NotParallel(LofsError):
    pass


class CodomainMismatch(LofsError):
    pass


class NotComposable(LofsError):
    pass


class NotCommutative(LofsError):
    pass


class InternalInconsistency(LofsError):
    pass


class CapExceeded(LofsError):
    pass


class ClassNotPreserved(LofsError):
    pass


class EquivalenceMismatch(LofsError):
    pass


class NotSimple(LofsError):
    pass


class StructureMismatch(LofsError):
    pass


class UniversalPropertyFailure(LofsError):
    pass


class NoTerminal(LofsError):
    pass


class NotSymmetric(LofsError):
    pass


class ParseError(LofsError):
    pass
