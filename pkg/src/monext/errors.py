"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class MonextError(Exception):
    """Base class for all errors raised by monext."""


class ValidationError(MonextError, ValueError):
    """A structure failed one of its defining laws."""


class ShapeError(ValidationError):
    pass


class NotIdentity(ValidationError):
    def __init__(self, index: int):
        super().__init__(f"element {index} is not a two-sided identity")
        self.index = index


class NotAssociative(ValidationError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"({i}*{j})*{k} != {i}*({j}*{k})")
        self.triple = (i, j, k)


class UnitNotPreserved(ValidationError):
    def __init__(self):
        super().__init__("map does not send identity to identity")


class MultNotPreserved(ValidationError):
    def __init__(self, i: int, j: int):
        super().__init__(f"map({i}*{j}) != map({i})*map({j})")
        self.pair = (i, j)


class InvalidCongruence(ValidationError):
    pass


class NotExact(ValidationError):
    pass


class SizeTooLarge(MonextError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"order {n} exceeds the supported limit {limit}")
        self.n = n
        self.limit = limit


class BoundExceeded(MonextError):
    def __init__(self, value: int, bound: int):
        super().__init__(f"search size {value} exceeds bound {bound}")
        self.value = value
        self.bound = bound


class MonoidMismatch(ValidationError):
    pass


class NotLeftEquivariant(ValidationError):
    def __init__(self, m: int, x: int):
        super().__init__(f"map(m.x) != m.map(x) for m={m}, x={x}")
        self.m = m
        self.x = x


class NotRightEquivariant(ValidationError):
    def __init__(self, x: int, n: int):
        super().__init__(f"map(x.n) != map(x).n for x={x}, n={n}")
        self.x = x
        self.n = n


class IllDefinedRightAction(ValidationError):
    pass


class IllDefined(ValidationError):
    def __init__(self, m: int, mp: int):
        super().__init__(f"{m} ~ {mp} but their images differ")
        self.pair = (m, mp)


class NotEquivariant(ValidationError):
    def __init__(self, n: int):
        super().__init__(f"[f(n) eta] != [eta f'(n)] at n={n}")
        self.n = n


class IncoherentData(ValidationError):
    pass


class UnitCoherenceFail(IncoherentData):
    def __init__(self, h: int, detail: str = ""):
        super().__init__(f"unit coherence fails at h={h}" + (f": {detail}" if detail else ""))
        self.h = h


class AssocCoherenceFail(IncoherentData):
    def __init__(self, h1: int, h2: int, h3: int):
        super().__init__(f"associativity coherence fails at ({h1},{h2},{h3})")
        self.triple = (h1, h2, h3)


class TrianglesFail(ValidationError):
    pass


class AxiomFail(ValidationError):
    """A classifying-data axiom failed; ``axiom`` names the family."""

    def __init__(self, axiom: str, hs: tuple = (), ns: tuple = ()):
        super().__init__(f"axiom {axiom} fails at h={hs}, n={ns}")
        self.axiom = axiom
        self.hs = tuple(hs)
        self.ns = tuple(ns)


class BadWitness(ValidationError):
    pass
