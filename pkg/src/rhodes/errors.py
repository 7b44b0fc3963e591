"""Exception types shared across the package."""


class SemigroupError(ValueError):
    """Base class for invalid inputs."""


class NotAssociative(SemigroupError):
    def __init__(self, triple):
        self.witness = tuple(int(x) for x in triple)
        s, t, u = self.witness
        super().__init__(f"table is not associative: ({s}*{t})*{u} != {s}*({t}*{u})")


class IndexOutOfRange(SemigroupError):
    pass


class CapExceeded(SemigroupError):
    def __init__(self, cap, what="closure"):
        self.cap = cap
        super().__init__(f"{what} exceeded cap of {cap}")


class NotIdempotent(SemigroupError):
    pass


class NotRegular(SemigroupError):
    pass


class NotNormal(SemigroupError):
    pass


class NotMorphism(SemigroupError):
    pass


class NotSurjective(SemigroupError):
    pass


class MissingParameter(SemigroupError):
    pass


class NotTrim(SemigroupError):
    pass


class UnsupportedField(SemigroupError):
    pass


class Refusal(Exception):
    """A well-formed request the theory says cannot be satisfied.

    ``witness`` is a JSON-friendly object explaining why.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInDS(Refusal):
    pass


class NotSynchronizing(Refusal):
    pass
