"""Exception hierarchy shared by every module of the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by wsprimary."""


class InvalidSpec(AlgebraError):
    pass


class CapExceeded(AlgebraError):
    pass


class EmptyGenerators(AlgebraError):
    pass


class MissingIdeal(AlgebraError):
    pass


class ImproperIdeal(AlgebraError):
    pass


class NotASubmodule(AlgebraError):
    pass


class ActionUndefined(AlgebraError):
    pass


class LatticeTooLarge(AlgebraError):
    def __init__(self, message: str, partial_count: int = 0):
        super().__init__(message)
        self.partial_count = partial_count


class NotMultiplicationModule(AlgebraError):
    pass


class MethodInapplicable(AlgebraError):
    pass


class NotAdditive(AlgebraError):
    pass


class NotLinear(AlgebraError):
    pass


class NotRingHom(AlgebraError):
    pass


class ImageNotSubmodule(AlgebraError):
    pass


class EmptyMultSet(AlgebraError):
    pass


class NotDisjoint(AlgebraError):
    """(N :_R M) meets the multiplicative set."""


class NotProper(AlgebraError):
    pass


class MissingMultSet(AlgebraError):
    pass


class FmHypothesisUnmet(AlgebraError):
    pass


class NotWeaklySPrimary(AlgebraError):
    pass


class NotHomogeneous(AlgebraError):
    pass


class EmptySet(AlgebraError):
    pass


class EpimorphismRequired(AlgebraError):
    pass


class UnknownClaim(AlgebraError):
    pass


class ConfigError(AlgebraError):
    """Base for configuration problems surfaced by the CLI."""


class ParseError(ConfigError):
    pass


class UnresolvedReference(ConfigError):
    pass


class AuditFailure(ConfigError):
    pass
