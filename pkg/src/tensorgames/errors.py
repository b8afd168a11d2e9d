"""Exception hierarchy shared by every module of the package."""


class GameError(Exception):
    """Base class for all errors raised by tensorgames."""


# arena
class DanglingMove(GameError):
    pass


class UnknownRoot(GameError):
    pass


class DuplicateId(GameError):
    pass


class ParallelMove(GameError):
    """Two moves between the same ordered pair of positions in strict mode."""


class ExpansionBudgetExceeded(GameError):
    pass


class NotATensorGame(GameError):
    pass


# bracketing
class RootHasQueries(GameError):
    pass


class ResidualNotInjective(GameError):
    pass


class WrongInitiationPolarity(GameError):
    pass


class WrongCompliancePolarity(GameError):
    pass


class ResidualChangesPolarity(GameError):
    pass


class UnknownQuery(GameError):
    pass


class MalformedQALabels(GameError):
    pass


# strategy
class StrategyError(GameError):
    pass


class NotPrefixClosed(StrategyError):
    pass


class NonDeterministic(StrategyError):
    pass


class ProponentStarts(StrategyError):
    pass


class NonAlternating(StrategyError):
    pass


class IllegalMove(StrategyError):
    """A play refers to a move that does not exist at the current position."""


class MiddleGameMismatch(StrategyError):
    pass


class GamesNotIsomorphic(StrategyError):
    pass


# pointed / fam
class NotPointed(GameError):
    pass


class ShapeMismatch(GameError):
    pass


class IndexMismatch(GameError):
    pass


class NotSingleton(GameError):
    pass


# logic / pcf
class LogicError(GameError):
    pass


class RuleMismatch(LogicError):
    def __init__(self, path, expected):
        self.path = tuple(path)
        self.expected = expected
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"at {where}: expected {expected}")


class ContextSplitError(LogicError):
    pass


class ContractionOnNonBang(LogicError):
    pass


class UnboundAtom(LogicError):
    pass


class PcfTypeError(LogicError):
    pass


class LinearityViolation(PcfTypeError):
    pass


class DepthExhausted(GameError):
    pass


# io / generation
class ParseError(GameError):
    pass


class GenerationBudgetExceeded(GameError):
    pass
