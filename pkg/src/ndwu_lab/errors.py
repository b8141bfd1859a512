"""Semantic exception hierarchy for ndwu_lab."""


class NdwuError(Exception):
    """Base class for all ndwu_lab errors."""


class BehaviorError(NdwuError):
    """A raw probability table failed validation."""


class NegativeProbability(BehaviorError):
    def __init__(self, nu, mu, a, b, value):
        self.index = (nu, mu, a, b)
        self.value = value
        super().__init__(f"p({a}{b}|{nu}{mu}) = {value!r} outside [0, 1]")


class NotNormalized(BehaviorError):
    def __init__(self, nu, mu, residual):
        self.setting = (nu, mu)
        self.residual = residual
        super().__init__(
            f"sum_ab p(ab|{nu}{mu}) deviates from 1 by {residual:.3e}"
        )


class SignalingDetected(BehaviorError):
    def __init__(self, side, outcome, setting, residual):
        self.side = side
        self.outcome = outcome
        self.setting = setting
        self.residual = residual
        super().__init__(
            f"{side} marginal for outcome {outcome}, setting {setting} depends on "
            f"the remote setting (residual {residual:.3e})"
        )


class ZeroWeightCondition(NdwuError):
    """The requested conditional state has probability zero and does not exist."""


class DimensionMismatch(NdwuError):
    pass


class InvalidDimension(NdwuError):
    pass


class InvalidFamilyPoint(NdwuError):
    pass


class BadWeights(NdwuError):
    pass


class InvalidGrid(NdwuError):
    pass


class NoSignChange(NdwuError):
    """A bisection ray never crosses the criterion boundary."""


class MismatchWithPaper(NdwuError):
    """A reproduced headline number disagrees with its published value."""
