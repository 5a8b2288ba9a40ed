"""Shared exception types.

Every size guard in the library raises :class:`EnumerationLimitError`;
nothing is ever silently truncated.
"""


class EnumerationLimitError(RuntimeError):
    """An enumeration would exceed the configured size bound."""


class InconsistentEvaluatorError(ValueError):
    """The interpolated polynomial disagrees with the evaluator off the grid.

    This almost always means the supplied degree bounds were too small for
    the function being interpolated.
    """


class SpectrumValidationError(ValueError):
    """A raw tree description violates the spectral-tree invariants.

    ``problems`` lists every violated invariant, not just the first one.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class UnknownNodeError(ValueError):
    """A referenced node id does not exist in the tree."""
