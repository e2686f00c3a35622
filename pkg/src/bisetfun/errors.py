"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed group spec or expression string."""


class ResourceBoundError(RuntimeError):
    """A requested computation exceeds the configured group-order bound."""


class NotNormalError(ValueError):
    """A quotient or deflation was requested along a non-normal subgroup."""


class FlavorError(ValueError):
    """An inflation/deflation kernel violates the p'-constraint, or flavors mismatch."""


class SupportError(ValueError):
    """Class-function supports or groups do not match."""


class InternalConsistencyError(RuntimeError):
    """A machine-checked theorem assertion failed; indicates a bug, not user error."""
