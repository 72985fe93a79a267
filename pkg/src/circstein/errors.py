"""Exception types shared across the package."""


class NumericError(RuntimeError):
    """A numerical routine produced or encountered an unusable value
    (non-finite integrand, failed series truncation, division guard, ...)."""


class ContractError(ValueError):
    """A caller violated a documented precondition (e.g. passing an
    uncentred test function to the inverse operator)."""
