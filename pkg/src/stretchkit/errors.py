"""Exception types shared across the package."""


class StretchkitError(Exception):
    """Base class for all library errors."""


class VariantError(StretchkitError, TypeError):
    """Scalar kinds were mixed, or an exact-only operation got floats."""


class DimensionError(StretchkitError, ValueError):
    """Matrix or vector shapes do not conform."""


class DomainError(StretchkitError, ValueError):
    """Index sets, maps or tensors do not live on compatible domains."""


class PermutationDomainError(StretchkitError, ValueError):
    """A slot permutation does not map the index set into itself."""


class ParseError(StretchkitError, ValueError):
    """A JSON payload does not match the documented schema."""
