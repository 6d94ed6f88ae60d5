class ResourceLimitError(RuntimeError):
    """A computation exceeded a declared resource guard (range cap, window
    size, quadrature panel budget).  Distinct from ValueError so callers can
    map it to a different exit status."""
