class ResourceCapError(RuntimeError):
    """A configured size, radius or element-count cap was exceeded."""
