class InfeasibleError(RuntimeError):
    """A computation was refused because its size exceeds a configured guard."""
