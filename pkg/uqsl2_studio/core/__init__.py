__all__ = ["types"]
