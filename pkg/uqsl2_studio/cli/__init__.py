__all__ = ["expr", "main"]
