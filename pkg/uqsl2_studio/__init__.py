__all__ = ["algebra", "cli", "core", "config"]

__version__ = "0.1.0"
