"""Console entry point; the implementation lives in the io module."""

from .io import cli, main

__all__ = ["cli", "main"]

if __name__ == "__main__":
    main()
