"""Module entry point: ``python -m kerrqnd``."""

from .cli import entry

if __name__ == "__main__":
    entry()
