"""Run the command-line interface via ``python -m entpow``."""

from .cli import entry

if __name__ == "__main__":
    entry()
