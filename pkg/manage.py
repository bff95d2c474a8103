#!/usr/bin/env python
"""Command-line utility for the CR umbilic toolkit."""

import sys


def main():
    """Run toolkit commands."""
    try:
        from cli.main import main as run
    except ImportError as exc:
        raise ImportError(
            "Couldn't import the toolkit dependencies. Are they installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    run(sys.argv[1:])


if __name__ == "__main__":
    main()
