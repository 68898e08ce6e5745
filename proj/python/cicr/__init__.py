"""Type checker and parametricity translator for a calculus of inductive
constructions with separate Set and Type hierarchies."""

from pathlib import Path

from ._cicr import CicrError, CommandReport, Diagnostic, Options, Session

__all__ = ["CicrError", "CommandReport", "Diagnostic", "Options", "Session", "check_file", "check_source"]


def check_file(path, **options):
    """Load a vernacular file and return the session it produced."""
    session = Session(Options(**options))
    session.run_file(Path(path))
    return session


def check_source(source, filename="<string>", **options):
    session = Session(Options(**options))
    session.run_source(source, filename)
    return session
