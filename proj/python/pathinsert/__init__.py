"""Exact insertion of a new train path into an existing railway timetable.

The heavy lifting lives in the compiled extension; this package re-exports its
surface.
"""

from ._core import (
    DataError,
    InsertionRequest,
    Network,
    ParameterSet,
    ParseError,
    Timetable,
    format_time,
    generate,
    insert,
    load_network,
    load_parameters,
    load_timetable,
    oracle_frontier,
    parse_time,
    render_diagram,
    serialize_network,
    serialize_parameters,
    serialize_timetable,
    validate,
    verify_path,
)

__all__ = [
    "DataError",
    "InsertionRequest",
    "Network",
    "ParameterSet",
    "ParseError",
    "Timetable",
    "format_time",
    "generate",
    "insert",
    "load_network",
    "load_parameters",
    "load_timetable",
    "oracle_frontier",
    "parse_time",
    "render_diagram",
    "serialize_network",
    "serialize_parameters",
    "serialize_timetable",
    "validate",
    "verify_path",
]
