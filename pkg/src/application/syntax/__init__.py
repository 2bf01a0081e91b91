"""Lexing, parsing, macro expansion and pretty printing of B text."""

from src.application.syntax.definitions import expand_definitions
from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import (
    parse_expression,
    parse_formula,
    parse_machine,
    parse_predicate,
    parse_substitution,
)
from src.application.syntax.pretty_printer import pretty_print

__all__ = [
    "tokenize",
    "parse_predicate",
    "parse_expression",
    "parse_substitution",
    "parse_machine",
    "parse_formula",
    "expand_definitions",
    "pretty_print",
]
