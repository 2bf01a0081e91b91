"""
Reading trace files.

One step per line::

    INIT -> #PREDICATE x = 0 & y = 0
    OP inc(1) -> #PREDICATE x = 1 & y = 0

The ``INIT`` line is optional and may only come first. Blank lines and
comments are ignored.
"""
from itertools import groupby
from typing import List

from src.application.syntax.lexer import EOF, IDENT, Token, tokenize
from src.application.syntax.parser import Parser
from src.application.validation.state_file_reader import parse_state_tokens
from src.domain.entities.state_file import TraceFile, TraceStep
from src.domain.exceptions import StateFileError


def _lines(tokens: List[Token]) -> List[List[Token]]:
    eof = tokens[-1]
    body = [t for t in tokens if t.kind != EOF]
    return [list(group) + [eof] for _, group in groupby(body, key=lambda t: t.span.start_line)]


def read_trace_file(text: str, path: str = "<string>") -> TraceFile:
    """
    Parse a trace.

    Raises:
        StateFileError: On a line that is neither ``OP ...`` nor a leading ``INIT ...``
        ParseError: If an argument or a state predicate does not parse
    """
    trace = TraceFile(path=path)
    for tokens in _lines(tokenize(text)):
        parser = Parser(tokens)
        head = parser.expect(IDENT)
        line = head.span.start_line
        if head.text == "INIT":
            if trace.steps or trace.initial_state is not None:
                raise StateFileError(f"{path}:{line}: INIT must be the first step", head.span)
            parser.expect("->")
            trace.initial_state = parse_state_tokens(tokens[parser.pos:], path)
            continue
        if head.text != "OP":
            raise StateFileError(f"{path}:{line}: expected OP or INIT, found {head.text}",
                                 head.span)
        name = parser.expect(IDENT)
        args = []
        if parser.accept("("):
            args = parser.expression_list()
            parser.expect(")")
        parser.expect("->")
        post_state = parse_state_tokens(tokens[parser.pos:], path)
        trace.steps.append(TraceStep(name.text, args, post_state, line, head.span))
    return trace
