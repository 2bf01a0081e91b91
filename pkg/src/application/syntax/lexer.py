"""
Tokenizer for the supported B subset.
"""
import logging
import re
from dataclasses import dataclass
from typing import List

from src.domain.entities.source_span import SourceSpan
from src.domain.exceptions import LexError

logger = logging.getLogger(__name__)

INT = "NUMBER"
STRING = "TEXT"
IDENT = "IDENT"
PREDICATE_MARKER = "#PREDICATE"
EOF = "EOF"

KEYWORDS = frozenset({
    # machine clauses
    "MACHINE", "SETS", "CONSTANTS", "CONCRETE_CONSTANTS", "ABSTRACT_CONSTANTS",
    "PROPERTIES", "VARIABLES", "CONCRETE_VARIABLES", "ABSTRACT_VARIABLES",
    "INVARIANT", "ASSERTIONS", "DEFINITIONS", "INITIALISATION", "INITIALIZATION",
    "OPERATIONS", "END",
    # substitutions
    "skip", "BEGIN", "PRE", "THEN", "IF", "ELSIF", "ELSE", "SELECT", "WHEN",
    "CHOICE", "OR", "ANY", "WHERE",
    # predicates
    "or", "not", "btrue", "bfalse",
    # expressions
    "TRUE", "FALSE", "bool", "mod", "succ", "pred", "MAXINT", "MININT",
    "NAT", "NAT1", "NATURAL", "NATURAL1", "INT", "INTEGER", "BOOL", "STRING",
    "POW", "POW1", "FIN", "FIN1", "card", "min", "max", "dom", "ran",
    "size", "first", "last", "front", "tail", "rev", "seq", "seq1", "iseq",
})

# longest spellings first so that the alternation picks them
SYMBOLS = (
    "/<<:", "+->>", "-->>", ">->>",
    "<->", "<--", "<=>", "<<|", "<<:", "|->", "|>>", "+->", "-->",
    ">->", ">+>", "/<:",
    "<:", "<+", "<|", "<=", "<>", "|>", "||", "->", ">=", "/=", "/:", "/\\",
    "\\/", ":=", "::", "==", "=>", "**", "..",
    "<", ">", "|", "/", ":", "=", "*", "+", "-", ".", ",", ";", "&", "!",
    "#", "%", "~", "^", "(", ")", "[", "]", "{", "}",
)

TOKEN_SPECIFICATION = [
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r\f]+"),
    ("COMMENT", r"/\*.*?\*/"),
    ("OPEN_COMMENT", r"/\*"),
    ("LINE_COMMENT", r"//[^\n]*"),
    ("MARKER", r"\#PREDICATE\b"),
    ("STRING", r'"[^"\n]*"'),
    ("OPEN_STRING", r'"'),
    ("INT", r"\d+"),
    ("NAME", r"[A-Za-z][A-Za-z0-9_]*"),
    ("SYMBOL", "|".join(re.escape(s) for s in SYMBOLS)),
    ("MISMATCH", r"."),
]

TOKEN_REGEX = re.compile(
    "|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPECIFICATION),
    re.DOTALL,
)


@dataclass(frozen=True)
class Token:
    """
    A lexical token.

    ``kind`` is NUMBER, TEXT, IDENT, #PREDICATE or EOF, and otherwise the
    keyword or symbol text itself.
    """
    kind: str
    text: str
    span: SourceSpan

    @property
    def value(self):
        if self.kind == INT:
            return int(self.text)
        if self.kind == STRING:
            return self.text[1:-1]
        return self.text

    def __repr__(self) -> str:
        if self.kind in (INT, STRING, IDENT):
            return f"{self.kind}({self.text})"
        return self.kind


def tokenize(source: str) -> List[Token]:
    """
    Split B source text into tokens, dropping whitespace and comments.

    Args:
        source: The text to scan

    Returns:
        Tokens in order, terminated by an EOF token

    Raises:
        LexError: On an illegal character or an unterminated string or comment
    """
    tokens: List[Token] = []
    line, line_start = 1, 0
    for match in TOKEN_REGEX.finditer(source):
        group = match.lastgroup
        text = match.group()
        start_col = match.start() - line_start + 1
        here = SourceSpan(line, start_col, line, start_col)
        if group == "NEWLINE":
            line, line_start = line + 1, match.end()
            continue
        if group == "COMMENT":
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = match.start() + text.rfind("\n") + 1
            continue
        if group in ("SKIP", "LINE_COMMENT"):
            continue
        if group == "OPEN_COMMENT":
            raise LexError("unterminated comment", here)
        if group == "OPEN_STRING":
            raise LexError("unterminated string", here)
        if group == "MISMATCH":
            raise LexError(f"illegal character {text!r}", here)

        span = SourceSpan(line, start_col, line, start_col + len(text))
        if group == "MARKER":
            kind = PREDICATE_MARKER
        elif group == "INT":
            kind = INT
        elif group == "STRING":
            kind = STRING
        elif group == "NAME":
            kind = text if text in KEYWORDS else IDENT
        else:
            kind = text
        tokens.append(Token(kind, text, span))

    end = SourceSpan(line, len(source) - line_start + 1, line, len(source) - line_start + 1)
    tokens.append(Token(EOF, "", end))
    logger.debug(f"Tokenized {len(tokens) - 1} tokens")
    return tokens
