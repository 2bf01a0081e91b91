"""
Pratt parser for B predicates, expressions, substitutions and machines.

Operator priorities come from ``grammar``. A parenthesis in predicate
position is first tried as a parenthesized predicate and, if that fails,
re-read as the start of an expression; failed attempts are remembered per
token position so the backtracking stays linear.

Definitions are scanned before a machine's clauses are parsed so that
call sites can be recognised as ``DefinitionCall`` nodes. A definition body
is parsed on first use, trying predicate, expression, then substitution.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set

from src.application.syntax import grammar
from src.application.syntax.lexer import EOF, IDENT, INT, PREDICATE_MARKER, STRING, Token
from src.domain.entities.ast_node import (
    AstNode,
    Definition,
    MachineAst,
    NodeKind as K,
    OperationAst,
    ParseUnit,
    UnitVariant,
    arity_ok,
)
from src.domain.entities.source_span import SourceSpan
from src.domain.exceptions import MachineValidationError, ParseError

logger = logging.getLogger(__name__)


@dataclass
class _RawDefinition:
    name: str
    params: List[str]
    body: List[Token]
    span: SourceSpan


@dataclass
class DefinitionTable:
    """Definitions known to a parser, shared with the sub-parsers of their bodies."""
    raw: Dict[str, _RawDefinition] = field(default_factory=dict)
    parsed: Dict[str, Definition] = field(default_factory=dict)
    variants: Dict[str, UnitVariant] = field(default_factory=dict)
    in_progress: Set[str] = field(default_factory=set)

    @classmethod
    def from_definitions(cls, definitions: Iterable[Definition]) -> "DefinitionTable":
        table = cls()
        for definition in definitions:
            table.parsed[definition.name] = definition
            table.variants[definition.name] = variant_of(definition.body)
        return table

    def arity(self, name: str) -> Optional[int]:
        if name in self.parsed:
            return len(self.parsed[name].params)
        if name in self.raw:
            return len(self.raw[name].params)
        return None


def variant_of(node: AstNode) -> UnitVariant:
    if node.is_predicate:
        return UnitVariant.PREDICATE
    if node.is_substitution:
        return UnitVariant.SUBSTITUTION
    return UnitVariant.EXPRESSION


class Parser:
    """Recursive descent over a token list produced by ``tokenize``."""

    def __init__(self, tokens: List[Token], definitions: Optional[DefinitionTable] = None):
        if not tokens or tokens[-1].kind != EOF:
            raise ValueError("token list must end with EOF")
        self.tokens = tokens
        self.pos = 0
        self.depth = 0
        self.definitions = definitions or DefinitionTable()
        self._failed_parens: Set[int] = set()

    # token helpers

    def peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.peek()
        if token.kind != EOF:
            self.pos += 1
        return token

    def check(self, *kinds: str) -> bool:
        return self.peek().kind in kinds

    def accept(self, kind: str) -> Optional[Token]:
        if self.peek().kind == kind:
            return self.advance()
        return None

    def expect(self, kind: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            raise self.error(f"unexpected {_describe(token)}", [kind])
        return self.advance()

    def error(self, message: str, expected: Iterable[str] = ()) -> ParseError:
        return ParseError(message, self.peek().span, expected)

    def expect_end(self) -> None:
        self.expect(EOF)

    def _span_from(self, start: Token) -> SourceSpan:
        last = self.tokens[max(self.pos - 1, 0)]
        return SourceSpan(start.span.start_line, start.span.start_col,
                          last.span.end_line, last.span.end_col)

    def _node(self, kind: K, children: List[AstNode], start: Token,
              payload=None) -> AstNode:
        if not arity_ok(kind, len(children)):
            raise ParseError(f"malformed {kind.value}", start.span)
        return AstNode(kind, children, payload, self._span_from(start))

    # predicates

    def predicate(self, min_power: int = 0) -> AstNode:
        start = self.peek()
        left = self._predicate_atom()
        while True:
            op = grammar.PREDICATE_BINARY.get(self.peek().kind)
            if op is None or op.power <= min_power:
                return left
            self.advance()
            right = self.predicate(op.power)
            left = self._node(op.kind, [left, right], start)

    def _predicate_atom(self) -> AstNode:
        token = self.peek()
        kind = token.kind
        if kind == "not":
            self.advance()
            operand = self._predicate_atom()
            return self._node(K.NEGATION, [operand], token)
        if kind in ("!", "#"):
            return self._quantifier()
        if kind == "btrue":
            self.advance()
            return self._node(K.TRUTH, [], token)
        if kind == "bfalse":
            self.advance()
            return self._node(K.FALSITY, [], token)
        if kind == "(" and self.pos not in self._failed_parens:
            saved = self.pos
            try:
                self.advance()
                inner = self._bracketed(self.predicate)
                self.expect(")")
                return inner
            except ParseError:
                self.pos = saved
                self._failed_parens.add(saved)
        if kind == IDENT and self._definition_variant(token.text) == UnitVariant.PREDICATE:
            return self._definition_call()

        left = self.expression()
        relation = grammar.RELATIONS.get(self.peek().kind)
        if relation is None:
            raise self.error(f"expected a predicate, found {_describe(self.peek())}",
                             grammar.RELATIONS)
        self.advance()
        right = self.expression()
        return self._node(relation, [left, right], token)

    def _quantifier(self) -> AstNode:
        start = self.advance()
        kind = K.FORALL if start.kind == "!" else K.EXISTS
        ids = self._binder_identifiers()
        self.expect(".")
        self.expect("(")
        body = self._bracketed(self.predicate)
        self.expect(")")
        return self._node(kind, [ids, body], start)

    def _binder_identifiers(self) -> AstNode:
        start = self.peek()
        if self.accept("("):
            names = self._identifier_nodes()
            self.expect(")")
        else:
            names = [self._identifier()]
        return self._node(K.IDENTIFIER_LIST, names, start)

    def _identifier(self) -> AstNode:
        token = self.expect(IDENT)
        return AstNode(K.IDENTIFIER, payload=token.text, span=token.span)

    def _identifier_nodes(self) -> List[AstNode]:
        names = [self._identifier()]
        while self.accept(","):
            names.append(self._identifier())
        return names

    def _bracketed(self, parse):
        self.depth += 1
        try:
            return parse()
        finally:
            self.depth -= 1

    # expressions

    def expression(self, min_power: int = 0) -> AstNode:
        start = self.peek()
        left = self._expression_prefix()
        while True:
            token = self.peek()
            if token.kind == "~":
                self.advance()
                left = self._node(K.REVERSE, [left], start)
                continue
            if token.kind == "(":
                self.advance()
                argument = self._bracketed(self._argument_tuple)
                self.expect(")")
                left = self._node(K.FUNCTION_APPLICATION, [left, argument], start)
                continue
            if token.kind == "[":
                self.advance()
                argument = self._bracketed(self.expression)
                self.expect("]")
                left = self._node(K.IMAGE, [left, argument], start)
                continue
            op = grammar.EXPRESSION_BINARY.get(token.kind)
            if op is None or (token.kind == ";" and self.depth == 0):
                return left
            if op.power <= min_power:
                return left
            self.advance()
            right = self.expression(op.power - 1 if op.right_assoc else op.power)
            left = self._node(op.kind, [left, right], start)

    def _argument_tuple(self) -> AstNode:
        start = self.peek()
        node = self.expression()
        while self.accept(","):
            item = self.expression()
            node = self._node(K.COUPLE, [node, item], start)
        return node

    def expression_list(self) -> List[AstNode]:
        items = [self.expression()]
        while self.accept(","):
            items.append(self.expression())
        return items

    def _expression_prefix(self) -> AstNode:
        token = self.peek()
        kind = token.kind
        if kind == INT:
            self.advance()
            return self._node(K.INTEGER_LITERAL, [], token, token.value)
        if kind == "-":
            self.advance()
            if self.check(INT):
                number = self.advance()
                return self._node(K.INTEGER_LITERAL, [], token, -number.value)
            operand = self.expression(grammar.UNARY_MINUS_POWER)
            return self._node(K.UNARY_MINUS, [operand], token)
        if kind == STRING:
            self.advance()
            return self._node(K.STRING_LITERAL, [], token, token.value)
        if kind in ("TRUE", "FALSE"):
            self.advance()
            return self._node(K.BOOLEAN_LITERAL, [], token, kind == "TRUE")
        if kind == "MAXINT":
            self.advance()
            return self._node(K.MAXINT, [], token)
        if kind == "MININT":
            self.advance()
            return self._node(K.MININT, [], token)
        if kind in grammar.BUILTIN_SETS:
            self.advance()
            return self._node(K.BUILTIN_SET, [], token, kind)
        if kind in grammar.EXPRESSION_FUNCTIONS:
            self.advance()
            self.expect("(")
            operand = self._bracketed(self.expression)
            self.expect(")")
            return self._node(grammar.EXPRESSION_FUNCTIONS[kind], [operand], token)
        if kind == "bool":
            self.advance()
            self.expect("(")
            operand = self._bracketed(self.predicate)
            self.expect(")")
            return self._node(K.BOOL_OF, [operand], token)
        if kind == IDENT:
            if self.definitions.arity(token.text) is not None:
                return self._definition_call()
            self.advance()
            return self._node(K.IDENTIFIER, [], token, token.text)
        if kind == "(":
            self.advance()
            node = self._bracketed(self._argument_tuple)
            self.expect(")")
            if node.kind == K.COUPLE:
                node.span = self._span_from(token)
            return node
        if kind == "{":
            return self._set_expression()
        if kind == "[":
            self.advance()
            if self.accept("]"):
                return self._node(K.EMPTY_SEQUENCE, [], token)
            items = self._bracketed(self.expression_list)
            self.expect("]")
            return self._node(K.SEQUENCE_EXTENSION, items, token)
        if kind == "<>":
            self.advance()
            return self._node(K.EMPTY_SEQUENCE, [], token)
        if kind == "%":
            return self._lambda()
        raise self.error(f"expected an expression, found {_describe(token)}",
                         [INT, IDENT, "(", "{", "["])

    def _set_expression(self) -> AstNode:
        start = self.advance()
        if self.accept("}"):
            return self._node(K.EMPTY_SET, [], start)
        if self._comprehension_ahead():
            ids_start = self.peek()
            ids = self._node(K.IDENTIFIER_LIST, self._identifier_nodes(), ids_start)
            self.expect("|")
            body = self._bracketed(self.predicate)
            self.expect("}")
            return self._node(K.COMPREHENSION, [ids, body], start)
        items = self._bracketed(self.expression_list)
        self.expect("}")
        return self._node(K.SET_EXTENSION, items, start)

    def _comprehension_ahead(self) -> bool:
        offset = 0
        while True:
            if self.peek(offset).kind != IDENT:
                return False
            following = self.peek(offset + 1).kind
            if following == "|":
                return True
            if following != ",":
                return False
            offset += 2

    def _lambda(self) -> AstNode:
        start = self.advance()
        ids = self._binder_identifiers()
        self.expect(".")
        self.expect("(")
        self.depth += 1
        try:
            guard = self.predicate()
            self.expect("|")
            body = self.expression()
        finally:
            self.depth -= 1
        self.expect(")")
        return self._node(K.LAMBDA, [ids, guard, body], start)

    # definitions

    def _definition_variant(self, name: str) -> Optional[UnitVariant]:
        table = self.definitions
        if name in table.variants:
            return table.variants[name]
        raw = table.raw.get(name)
        if raw is None:
            return None
        if name in table.in_progress:
            return UnitVariant.EXPRESSION
        table.in_progress.add(name)
        try:
            body = self._parse_definition_body(raw)
        finally:
            table.in_progress.discard(name)
        table.parsed[name] = Definition(raw.name, raw.params, body, raw.span)
        table.variants[name] = variant_of(body)
        return table.variants[name]

    def _parse_definition_body(self, raw: _RawDefinition) -> AstNode:
        errors = []
        for attempt in ("predicate", "expression", "substitution"):
            sub = Parser(raw.body, self.definitions)
            try:
                node = getattr(sub, attempt)()
                sub.expect_end()
                return node
            except ParseError as e:
                errors.append(e)
        raise max(errors, key=lambda e: (e.span.start_line, e.span.start_col) if e.span else (0, 0))

    def _definition_call(self) -> AstNode:
        token = self.advance()
        self._definition_variant(token.text)
        arguments: List[AstNode] = []
        if self.definitions.arity(token.text) and self.accept("("):
            arguments = self._bracketed(self.expression_list)
            self.expect(")")
        return self._node(K.DEFINITION_CALL, arguments, token, token.text)

    def scan_definitions(self) -> None:
        """Record every definition header and body token range of a machine."""
        tokens = self.tokens
        try:
            index = next(i for i, t in enumerate(tokens) if t.kind == "DEFINITIONS") + 1
        except StopIteration:
            return
        while self._definition_header_at(index):
            name_token = tokens[index]
            params: List[str] = []
            index += 1
            if tokens[index].kind == "(":
                index += 1
                while tokens[index].kind != ")":
                    if tokens[index].kind == IDENT:
                        params.append(tokens[index].text)
                    index += 1
                index += 1
            index += 1  # ==
            body_start = index
            depth = 0
            while True:
                kind = tokens[index].kind
                if kind == EOF:
                    break
                if depth == 0 and (kind in grammar.CLAUSE_KEYWORDS or kind == "END"):
                    break
                if depth == 0 and kind == ";" and self._definition_header_at(index + 1):
                    break
                if kind in ("(", "[", "{") or kind in grammar.BLOCK_OPENERS:
                    depth += 1
                elif kind in (")", "]", "}", "END"):
                    depth -= 1
                index += 1
            body = tokens[body_start:index] + [Token(EOF, "", tokens[index].span)]
            if name_token.text in self.definitions.raw:
                raise MachineValidationError(
                    f"definition {name_token.text} is declared more than once", name_token.span)
            self.definitions.raw[name_token.text] = _RawDefinition(
                name_token.text, params, body,
                SourceSpan(name_token.span.start_line, name_token.span.start_col,
                           tokens[index - 1].span.end_line, tokens[index - 1].span.end_col))
            if tokens[index].kind == ";":
                index += 1
        self._definitions_end = index

    def _definition_header_at(self, index: int) -> bool:
        tokens = self.tokens
        if index >= len(tokens) or tokens[index].kind != IDENT:
            return False
        index += 1
        if tokens[index].kind == "(":
            index += 1
            while tokens[index].kind in (IDENT, ","):
                index += 1
            if tokens[index].kind != ")":
                return False
            index += 1
        return tokens[index].kind == "=="

    # substitutions

    def substitution(self) -> AstNode:
        start = self.peek()
        left = self._substitution_item()
        while True:
            kind = self.peek().kind
            if kind == "||":
                node_kind = K.PARALLEL
            elif kind == ";" and not self._operation_header_at(self.pos + 1):
                node_kind = K.SEQUENCE
            else:
                return left
            self.advance()
            right = self._substitution_item()
            left = self._node(node_kind, [left, right], start)

    def _operation_header_at(self, index: int) -> bool:
        """Whether ``[outputs <--] name[(params)] =`` starts at ``index``."""
        tokens = self.tokens
        index = self._identifier_list_end(index)
        if index is None:
            return False
        if tokens[index].kind == "<--":
            if tokens[index + 1].kind != IDENT:
                return False
            index += 2
        if tokens[index].kind == "(":
            index = self._identifier_list_end(index + 1)
            if index is None or tokens[index].kind != ")":
                return False
            index += 1
        return tokens[index].kind == "="

    def _identifier_list_end(self, index: int) -> Optional[int]:
        tokens = self.tokens
        if index >= len(tokens) or tokens[index].kind != IDENT:
            return None
        index += 1
        while tokens[index].kind == "," and tokens[index + 1].kind == IDENT:
            index += 2
        return index

    def _substitution_item(self) -> AstNode:
        token = self.peek()
        kind = token.kind
        if kind == "skip":
            self.advance()
            return self._node(K.SKIP, [], token)
        if kind == "BEGIN":
            self.advance()
            body = self.substitution()
            self.expect("END")
            return self._node(K.BLOCK, [body], token)
        if kind == "PRE":
            self.advance()
            guard = self.predicate()
            self.expect("THEN")
            body = self.substitution()
            self.expect("END")
            return self._node(K.PRECONDITION, [guard, body], token)
        if kind in ("IF", "SELECT"):
            return self._guarded_branches(K.IF if kind == "IF" else K.SELECT,
                                          "ELSIF" if kind == "IF" else "WHEN")
        if kind == "CHOICE":
            self.advance()
            branches = [self.substitution()]
            while self.accept("OR"):
                branches.append(self.substitution())
            self.expect("END")
            return self._node(K.CHOICE, branches, token)
        if kind == "ANY":
            self.advance()
            ids_start = self.peek()
            ids = self._node(K.IDENTIFIER_LIST, self._identifier_nodes(), ids_start)
            self.expect("WHERE")
            guard = self.predicate()
            self.expect("THEN")
            body = self.substitution()
            self.expect("END")
            return self._node(K.ANY, [ids, guard, body], token)
        if kind == IDENT and self._definition_variant(token.text) == UnitVariant.SUBSTITUTION:
            return self._definition_call()
        return self._becomes(token)

    def _guarded_branches(self, kind: K, continuation: str) -> AstNode:
        start = self.advance()
        children = []
        while True:
            children.append(self.predicate())
            self.expect("THEN")
            children.append(self.substitution())
            if not self.accept(continuation):
                break
        if self.accept("ELSE"):
            children.append(self.substitution())
        self.expect("END")
        return self._node(kind, children, start)

    def _becomes(self, start: Token) -> AstNode:
        targets = [self._assignment_target()]
        while self.accept(","):
            targets.append(self._assignment_target())
        target_list = self._node(K.EXPRESSION_LIST, targets, start)
        if self.accept(":="):
            values_start = self.peek()
            values = self.expression_list()
            if len(values) != len(targets):
                raise ParseError(f"{len(targets)} targets but {len(values)} values",
                                 self._span_from(start))
            value_list = self._node(K.EXPRESSION_LIST, values, values_start)
            return self._node(K.ASSIGN, [target_list, value_list], start)
        if self.check("::", ":"):
            if any(t.kind != K.IDENTIFIER for t in targets):
                raise self.error("only variables may become elements of a set")
            ids = AstNode(K.IDENTIFIER_LIST, targets, span=target_list.span)
            if self.accept("::"):
                return self._node(K.BECOMES_ELEMENT_OF, [ids, self.expression()], start)
            self.advance()
            self.expect("(")
            condition = self._bracketed(self.predicate)
            self.expect(")")
            return self._node(K.BECOMES_SUCH_THAT, [ids, condition], start)
        raise self.error(f"expected a substitution, found {_describe(self.peek())}",
                         [":=", "::", ":"])

    def _assignment_target(self) -> AstNode:
        start = self.peek()
        target = self._identifier()
        if self.accept("("):
            argument = self._bracketed(self._argument_tuple)
            self.expect(")")
            target = self._node(K.FUNCTION_APPLICATION, [target, argument], start)
        return target

    # machines

    def machine(self) -> MachineAst:
        start = self.expect("MACHINE")
        machine = MachineAst(self.expect(IDENT).text)
        self.scan_definitions()
        seen: Set[str] = set()
        while not self.check("END"):
            token = self.peek()
            if token.kind not in grammar.CLAUSE_KEYWORDS:
                raise self.error(f"expected a machine clause, found {_describe(token)}",
                                 sorted(grammar.CLAUSE_KEYWORDS | {"END"}))
            if token.kind in seen:
                raise MachineValidationError(f"clause {token.kind} appears twice", token.span)
            seen.add(token.kind)
            self.advance()
            self._machine_clause(token.kind, machine)
        self.expect("END")
        machine.definitions = [self._definition(name) for name in self.definitions.raw]
        machine.span = self._span_from(start)
        machine.validate()
        logger.debug(f"Parsed machine {machine.name} with {len(machine.operations)} operations")
        return machine

    def _definition(self, name: str) -> Definition:
        self._definition_variant(name)
        return self.definitions.parsed[name]

    def _machine_clause(self, clause: str, machine: MachineAst) -> None:
        if clause == "SETS":
            self._sets_clause(machine)
        elif clause in ("CONSTANTS", "CONCRETE_CONSTANTS", "ABSTRACT_CONSTANTS"):
            machine.constants.extend(n.payload for n in self._identifier_nodes())
        elif clause in ("VARIABLES", "CONCRETE_VARIABLES", "ABSTRACT_VARIABLES"):
            machine.variables.extend(n.payload for n in self._identifier_nodes())
        elif clause == "PROPERTIES":
            machine.properties = self.predicate()
        elif clause == "INVARIANT":
            machine.invariant = self.predicate()
        elif clause == "ASSERTIONS":
            machine.assertions.append(self.predicate())
            while self.accept(";"):
                machine.assertions.append(self.predicate())
        elif clause == "DEFINITIONS":
            self.pos = self._definitions_end
        elif clause in ("INITIALISATION", "INITIALIZATION"):
            if machine.initialisation is not None:
                raise MachineValidationError("INITIALISATION appears twice", self.peek().span)
            machine.initialisation = self.substitution()
        elif clause == "OPERATIONS":
            machine.operations.append(self._operation())
            while self.accept(";"):
                machine.operations.append(self._operation())

    def _sets_clause(self, machine: MachineAst) -> None:
        while True:
            name = self.expect(IDENT)
            if self.accept("="):
                self.expect("{")
                elements = [n.payload for n in self._identifier_nodes()]
                self.expect("}")
                machine.enumerated_sets[name.text] = elements
            else:
                machine.deferred_sets.append(name.text)
            if not self.accept(";"):
                return

    def _operation(self) -> OperationAst:
        start = self.peek()
        names = [n.payload for n in self._identifier_nodes()]
        outputs: List[str] = []
        if self.accept("<--"):
            outputs = names
            name = self.expect(IDENT).text
        elif len(names) == 1:
            name = names[0]
        else:
            raise self.error("expected <-- after operation outputs", ["<--"])
        params: List[str] = []
        if self.accept("("):
            params = [n.payload for n in self._identifier_nodes()]
            self.expect(")")
        self.expect("=")
        body = self.substitution()
        return OperationAst(name, params, body, outputs, self._span_from(start))


def _describe(token: Token) -> str:
    return "end of input" if token.kind == EOF else repr(token.text)


def _skip_marker(tokens: List[Token]) -> List[Token]:
    if tokens and tokens[0].kind == PREDICATE_MARKER:
        return tokens[1:]
    return tokens


def _parse_unit(tokens: List[Token], rule: str, variant: UnitVariant,
                definitions: Iterable[Definition]) -> ParseUnit:
    parser = Parser(_skip_marker(tokens), DefinitionTable.from_definitions(definitions))
    root = getattr(parser, rule)()
    parser.expect_end()
    return ParseUnit(variant, root)


def parse_predicate(tokens: List[Token], definitions: Iterable[Definition] = ()) -> ParseUnit:
    """
    Parse a complete predicate, optionally preceded by ``#PREDICATE``.

    Raises:
        ParseError: If the tokens are not exactly one predicate
    """
    return _parse_unit(tokens, "predicate", UnitVariant.PREDICATE, definitions)


def parse_expression(tokens: List[Token], definitions: Iterable[Definition] = ()) -> ParseUnit:
    return _parse_unit(tokens, "expression", UnitVariant.EXPRESSION, definitions)


def parse_substitution(tokens: List[Token], definitions: Iterable[Definition] = ()) -> ParseUnit:
    return _parse_unit(tokens, "substitution", UnitVariant.SUBSTITUTION, definitions)


def parse_machine(tokens: List[Token]) -> MachineAst:
    """
    Parse a whole ``MACHINE ... END`` text.

    Raises:
        ParseError: On a syntax error
        MachineValidationError: On duplicate declarations or clauses
    """
    parser = Parser(tokens)
    machine = parser.machine()
    parser.expect_end()
    return machine


def parse_formula(tokens: List[Token], definitions: Iterable[Definition] = ()) -> ParseUnit:
    """
    Parse text that is either a predicate or an expression.

    When both readings fail, the error that got furthest is raised.
    """
    definitions = list(definitions)
    errors = []
    for rule, variant in (("predicate", UnitVariant.PREDICATE),
                          ("expression", UnitVariant.EXPRESSION)):
        try:
            return _parse_unit(tokens, rule, variant, definitions)
        except ParseError as e:
            errors.append(e)
    raise max(errors, key=lambda e: (e.span.start_line, e.span.start_col) if e.span else (0, 0))
