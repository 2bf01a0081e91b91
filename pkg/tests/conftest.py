import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from src.application.interpreter.environment import Environment
from src.application.interpreter.evaluator import Interpreter
from src.application.syntax.lexer import tokenize
from src.application.syntax.parser import parse_formula
from src.application.typechecking.type_checker import TypeChecker
from src.domain.entities.ast_node import UnitVariant
from src.domain.entities.eval_config import EvalConfig

settings.register_profile(
    "bcheck",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "bcheck"))

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def fixture_path():
    """Absolute path of a file under tests/fixtures."""
    def _path(name: str) -> str:
        return str(FIXTURES / name)
    return _path


@pytest.fixture
def small_config():
    """Bounds small enough for exhaustive tests."""
    return EvalConfig(minint=-4, maxint=4, max_enum=10_000, max_set_size=10_000)


def evaluate_text(text: str, config: EvalConfig = None, env: Environment = None):
    """Parse, type and evaluate a closed predicate or expression."""
    env = env or Environment(config or EvalConfig())
    unit = TypeChecker(allow_free=False).infer(parse_formula(tokenize(text)))
    interpreter = Interpreter(env)
    if unit.variant == UnitVariant.PREDICATE:
        return interpreter.eval_predicate(unit.root)
    return interpreter.eval_expression(unit.root)


@pytest.fixture
def evaluate():
    """Evaluate B text under the default configuration or a given one."""
    return evaluate_text
