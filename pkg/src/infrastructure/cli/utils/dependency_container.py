"""
Dependency container for the CLI.

This module provides factory functions for creating use cases and services
with their dependencies. The evaluation settings are fixed once per
invocation by ``configure``.
"""
import logging
from typing import Optional

from src.application.services.machine_loader import LoadedMachine, MachineLoader
from src.application.usecases.animation_session import AnimationSession
from src.application.usecases.evaluation import EvaluateFormulaUseCase, TypeQueryUseCase
from src.application.usecases.machine_checking import (
    CheckStateUseCase,
    CheckTraceUseCase,
    TypecheckMachineUseCase,
)
from src.domain.entities.eval_config import EvalConfig
from src.infrastructure.adapters.file_system_adapter import FileSystemAdapter

_eval_config: Optional[EvalConfig] = None
_file_system_adapter: Optional[FileSystemAdapter] = None

logger = logging.getLogger(__name__)


def configure(**overrides) -> EvalConfig:
    """
    Fix the evaluation settings, letting non-None overrides beat the environment.

    Raises:
        pydantic.ValidationError: If the resulting bounds are inconsistent
    """
    global _eval_config
    _eval_config = EvalConfig.from_settings(**overrides)
    logger.debug(f"Evaluation settings: {_eval_config}")
    return _eval_config


def get_eval_config() -> EvalConfig:
    global _eval_config
    if _eval_config is None:
        _eval_config = EvalConfig.from_settings()
    return _eval_config


def get_file_system_adapter() -> FileSystemAdapter:
    global _file_system_adapter
    if _file_system_adapter is None:
        logger.info("Creating file system adapter")
        _file_system_adapter = FileSystemAdapter()
    return _file_system_adapter


def reset() -> None:
    """Forget the settings and adapters of the previous invocation."""
    global _eval_config, _file_system_adapter
    _eval_config = None
    _file_system_adapter = None


def create_machine_loader() -> MachineLoader:
    logger.info("Creating machine loader")
    return MachineLoader(get_file_system_adapter(), get_eval_config())


def load_machine(path: Optional[str]) -> Optional[LoadedMachine]:
    if path is None:
        return None
    return create_machine_loader().load(path)


def create_evaluate_use_case(machine_path: Optional[str] = None) -> EvaluateFormulaUseCase:
    logger.info("Creating evaluate use case")
    return EvaluateFormulaUseCase(get_eval_config(), load_machine(machine_path))


def create_type_query_use_case(evaluate: EvaluateFormulaUseCase) -> TypeQueryUseCase:
    return TypeQueryUseCase(evaluate)


def create_typecheck_use_case() -> TypecheckMachineUseCase:
    logger.info("Creating typecheck use case")
    return TypecheckMachineUseCase(create_machine_loader())


def create_check_state_use_case() -> CheckStateUseCase:
    logger.info("Creating check-state use case")
    return CheckStateUseCase(create_machine_loader(), get_file_system_adapter())


def create_check_trace_use_case() -> CheckTraceUseCase:
    logger.info("Creating check-trace use case")
    return CheckTraceUseCase(create_machine_loader(), get_file_system_adapter())


def create_animation_session(machine_path: str) -> AnimationSession:
    logger.info("Creating animation session")
    return AnimationSession(create_machine_loader().load(machine_path), get_file_system_adapter())
