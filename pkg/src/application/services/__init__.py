"""Application services shared by the use cases."""

from src.application.services.machine_loader import LoadedMachine, MachineLoader

__all__ = [
    "LoadedMachine",
    "MachineLoader"
]
