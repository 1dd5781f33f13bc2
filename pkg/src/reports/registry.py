# src/reports/registry.py

import importlib
from dataclasses import dataclass
from typing import Callable, Dict, List

from src.reports.run_config import RunConfig
from src.utils.errors import CertificateError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Domain packages whose checks.py must register at least one checker.
DOMAIN_MODULES = ("index_sets", "trig_poly", "boolean_cube", "multipliers", "sequences", "ksz_lab")


@dataclass(frozen=True)
class RegisteredCheck:
    check_id: str
    module: str
    anchor: str
    func: Callable[[RunConfig], list]


_REGISTRY: Dict[str, RegisteredCheck] = {}


def register_check(check_id: str, module: str, anchor: str):
    """Decorator: record `func(run_config) -> list[VerdictReport]` under check_id."""

    def decorator(func):
        if check_id in _REGISTRY and _REGISTRY[check_id].func is not func:
            raise ValueError(f"duplicate check id '{check_id}'")
        _REGISTRY[check_id] = RegisteredCheck(check_id, module, anchor, func)
        func.check_id = check_id
        func.anchor = anchor
        return func

    return decorator


def load_all_checks() -> None:
    for module in DOMAIN_MODULES:
        importlib.import_module(f"src.{module}.checks")


def registered_checks() -> List[RegisteredCheck]:
    """Checks in a fixed order: domain module order, then check id."""
    load_all_checks()
    order = {name: i for i, name in enumerate(DOMAIN_MODULES)}
    return sorted(_REGISTRY.values(), key=lambda c: (order.get(c.module, len(order)), c.check_id))


def assert_registry_complete() -> None:
    load_all_checks()
    covered = {c.module for c in _REGISTRY.values()}
    missing = [m for m in DOMAIN_MODULES if m not in covered]
    if missing:
        raise CertificateError("registry", f"no checks registered for {', '.join(missing)}")
    logger.debug(f"Registry complete: {len(_REGISTRY)} checks over {len(DOMAIN_MODULES)} modules")
