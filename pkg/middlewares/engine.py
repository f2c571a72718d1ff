import argparse
import logging
from typing import Any, Callable

from pydantic import BaseModel

from services.groebner import GroebnerEngine
from settings import settings

logger = logging.getLogger(__name__)


class GroebnerMiddleware:
    """Middleware для внедрения движка базисов Грёбнера"""

    def __call__(
        self,
        handler: Callable[[argparse.Namespace, dict[str, Any]], BaseModel],
        args: argparse.Namespace,
        data: dict[str, Any],
    ) -> BaseModel:
        logger.debug(f"Creating Groebner engine with step limit {settings.gb_step_limit}")
        data["engine"] = GroebnerEngine(settings.gb_step_limit)
        return handler(args, data)
