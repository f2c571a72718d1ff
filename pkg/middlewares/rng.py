import argparse
import logging
import random
from typing import Any, Callable

from pydantic import BaseModel

from settings import settings

logger = logging.getLogger(__name__)


class RandomMiddleware:
    """Middleware для внедрения генератора случайных чисел с зафиксированным seed"""

    def __call__(
        self,
        handler: Callable[[argparse.Namespace, dict[str, Any]], BaseModel],
        args: argparse.Namespace,
        data: dict[str, Any],
    ) -> BaseModel:
        seed = args.seed if args.seed is not None else settings.seed
        logger.debug(f"Seeding random generator with {seed}")
        data["seed"] = seed
        data["rng"] = random.Random(seed)
        return handler(args, data)
