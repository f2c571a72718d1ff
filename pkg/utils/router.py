import argparse
import inspect
import json
import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable

from pydantic import BaseModel, ValidationError

from services.errors import HadamardError, MalformedInputError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_MALFORMED = 2

Handler = Callable[..., BaseModel]
Middleware = Callable[[Handler, argparse.Namespace, dict[str, Any]], BaseModel]


@dataclass
class Command:
    name: str
    callback: Handler
    help: str
    arguments: list[tuple[tuple[str, ...], dict[str, Any]]] = field(default_factory=list)


class Router:
    """Набор подкоманд CLI"""

    def __init__(self, name: str | None = None):
        self.name = name
        self.commands: list[Command] = []

    def command(self, name: str, help: str = "", arguments: list | None = None):
        def decorator(callback: Handler) -> Handler:
            self.commands.append(Command(name, callback, help or (callback.__doc__ or ""), list(arguments or [])))
            return callback

        return decorator


def argument(*flags: str, **kwargs) -> tuple[tuple[str, ...], dict[str, Any]]:
    return flags, kwargs


class Dispatcher:
    """Разбор аргументов, цепочка middleware и вызов обработчика"""

    def __init__(self, prog: str = "hadamard"):
        self.prog = prog
        self.routers: list[Router] = []
        self.middlewares: list[Middleware] = []
        self.renderers: dict[str, Callable[[BaseModel], str]] = {}

    def include_router(self, router: Router) -> None:
        self.routers.append(router)

    def middleware(self, middleware: Middleware) -> None:
        self.middlewares.append(middleware)

    def renderer(self, fmt: str, render: Callable[[BaseModel], str]) -> None:
        self.renderers[fmt] = render

    @property
    def commands(self) -> dict[str, Command]:
        return {c.name: c for r in self.routers for c in r.commands}

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=self.prog)
        subparsers = parser.add_subparsers(dest="command", required=True)
        for command in self.commands.values():
            sub = subparsers.add_parser(command.name, help=command.help.strip().splitlines()[0] if command.help else None)
            sub.add_argument("--seed", type=int, default=None)
            sub.add_argument("--samples", type=int, default=None)
            sub.add_argument("--cap", type=int, default=None)
            sub.add_argument("--format", choices=["json", "text"], default="json")
            for flags, kwargs in command.arguments:
                sub.add_argument(*flags, **kwargs)
        return parser

    def _wrap(self, callback: Handler) -> Callable[[argparse.Namespace, dict[str, Any]], BaseModel]:
        accepted = set(inspect.signature(callback).parameters)

        def call(args: argparse.Namespace, data: dict[str, Any]) -> BaseModel:
            kwargs = {k: v for k, v in data.items() if k in accepted}
            return callback(args, **kwargs)

        handler = call
        for middleware in reversed(self.middlewares):
            handler = partial(middleware, handler)
        return handler

    def dispatch(self, argv: list[str] | None = None) -> tuple[int, str]:
        """Выполнение команды; возвращает (код выхода, вывод)"""
        args = self.build_parser().parse_args(argv)
        command = self.commands[args.command]
        logger.info(f"Running command {command.name}")
        try:
            result = self._wrap(command.callback)(args, {})
        except (MalformedInputError, ValidationError, json.JSONDecodeError) as e:
            logger.error(f"Malformed input for {command.name}: {e}")
            return EXIT_MALFORMED, f"error: malformed input: {e}"
        except HadamardError as e:
            logger.error(f"Command {command.name} failed: {e}")
            return EXIT_FAILURE, f"error: {type(e).__name__}: {e}"
        render = self.renderers.get(args.format)
        output = render(result) if render else result.model_dump_json(indent=2)
        code = EXIT_OK if getattr(result, "ok", True) else EXIT_FAILURE
        logger.info(f"Command {command.name} finished with exit code {code}")
        return code, output
