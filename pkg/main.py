import logging
import sys
from pathlib import Path

from handlers import algebra, common, verify
from middlewares.engine import GroebnerMiddleware
from middlewares.rng import RandomMiddleware
from settings import settings
from utils.router import Dispatcher
from views.text import render_text

logger = logging.getLogger(__name__)


def setup_logging() -> None:
    Path(settings.log_path).parent.mkdir(parents=True, exist_ok=True)
    logging.basicConfig(
        level=settings.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(settings.log_path),
            logging.StreamHandler(sys.stderr),
        ],
    )


dp = Dispatcher(prog="hadamard")

dp.include_router(common.router)
dp.include_router(algebra.router)
dp.include_router(verify.router)

dp.middleware(RandomMiddleware())
dp.middleware(GroebnerMiddleware())

dp.renderer("text", render_text)


if __name__ == "__main__":
    setup_logging()
    logger.info(f"Starting hadamard CLI: {' '.join(sys.argv[1:])}")
    code, output = dp.dispatch(sys.argv[1:])
    print(output)
    sys.exit(code)
