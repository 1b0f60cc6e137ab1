import logging
import sys

from app.config import get_settings
from app.controller.cli_controller import run

settings = get_settings()


def configure_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main() -> int:
    configure_logging()
    logging.getLogger(__name__).info("🚀 Starting spin-chain uncertainty simulator...")
    return run()


if __name__ == "__main__":
    sys.exit(main())
