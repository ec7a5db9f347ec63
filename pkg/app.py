import os
import logging
from datetime import datetime
from dotenv import load_dotenv

# Load environment variables from .env file before Config reads them
load_dotenv()

from config import Config
from src.core import LoggingPublisher
from src.infrastructure.pot import build_default_client
from src.interfaces.cli import CliContext, cli


logger = logging.getLogger(__name__)


def configure_logging(log_dir: str) -> str:
    """
    Configure root logging with:
      - FileHandler (INFO+, DEBUG+ when DEBUG is set) to a new file per run: log-YYYY-MM-DD-HH-MM-SS
      - StreamHandler (WARNING+) to stderr when ENABLE_CONSOLE_LOGS is set
      - POT/numpy warnings routed through the root logger

    Returns the path to the created log file.
    """
    os.makedirs(log_dir, exist_ok=True)

    timestamp = datetime.now().strftime("%Y-%m-%d-%H-%M-%S")
    log_filename = f"log-{timestamp}"
    log_path = os.path.join(log_dir, log_filename)

    level = logging.DEBUG if Config.DEBUG else logging.INFO
    root = logging.getLogger()
    root.setLevel(level)

    # Clear any pre-existing handlers to avoid duplicates
    root.handlers = []

    formatter = logging.Formatter(
        fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    file_handler = logging.FileHandler(log_path, encoding='utf-8')
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)
    root.addHandler(file_handler)

    # Console stays quiet unless explicitly enabled: stdout carries command output
    if Config.ENABLE_CONSOLE_LOGS:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(formatter)
        root.addHandler(console_handler)

    logging.captureWarnings(True)
    return log_path


def create_context() -> CliContext:
    """Wire the CLI dependencies once per process."""
    return CliContext(
        configure_logging=configure_logging,
        publisher=LoggingPublisher(),
        pot_client=build_default_client(app_logger=logging.getLogger("gw.pot")),
    )


def main(argv=None) -> None:
    cli.main(args=argv, prog_name="gw-spheres", obj=create_context())


if __name__ == '__main__':
    main()
