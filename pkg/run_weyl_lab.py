import logging
import os
import sys

# Ensure we can import the flat modules from anywhere
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config import config
from weyl_lab_main import main, setup_logging

logger = logging.getLogger("Launcher")

if __name__ == "__main__":
    setup_logging(config.LOG_LEVEL)
    logger.info(f"{config.TOOL_NAME} {config.VERSION} (workers: {config.ORBIT_WORKERS})")
    try:
        sys.exit(main(sys.argv[1:]))
    except KeyboardInterrupt:
        logger.info("Stopped by user.")
        sys.exit(130)
