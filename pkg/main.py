import os
import sys

from dotenv import load_dotenv

from config import DEBUG_MODE_ON, ENV_DEBUG
from ui.cli import run
from utils.logger import setup_logger


def main():
    load_dotenv()
    debug_mode = os.getenv(ENV_DEBUG, "False").lower() == "true"
    if debug_mode:
        print(DEBUG_MODE_ON, file=sys.stderr)
    setup_logger(debug_mode)
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
