#!/usr/bin/env python3
"""
Two-Atom Blockade Simulator Runner
==================================

This script configures logging and dispatches to the command-line interface.
"""

import os
import sys
import logging

# Add the project directory to Python path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli.parser import main as cli_main


def setup_logging(verbose: bool = False):
    """Set up logging configuration"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )
    logger = logging.getLogger('BlockadeSystem')
    return logger


def main(argv=None):
    """Main function to run the application"""
    argv = sys.argv[1:] if argv is None else list(argv)
    logger = setup_logging('--verbose' in argv)
    logger.debug(f"Arguments: {argv}")
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
