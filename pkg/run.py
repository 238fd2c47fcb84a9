#!/usr/bin/env python3
"""Entry point — Sweedler measuring-algebra toolkit.

Usage:
  python run.py present --A "quotient_poly(x^2+1)"
  python run.py galois --p "x^2-2" --field "t^2-2" --roots "t; -t" --sigma 1,1
  python run.py --help
"""

import sys
from pathlib import Path

# Ensure the project root is on sys.path
sys.path.insert(0, str(Path(__file__).resolve().parent))


def main():
    from app.main import main as cli_main
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
