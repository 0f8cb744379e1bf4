#!/usr/bin/env python3
"""
Discrete Differential Operator
Command-line tools and JSON API for estimating derivatives and Taylor
coefficients from samples.

    python main.py derivatives --fn exp2x
    python main.py serve
"""

from ddp.cli import main
from ddp.web import create_app

app = create_app()

if __name__ == "__main__":
    main()
