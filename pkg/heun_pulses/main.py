#!/usr/bin/env python3
# heun_pulses/main.py
# ------------------------------------------------------------
import sys

from heun_pulses.cli import main as run_cli
from heun_pulses.state import currentRun
# ------------------------------------------------------------

state = currentRun()  # Presets are loaded once the flags are known

def main() -> None:
    sys.exit(run_cli(sys.argv[1:], state))

if __name__ == "__main__":
    main()
