# heun_pulses/writeback.py
import csv, json, sys
from contextlib import contextmanager
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

import numpy as np

if TYPE_CHECKING:
    from heun_pulses.dynamics import Trajectory
    from heun_pulses.state import currentRun

TRAJECTORY_HEADER = ["tau", "omega", "re_ca", "im_ca", "re_cb", "im_cb", "pa", "pb"]
ANALYTIC_COLUMNS  = ["re_ca_analytic", "im_ca_analytic", "re_cb_analytic", "im_cb_analytic", "abs_diff_ca"]


def format_value(x) -> str:
    '''17 significant digits: the text re-parses to the same double.'''
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"

@contextmanager
def open_output(path: Path | None):
    '''File at path, or stdout for None.'''
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", newline="", encoding="utf-8") as f:
        yield f

def write_table(path: Path | None, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    '''Writes one CSV table, returns the number of data rows'''
    count = 0
    with open_output(path) as f:
        wr = csv.writer(f, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([format_value(x) for x in row])
            count += 1
    return count

def trajectory_rows(traj: "Trajectory", omega_values) -> Iterator[list[float]]:
    '''Rows in TRAJECTORY_HEADER order.'''
    omega_values = np.asarray(omega_values, dtype=float)
    for t, om, a, b in zip(traj.tau, omega_values, traj.ca, traj.cb):
        yield [t, om, a.real, a.imag, b.real, b.imag, abs(a) ** 2, abs(b) ** 2]

def load_table(path: str | Path) -> tuple[list[str], list[list[float]]]:
    '''Load a CSV written by write_table back into floats'''
    with open(path, newline='', encoding='utf-8') as f:
        rdr = csv.reader(f)
        header = next(rdr)
        rows = [[float(c) for c in row] for row in rdr if row]
    return header, rows

def write_report(path: Path | None, report: dict) -> None:
    '''JSON report, keys in insertion order.'''
    with open_output(path) as f:
        json.dump(report, f, indent=4)
        f.write("\n")

def load_settings(filepath: Path, type: str, quiet: bool = False) -> dict:
    """Loads settings from the JSON file. Returns an empty dict if not found."""
    try:
        with open(filepath, 'r', encoding="utf-8") as f:
            settings = json.load(f)
            if not quiet:
                print(f"Loaded {type}.", file=sys.stderr)
            return settings
    except FileNotFoundError:
        print(f"[WARN] {type} file not found → {filepath}", file=sys.stderr)
    except json.JSONDecodeError as e:
        print(f"[WARN] {type} JSON broken: {e}", file=sys.stderr)
    return {}

def save_settings(s: "currentRun", settings_to_save: dict, filepath: Path) -> None:
    """Saves the given settings dictionary to the JSON file."""
    from heun_pulses.state import print_to_console
    print_to_console(s, f"Saving settings → {filepath}")
    filepath.parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, 'w', encoding="utf-8") as f:
        json.dump(settings_to_save, f, indent=4)
