# heun_pulses/state.py
import os, sys
from pathlib import Path

from heun_pulses.presets import captionPreset, captions_from_dict, media_from_dict, mediumPreset, solverPresets
from heun_pulses.writeback import load_settings, save_settings


class currentRun:
    """Holds the state of one command-line run: settings, presets and output location."""
    PROJECT_ROOT  = Path(__file__).resolve().parent.parent
    PROGRAM_FILES = PROJECT_ROOT / "Program_Files"
    OUT_DIR       = PROJECT_ROOT / "Output"
    OUT_DIR_ENV   = "HEUN_PULSES_OUT_DIR"

    SOLVER_SETTINGS_FILE = PROGRAM_FILES / "solver_settings.json"
    CAPTION_PRESETS_FILE = PROGRAM_FILES / "caption_presets.json"
    MEDIUM_PRESETS_FILE  = PROGRAM_FILES / "medium_presets.json"

    def __init__(self, quiet: bool = False):
        """Initialize with built-in presets; load_presets() reads the JSON files."""
        self.quiet = quiet

        # Settings as read from Program_Files
        self.solverSettings: dict = {}
        self.captionSettings: dict = {}
        self.mediumSettings: dict = {}

        # Presets built from them
        self.presets = solverPresets()
        self.captions: dict[str, captionPreset] = {}
        self.media: dict[str, mediumPreset] = {}
        self.presetsLoaded = False

        # Current command
        self.command: str | None = None
        self.outputPath: Path | None = None
        self.rowsWritten = 0

    def load_presets(self) -> None:
        if not self.SOLVER_SETTINGS_FILE.exists():
            # Create default settings file if it doesn't exist
            save_settings(self, solverPresets().to_dict(), self.SOLVER_SETTINGS_FILE)
        self.solverSettings  = load_settings(self.SOLVER_SETTINGS_FILE, "solver settings", self.quiet)
        self.captionSettings = load_settings(self.CAPTION_PRESETS_FILE, "caption presets", self.quiet)
        self.mediumSettings  = load_settings(self.MEDIUM_PRESETS_FILE, "medium presets", self.quiet)

        self.presets  = solverPresets(self.solverSettings)
        self.captions = captions_from_dict(self.captionSettings)
        self.media    = media_from_dict(self.mediumSettings)
        self.presetsLoaded = True

    @property
    def out_dir(self) -> Path:
        return Path(os.environ.get(self.OUT_DIR_ENV, self.OUT_DIR))

    def resolve_output(self, path: str | Path | None) -> Path | None:
        '''None stays None (standard output); relative paths land in OUT_DIR.'''
        if path is None or str(path) == "-":
            return None
        p = Path(path).expanduser()
        if not p.is_absolute():
            p = self.out_dir / p
        p.parent.mkdir(parents=True, exist_ok=True)
        return p

    def reset(self) -> None:
        """Reset the per-command fields before the next command."""
        self.command = None
        self.outputPath = None
        self.rowsWritten = 0


def print_to_console(s: currentRun, text_to_print: str):
    """Status messages go to stderr so stdout carries only data."""
    if s.quiet:
        return
    print(text_to_print, file=sys.stderr)
