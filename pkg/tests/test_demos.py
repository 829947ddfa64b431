import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=[p.stem for p in DEMOS])
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(script), "--small"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout
