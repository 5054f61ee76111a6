"""Print the acceptance lines only: one PASS/FAIL line per criterion."""

import pathlib
import subprocess
import sys

root = pathlib.Path(__file__).resolve().parent.parent
proc = subprocess.run(
    [sys.executable, "-m", "pytest", str(root / "tests" / "test_acceptance.py"), "-q", "-s", "-p", "no:cacheprovider"],
    capture_output=True, text=True, cwd=root,
)
lines = [ln[ln.index("PASS"):] if "PASS criterion" in ln else ln[ln.index("FAIL"):]
         for ln in proc.stdout.splitlines() if "PASS criterion" in ln or "FAIL criterion" in ln]
print("\n".join(lines))
sys.exit(proc.returncode)
