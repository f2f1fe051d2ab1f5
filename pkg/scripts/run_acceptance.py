"""Run acceptance criteria 1-11 and print one PASS/FAIL line per criterion."""
import pathlib
import sys

import pytest

if __name__ == "__main__":
    tests = pathlib.Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    sys.exit(pytest.main([str(tests), "-q", "-p", "no:cacheprovider"]))
