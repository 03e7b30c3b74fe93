"""
conftest.py  (project root)
============================
Loads the .env file BEFORE pytest collects any tests, so QCAFORGE_THREADS and
other settings reach the engine the same way they do from the CLI.
"""
import os
import sys

from dotenv import load_dotenv

# ── Load .env from the project root before collection ───────────────────────
load_dotenv(os.path.join(os.path.dirname(__file__), '.env'))

# ── Ensure src/ is importable ────────────────────────────────────────────────
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))
