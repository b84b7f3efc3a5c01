"""Configure Django so pytest can collect the apps' SimpleTestCase suites."""
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / 'noncontextualSim'))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'noncontextualSim.settings')

import django  # noqa: E402

django.setup()
