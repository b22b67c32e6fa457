import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
DEMO_DATA = ROOT / "demos" / "data"
GOLDEN = Path(__file__).parent / "golden"
