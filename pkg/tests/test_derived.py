"""The frozen oracle values are what the oracle script computes today."""

import importlib.util
import json
from pathlib import Path

from _helpers import GOLDEN


def test_freeze_is_current(tmp_path, monkeypatch):
    found = importlib.util.spec_from_file_location("derive", Path(__file__).parent / "oracle" / "derive.py")
    mod = importlib.util.module_from_spec(found)
    found.loader.exec_module(mod)
    monkeypatch.setattr(mod, "OUT", tmp_path / "derived.json")
    mod.main()
    fresh = json.loads((tmp_path / "derived.json").read_text())
    frozen = json.loads((GOLDEN / "derived.json").read_text())
    assert fresh == frozen
