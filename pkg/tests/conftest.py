import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the shared synth helpers

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def mini_raw() -> Path:
    return DATA_DIR / "mini_corpus_raw.jsonl"


@pytest.fixture(scope="session")
def mini_golden() -> Path:
    return DATA_DIR / "mini_corpus_golden.jsonl"


@pytest.fixture(scope="session")
def geo_files() -> tuple[Path, Path]:
    return DATA_DIR / "states.json", DATA_DIR / "cities.json"


@pytest.fixture(scope="session")
def citations_oracle() -> list[dict]:
    return json.loads((DATA_DIR / "citations_oracle.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def golden_records(mini_golden):
    from courtseg.jsonl import read_segmented_stream

    with open(mini_golden, encoding="utf-8") as fh:
        return [rec for rec in read_segmented_stream(fh)]
