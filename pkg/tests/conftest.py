import json
import os
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from cr_config import CRSettings
from cr_formats import encode_array
from group_atlas import builtin_algebra


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in list(os.environ):
        if name.startswith("CRGEOM_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def sl2r():
    return builtin_algebra("sl2r")


@pytest.fixture
def su2():
    return builtin_algebra("su2")


@pytest.fixture
def heis():
    return builtin_algebra("heis")


@pytest.fixture
def e2():
    return builtin_algebra("e2")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def quick_settings():
    return CRSettings(default_samples=10)


def _algebra_file_payload(alg):
    payload = {"basis": list(alg.basis_names), "brackets": alg.describe()["brackets"]}
    if alg.matrix_rep is not None:
        payload["rep"] = [encode_array(mat) for mat in alg.matrix_rep]
    return payload


@pytest.fixture
def algebra_file(tmp_path):
    """Write an algebra in the on-disk format; the file name is the caller's choice."""

    def write(alg, filename, **extra):
        path = tmp_path / filename
        path.write_text(json.dumps({**_algebra_file_payload(alg), **extra}), encoding="utf-8")
        return path

    return write
