"""Shared test setup.

The derivation-basis cache is redirected into a throwaway directory so test
runs never read or write state left by earlier runs, and the generator
tensors are built once up front so individual timing-sensitive checks
measure only their own work.
"""

import os
import tempfile

os.environ["F4DIAGRAMS_CACHE_DIR"] = tempfile.mkdtemp(prefix="f4cache-")

import pytest


@pytest.fixture(scope="session")
def warm_tensors():
    from f4diagrams.functor import generator_tensors

    return generator_tensors()
