"""Shared fixtures: arithmetic tables, the family zero cache, T=500 scans.

The zero cache persists in .lzeros-cache at the repo root so repeated
pytest runs skip the multi-minute family build; delete the directory to
force a rebuild. Everything else is cheap and session-scoped for speed.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from lzeros import lfun
from lzeros.arith import get_tables
from lzeros.cache import ZeroCache, build_family
from lzeros.characters import character_group
from lzeros.testfn import bump_weight, sinc_squared

FAMILY_Q = 25.0
FAMILY_T = 200.0
DEEP_MODULI = (3, 4, 5, 7, 8)
DEEP_T = 500.0


@pytest.fixture(scope="session")
def tables():
    """One sieve big enough for every desk-scale test (2^21)."""
    return get_tables(2_000_000)


@pytest.fixture(scope="session")
def weight():
    return bump_weight()


@pytest.fixture(scope="session")
def phi():
    return sinc_squared()


@pytest.fixture(scope="session")
def zero_cache():
    """Family cache for Q = 25, T_max = 200 (persistent across runs)."""
    cache = ZeroCache(Path(__file__).resolve().parent.parent / ".lzeros-cache")
    build_family(cache, FAMILY_Q, FAMILY_T, jobs=1)
    return cache


@pytest.fixture(scope="session")
def deep_scans(zero_cache):
    """T = 500 scans for every primitive character mod q in {3,4,5,7,8}.

    Stored in the same persistent cache (the envelope allows T <= 500),
    keyed by (q, exponents).
    """
    out = {}
    for q in DEEP_MODULI:
        for chi in character_group(q).primitive:
            if zero_cache.has(q, chi.exponents, DEEP_T):
                out[(q, chi.exponents)] = zero_cache.read(q, chi.exponents,
                                                          DEEP_T)
            else:
                scan = lfun.find_zeros(chi, DEEP_T)
                zero_cache.store(scan, conductor=chi.conductor)
                out[(q, chi.exponents)] = scan
    return out
