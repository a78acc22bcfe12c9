import asyncio
import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))
from tripotent import MatZ, async_decompose_matrix, decompose_matrix, verify


@pytest.mark.asyncio
async def test_async_matches_sync():
    a = MatZ(360, [[17, 200, 3], [5, 359, 44], [0, 12, 90]])
    d = await async_decompose_matrix(a)
    assert d == decompose_matrix(a)
    assert verify(a, d).ok


@pytest.mark.asyncio
async def test_async_decompositions_run_concurrently():
    inputs = [MatZ(30, [[i, 1], [2, i + 3]]) for i in range(6)]
    results = await asyncio.gather(*(async_decompose_matrix(a) for a in inputs))
    for a, d in zip(inputs, results):
        assert verify(a, d).ok
