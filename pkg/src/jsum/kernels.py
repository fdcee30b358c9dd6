"""Backend selection for the O(q) sweep kernels.

The compiled extension is used when it imports; setting ``JSUM_PURE_PYTHON=1``
forces the pure-Python fallback.  Both backends produce identical output.

The sweeps over field elements split the rank range into equal chunks, one
per thread, and merge the per-chunk histograms.  Results do not depend on the
partitioning.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

try:
    if os.environ.get("JSUM_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced")
    from . import _ckernels as _native
except ImportError:
    _native = None

NO_INDEX = _pykernels.NO_INDEX
BACKEND = "cython" if _native is not None else "python"
MIN_CHUNK = 1 << 15


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _native is not None else [])


def _impl(backend: str | None):
    backend = backend or BACKEND
    if backend == "cython":
        if _native is None:
            raise RuntimeError("compiled kernels are not built")
        return _native
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown backend {backend!r}")


def default_threads() -> int:
    return os.cpu_count() or 1


def _chunks(q: int, threads: int) -> list[tuple[int, int]]:
    n = max(1, min(threads, q // MIN_CHUNK))
    bounds = [q * k // n for k in range(n + 1)]
    return list(zip(bounds[:-1], bounds[1:]))


def fill_index(mulmat: list[int], p: int, r: int, q: int, backend: str | None = None) -> np.ndarray:
    out = _impl(backend).fill_index(list(mulmat), p, r, q)
    return np.asarray(out, dtype=np.uint32)


def _sweep(name: str, index: np.ndarray, args: tuple, q: int, threads: int | None,
           backend: str | None) -> list[int]:
    impl = _impl(backend)
    fn = getattr(impl, name)
    idx = index if impl is _native else index.tolist()
    parts = _chunks(q, threads or default_threads())
    if len(parts) == 1:
        return list(fn(idx, *args, 0, q))
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        results = list(pool.map(lambda b: fn(idx, *args, b[0], b[1]), parts))
    return [sum(col) for col in zip(*results)]


def cycnum_counts(index: np.ndarray, p: int, q: int, e: int, threads: int | None = None,
                  backend: str | None = None) -> list[int]:
    return _sweep("cycnum_counts", index, (p, q, e), q, threads, backend)


def jacobi_histogram(index: np.ndarray, p: int, q: int, e: int, i: int, j: int,
                     threads: int | None = None, backend: str | None = None) -> list[int]:
    return _sweep("jacobi_histogram", index, (p, q, e, i % e, j % e), q, threads, backend)
