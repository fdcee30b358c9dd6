import numpy as np
import pytest

from jsum import kernels
from jsum.fieldtab import build_field, multiplication_matrix

FIELDS = [(19, 1), (37, 1), (2, 3), (7, 3), (3, 4)]


def test_backend_selected():
    assert kernels.BACKEND in kernels.available_backends()
    assert "python" in kernels.available_backends()


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.fill_index([0], 2, 1, 2, backend="fortran")


@pytest.mark.parametrize("p,r", FIELDS)
def test_fill_index_backends_agree(p, r):
    f = build_field(p, r)
    mm = multiplication_matrix(f.gamma, f.modulus, p)
    tables = [np.asarray(kernels.fill_index(mm, p, r, f.q, backend=b), dtype=np.uint32)
              for b in kernels.available_backends()]
    for t in tables[1:]:
        assert np.array_equal(t, tables[0])
    assert np.array_equal(tables[0], f.index)


@pytest.mark.parametrize("p,r", FIELDS)
def test_sweeps_backends_agree(p, r):
    f = build_field(p, r)
    e = f.q - 1 if f.q - 1 <= 40 else 13 if (f.q - 1) % 13 == 0 else 2
    cyc = [kernels.cycnum_counts(f.index, p, f.q, e, backend=b) for b in kernels.available_backends()]
    jac = [kernels.jacobi_histogram(f.index, p, f.q, e, 1, 3, backend=b)
           for b in kernels.available_backends()]
    assert all(c == cyc[0] for c in cyc)
    assert all(j == jac[0] for j in jac)
    assert sum(cyc[0]) == f.q - 2
    assert sum(jac[0]) == f.q - 2


@pytest.mark.parametrize("backend", kernels.available_backends())
def test_thread_partitioning_is_invisible(monkeypatch, backend):
    f = build_field(7, 3)
    base_c = kernels.cycnum_counts(f.index, 7, f.q, 18, threads=1, backend=backend)
    base_j = kernels.jacobi_histogram(f.index, 7, f.q, 18, 2, 5, threads=1, backend=backend)
    monkeypatch.setattr(kernels, "MIN_CHUNK", 7)
    for threads in (2, 3, 8):
        assert len(kernels._chunks(f.q, threads)) > 1
        assert kernels.cycnum_counts(f.index, 7, f.q, 18, threads=threads, backend=backend) == base_c
        assert kernels.jacobi_histogram(f.index, 7, f.q, 18, 2, 5, threads=threads, backend=backend) == base_j


def test_chunks_cover_range():
    chunks = kernels._chunks(10**6, 4)
    assert chunks[0][0] == 0 and chunks[-1][1] == 10**6
    assert all(a[1] == b[0] for a, b in zip(chunks, chunks[1:]))
