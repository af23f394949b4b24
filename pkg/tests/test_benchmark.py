import importlib.util
from pathlib import Path

import pytest

from puiseux import _kernels_py

try:
    from puiseux import _ckernels
except ImportError:
    _ckernels = None

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
def test_benchmark_workloads_agree_across_backends():
    spec = importlib.util.spec_from_file_location("bench_kernels", BENCH)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    for name, kind, args in bench.workloads():
        assert bench.same(kind, bench.run(_kernels_py, kind, args), bench.run(_ckernels, kind, args)), name
