"""Compare the compiled grid oracle with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [n ...]
"""
import sys
import timeit

from ncur import _fallback
from ncur.kernels import BACKEND

try:
    from ncur import _kernels
except ImportError:
    _kernels = None


def bench(n: int, repeat: int = 3) -> None:
    py_t = min(timeit.repeat(lambda: _fallback.grid_oracle(n), number=1, repeat=repeat))
    line = f"n={n:4d}  python {py_t * 1e3:9.2f} ms"
    if _kernels is not None:
        assert _kernels.grid_oracle(n) == _fallback.grid_oracle(n), "backends disagree"
        cy_t = min(timeit.repeat(lambda: _kernels.grid_oracle(n), number=1, repeat=repeat))
        line += f"  cython {cy_t * 1e3:9.2f} ms  speedup {py_t / cy_t:6.1f}x"
    else:
        line += "  cython (not built)"
    print(line)


if __name__ == "__main__":
    sizes = [int(a) for a in sys.argv[1:]] or [20, 40, 80, 120]
    print(f"default backend: {BACKEND}")
    for n in sizes:
        bench(n)
