"""Timing comparison between the compiled and pure-numpy kernels.

Run as ``python benchmarks/bench_kernels.py``.  Both implementations are
imported directly, so the comparison works regardless of which backend the
package itself selected at import time.
"""

import timeit

import numpy as np

from twocopy._kernels import _fallback

try:
    from twocopy._kernels import _core
except ImportError:
    _core = None


def _random_density(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    mat = g @ g.conj().T
    return np.ascontiguousarray(mat / mat.trace().real)


def _random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return np.ascontiguousarray(g + g.conj().T)


def _time(func, loops: int) -> float:
    return min(timeit.repeat(func, number=loops, repeat=5)) / loops


def main() -> None:
    rng = np.random.default_rng(0)
    cases = []
    for dims in [(2, 2), (3, 3), (2, 2, 2), (4, 4)]:
        d = int(np.prod(dims))
        rho = _random_density(d, rng)
        obs = _random_hermitian(d * d, rng)
        keep = (0,)
        loops = max(20, 40_000 // d**2)
        cases.append((f"purity {dims}", lambda m=rho: _fallback.purity(m),
                      None if _core is None else (lambda m=rho: _core.purity(m)),
                      loops))
        cases.append((
            f"reduced_purity {dims}",
            lambda m=rho, t=dims, k=keep: _fallback.reduced_purity(m, t, k),
            None if _core is None
            else (lambda m=rho, t=dims, k=keep: _core.reduced_purity(m, t, k)),
            loops,
        ))
        cases.append((
            f"two_copy_expect {dims}",
            lambda m=rho, o=obs: _fallback.two_copy_expect(m, o),
            None if _core is None
            else (lambda m=rho, o=obs: _core.two_copy_expect(m, o)),
            max(10, loops // 10),
        ))

    header = f"{'kernel':28s} {'numpy':>12s} {'compiled':>12s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, py_func, c_func, loops in cases:
        py_t = _time(py_func, loops)
        if c_func is None:
            print(f"{name:28s} {py_t * 1e6:10.2f}us {'n/a':>12s} {'n/a':>8s}")
            continue
        c_t = _time(c_func, loops)
        print(
            f"{name:28s} {py_t * 1e6:10.2f}us {c_t * 1e6:10.2f}us "
            f"{py_t / c_t:7.1f}x"
        )
    if _core is None:
        print("\ncompiled extension not available; showing numpy timings only")


if __name__ == "__main__":
    main()
