import random
from itertools import product

import pytest

from ehrkit.counting import (
    BACKEND_ENV,
    THREADS_ENV,
    active_backend,
    available_backends,
    count_box_points,
)


def naive_count(normals, offsets, lows, highs):
    total = 0
    for point in product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if all(
            sum(a * x for a, x in zip(row, point)) <= off
            for row, off in zip(normals, offsets)
        ):
            total += 1
    return total


def random_system(rng, dim):
    n_facets = rng.randint(1, 5)
    normals = [
        tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(n_facets)
    ]
    offsets = [rng.randint(-6, 10) for _ in range(n_facets)]
    lows = [rng.randint(-4, 0) for _ in range(dim)]
    highs = [lo + rng.randint(0, 6) for lo in lows]
    return normals, offsets, lows, highs


@pytest.mark.parametrize("backend", available_backends())
def test_backends_match_naive_oracle(backend):
    rng = random.Random(101)
    for _ in range(60):
        dim = rng.choice([1, 2, 3, 4])
        normals, offsets, lows, highs = random_system(rng, dim)
        expected = naive_count(normals, offsets, lows, highs)
        assert (
            count_box_points(normals, offsets, lows, highs, backend=backend)
            == expected
        )


def test_backends_agree_pairwise():
    rng = random.Random(103)
    for _ in range(20):
        normals, offsets, lows, highs = random_system(rng, 3)
        results = {
            backend: count_box_points(normals, offsets, lows, highs, backend=backend)
            for backend in available_backends()
        }
        assert len(set(results.values())) == 1, results


def test_empty_box():
    assert count_box_points([(1,)], [5], [3], [2]) == 0


def test_no_inequalities_counts_whole_box():
    assert count_box_points([], [], [0, 0], [2, 3]) == 12


def test_one_dimensional_interval():
    # x >= 2 and x <= 7 inside box [0, 10]
    assert count_box_points([(-1,), (1,)], [-2, 7], [0], [10]) == 6


def test_huge_coordinates_fall_back_to_exact_python():
    # 10^19 factors exceed the int64 safety bound, so every backend must
    # route to the arbitrary-precision path and still be exact.
    big = 10**19
    for backend in available_backends():
        count = count_box_points(
            [(big, 0), (-big, 0)], [big * 5, 0], [0, 0], [10, 1], backend=backend
        )
        assert count == 12  # x in 0..5, y in 0..1


def test_huge_one_dimensional_box_is_exact():
    big = 10**20
    assert count_box_points([(1,)], [big], [0], [big]) == big + 1


def test_env_var_selects_backend(monkeypatch):
    monkeypatch.setenv(BACKEND_ENV, "python")
    assert active_backend() == "python"
    monkeypatch.setenv(BACKEND_ENV, "numpy")
    assert active_backend() == "numpy"
    monkeypatch.setenv(BACKEND_ENV, "bogus")
    with pytest.raises(ValueError):
        active_backend()
    monkeypatch.delenv(BACKEND_ENV)
    assert active_backend() in available_backends()


def test_env_var_drives_count(monkeypatch):
    normals, offsets = [(1, 1)], [3]
    monkeypatch.setenv(BACKEND_ENV, "numpy")
    assert count_box_points(normals, offsets, [0, 0], [3, 3]) == 10
    monkeypatch.setenv(BACKEND_ENV, "python")
    assert count_box_points(normals, offsets, [0, 0], [3, 3]) == 10


def test_thread_override_env(monkeypatch):
    if "numba" not in available_backends():
        pytest.skip("numba unavailable")
    monkeypatch.setenv(THREADS_ENV, "1")
    assert count_box_points([(1, 1)], [3], [0, 0], [3, 3], backend="numba") == 10
    import numba

    assert numba.get_num_threads() == 1
