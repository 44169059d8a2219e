"""Session fixtures.

The E8 interval is built fresh once per session (and timed -- the build
time is itself under test), written to a cache file, and everything
downstream loads from that cache, so the save/load round trip is
exercised on every run.  The heavyweight C_31 artifacts (loop systems,
shared Hurwitz presentation, per-object presentation pipelines) are
likewise computed once and shared.
"""
from __future__ import annotations

import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=list(HealthCheck),
)
settings.load_profile("suite")

#: Wall-clock seconds of each expensive stage, shared with the acceptance
#: tests (which assert the documented time budgets).
TIMINGS: dict[str, float] = {}


@pytest.fixture(scope="session")
def timings() -> dict[str, float]:
    return TIMINGS


@pytest.fixture(scope="session")
def e8_lattice():
    from garcat.exactalg import build_e8, enumerate_reflections
    from garcat.interval import enumerate_interval

    gens, c = build_e8()
    t0 = time.perf_counter()
    reflections = enumerate_reflections(gens)
    lat = enumerate_interval(c, reflections, tag="e8")
    TIMINGS["interval_build"] = time.perf_counter() - t0
    return lat


@pytest.fixture(scope="session")
def e8_cache_path(e8_lattice, tmp_path_factory):
    from garcat.interval import save_cache

    path = tmp_path_factory.mktemp("cache") / "e8.gars"
    save_cache(e8_lattice, str(path))
    return str(path)


@pytest.fixture(scope="session")
def c31(e8_cache_path):
    from garcat.g31 import build_c31

    t0 = time.perf_counter()
    out = build_c31(e8_cache_path)
    TIMINGS["c31_build"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def systems(c31):
    from garcat.g31 import loop_systems

    t0 = time.perf_counter()
    out = loop_systems(c31)
    TIMINGS["loop_systems"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def hurwitz(c31):
    from garcat import presentation as pr

    t0 = time.perf_counter()
    out = pr.hurwitz_presentation(c31.ctx)
    TIMINGS["hurwitz"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def pipelines(c31, systems, hurwitz):
    from garcat.g31 import OBJECT_NAMES, presentation_pipeline

    out = {}
    t0 = time.perf_counter()
    for name in OBJECT_NAMES:
        out[name] = presentation_pipeline(
            c31, name, hurwitz=hurwitz, system=systems[name]
        )
    TIMINGS["pipelines"] = time.perf_counter() - t0
    return out
