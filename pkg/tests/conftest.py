import pytest

from service.classify import enumerate_degree
from service.homotopy import TrackOptions


@pytest.fixture(scope="session")
def track_options():
    return TrackOptions()


@pytest.fixture(scope="session")
def census(track_options):
    """按次数缓存的完整普查，每个会话只求解一次"""
    reports = {}

    def get(n: int):
        if n not in reports:
            reports[n] = enumerate_degree(n, track_options, tracker=None)
        return reports[n]

    return get
