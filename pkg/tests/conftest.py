import pytest
from threadpoolctl import threadpool_limits


@pytest.fixture(autouse=True, scope="session")
def _single_thread_blas():
    # the suite's linear algebra is all small matrices; threaded BLAS only
    # adds spin-wait jitter to timings
    with threadpool_limits(limits=1, user_api="blas"):
        yield
