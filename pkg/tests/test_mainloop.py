import pytest

from k3python.mainloop import (JOBS_ENV_VAR, JobFailure, MainLoop,
                               MainLoopError, default_parallelism,
                               parallel_map)


def test_default_parallelism(monkeypatch):
    monkeypatch.delenv(JOBS_ENV_VAR, raising=False)
    assert default_parallelism() == 1
    monkeypatch.setenv(JOBS_ENV_VAR, '3')
    assert default_parallelism() == 3
    monkeypatch.setenv(JOBS_ENV_VAR, '0')
    assert default_parallelism() >= 1
    monkeypatch.setenv(JOBS_ENV_VAR, 'many')
    with pytest.raises(MainLoopError):
        default_parallelism()


@pytest.mark.parametrize('parallelism', [1, 4])
def test_order_is_kept(parallelism):
    assert parallel_map(lambda v: v * v, range(20), parallelism) == [
        v * v for v in range(20)]


def test_collect_result():
    collected = []

    def fail_on_three(job):
        if job == 3:
            raise ValueError(job)
        return job

    loop = MainLoop(range(5), fail_on_three,
                    lambda job, result, info: collected.append(
                        (job, result, info[1])), parallelism=2)
    assert [c[2] for c in collected] == list(range(5))
    assert isinstance(loop.results[3], JobFailure)
    with pytest.raises(ValueError):
        parallel_map(fail_on_three, range(5), 2)
