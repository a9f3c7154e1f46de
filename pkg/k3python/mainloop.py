############################################################################
#                                                                          #
#                               MAINLOOP.PY                                #
#                                                                          #
#              Copyright (C) 2026 The k3python developers                  #
#                                                                          #
# This program is free software: you can redistribute it and/or modify     #
# it under the terms of the GNU General Public License as published by     #
# the Free Software Foundation, either version 3 of the License, or        #
# (at your option) any later version.                                      #
#                                                                          #
# This program is distributed in the hope that it will be useful,          #
# but WITHOUT ANY WARRANTY; without even the implied warranty of           #
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
# GNU General Public License for more details.                             #
#                                                                          #
# You should have received a copy of the GNU General Public License        #
# along with this program.  If not, see <http://www.gnu.org/licenses/>     #
#                                                                          #
############################################################################

"""Generic loop for verification jobs.

This package provides a class called MainLoop that runs a list of jobs on
a set of workers whose number is set by the user. Each job is passed to
the user defined function ``run_job``; once a job is finished
``collect_result`` is called with the job, its result and the job_info
``(slot, index)``.

From the user point of view there is no parallelism to handle: the
collect_result calls are sequential and happen in the order of the job
list, whatever the order in which the workers finish. A job raising an
exception is reported to collect_result with a JobFailure in place of its
result.

The number of workers defaults to the value of the K3PYTHON_JOBS
environment variable (1 if unset, 0 meaning one worker per cpu).

The workers are threads of the calling process. The jobs of k3python are
pure Python sympy and mpmath computations that hold the global interpreter
lock, so more workers do not make them faster; jobs are also closures,
which a process pool could not pickle.
"""

from concurrent.futures import ThreadPoolExecutor
import logging
import os
import traceback

logger = logging.getLogger('k3python.mainloop')

JOBS_ENV_VAR = 'K3PYTHON_JOBS'


class MainLoopError(Exception):
    pass


class JobFailure(object):
    """Result of a job that raised an exception.

    :ivar error: the exception
    :ivar traceback: the formatted traceback
    """

    def __init__(self, error, tb):
        self.error = error
        self.traceback = tb

    def __repr__(self):
        return 'JobFailure(%r)' % self.error


def default_parallelism():
    """Return the number of workers requested by the environment.

    :rtype: int
    """
    value = os.environ.get(JOBS_ENV_VAR, '1')
    try:
        jobs = int(value)
    except ValueError:
        raise MainLoopError('%s should be an integer, got %r'
                            % (JOBS_ENV_VAR, value))
    if jobs < 0:
        raise MainLoopError('%s should be >= 0' % JOBS_ENV_VAR)
    if jobs == 0:
        jobs = os.cpu_count() or 1
    return jobs


class MainLoop(object):
    """Run a list of jobs."""

    def __init__(self, item_list, run_job, collect_result=None,
                 parallelism=None):
        """Launch loop.

        :param item_list: a list of jobs
        :type item_list: list
        :param run_job: a function taking a job and returning its result
        :param collect_result: a function called for each finished job with
            prototype func(job, result, job_info); job_info is the tuple
            (slot_number, job_index)
        :param parallelism: number of workers, default is given by
            default_parallelism()
        :type parallelism: int | None
        """
        self.parallelism = parallelism
        if self.parallelism is None:
            self.parallelism = default_parallelism()
        elif self.parallelism == 0:
            self.parallelism = os.cpu_count() or 1

        self.item_list = list(item_list)
        self.results = []

        logger.debug("start main loop with %d workers for %d jobs",
                     self.parallelism, len(self.item_list))

        if self.parallelism == 1 or len(self.item_list) <= 1:
            for index, job in enumerate(self.item_list):
                self.__collect(job, self.__run(run_job, job), 0, index,
                               collect_result)
            return

        with ThreadPoolExecutor(max_workers=self.parallelism) as pool:
            futures = [pool.submit(self.__run, run_job, job)
                       for job in self.item_list]
            for index, (job, future) in enumerate(
                    zip(self.item_list, futures)):
                self.__collect(job, future.result(),
                               index % self.parallelism, index,
                               collect_result)

    @staticmethod
    def __run(run_job, job):
        try:
            return run_job(job)
        except Exception as e:
            logger.debug('job %r raised %s', job, e)
            return JobFailure(e, traceback.format_exc())

    def __collect(self, job, result, slot, index, collect_result):
        self.results.append(result)
        if collect_result is not None:
            collect_result(job, result, (slot, index))


def parallel_map(function, items, parallelism=None):
    """Apply function to each item with a MainLoop.

    :return: the list of results in the order of items. The first job
        failure is re-raised.
    :rtype: list
    """
    loop = MainLoop(items, function, parallelism=parallelism)
    for result in loop.results:
        if isinstance(result, JobFailure):
            raise result.error
    return loop.results
