# Copyright 2024 Sheaf Plethysm contributors.
#
# For a full list of individual contributors, please see the commit history.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Executor handler module."""
import logging
import threading


class Executor:  # pylint:disable=too-few-public-methods
    """Run independent verification cases on a bounded number of threads."""

    logger = logging.getLogger("SP - Executor")

    def __init__(self, workers=1):
        """Initialize executor.

        :param workers: Largest number of threads running at once.
        :type workers: int
        """
        if workers < 1:
            raise ValueError("At least one worker is needed, got {}".format(workers))
        self.workers = workers

    def run_cases(self, cases):
        """Run every case and return the results in case order.

        :param cases: Sequence of (name, callable without arguments).
        :type cases: list
        :return: Results, the i-th belonging to the i-th case.
        :rtype: list
        :raises Exception: The exception of the first failing case, by index.
        """
        cases = list(cases)
        results = [None] * len(cases)
        errors = [None] * len(cases)
        lock = threading.Lock()
        pending = iter(range(len(cases)))

        def work():
            while True:
                with lock:
                    index = next(pending, None)
                if index is None:
                    return
                name, function = cases[index]
                self.logger.debug("Running %s", name)
                try:
                    results[index] = function()
                except Exception as exception:  # pylint:disable=broad-except
                    self.logger.error("Case %s raised %r", name, exception)
                    errors[index] = exception

        if self.workers == 1 or len(cases) < 2:
            work()
        else:
            threads = []
            for _ in range(min(self.workers, len(cases))):
                thread = threading.Thread(target=work)
                threads.append(thread)
                thread.start()
            for thread in threads:
                thread.join()
        self.logger.info("%d cases finished.", len(cases))
        for error in errors:
            if error is not None:
                raise error
        return results
