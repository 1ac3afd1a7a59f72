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
"""Tests for the case executor."""
import pytest

from sheaf_plethysm.lib.executor import Executor


class TestExecutor:
    """Bounded thread execution."""

    @pytest.mark.parametrize("workers", [1, 3])
    def test_order_kept(self, workers):
        """Results come back in case order for any worker count."""
        cases = [("case {}".format(i), lambda i=i: i * i) for i in range(10)]
        assert Executor(workers).run_cases(cases) == [i * i for i in range(10)]

    def test_first_error_raised(self):
        """The exception of the first failing case by index is raised."""

        def fail(message):
            raise RuntimeError(message)

        cases = [
            ("ok", lambda: 1),
            ("first", lambda: fail("first")),
            ("second", lambda: fail("second")),
        ]
        with pytest.raises(RuntimeError, match="first"):
            Executor(2).run_cases(cases)

    def test_workers_positive(self):
        """At least one worker."""
        with pytest.raises(ValueError):
            Executor(0)

    def test_no_cases(self):
        """Nothing to run gives nothing back."""
        assert Executor(4).run_cases([]) == []
