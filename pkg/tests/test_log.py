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
"""Tests for the logging setup."""
import io
import logging

import pytest

from sheaf_plethysm.lib.log import HANDLER_NAME, setup_logging


def installed():
    """Handlers installed by setup_logging."""
    return [h for h in logging.getLogger().handlers if h.get_name() == HANDLER_NAME]


class TestLogging:
    """Root logger configuration."""

    def test_records_carry_application(self, monkeypatch):
        """Every record names the application, version and environment."""
        monkeypatch.delenv("SHEAF_PLETHYSM_LOGLEVEL", raising=False)
        stream = io.StringIO()
        setup_logging("Sheaf Plethysm", "1.0", "production", stream)
        logging.getLogger("SP - Test").info("hello")
        assert "[Sheaf Plethysm 1.0 production] SP - Test: hello" in stream.getvalue()
        assert logging.getLogger().level == logging.INFO

    def test_replaces_handler(self, monkeypatch):
        """Repeated setup keeps a single handler."""
        monkeypatch.delenv("SHEAF_PLETHYSM_LOGLEVEL", raising=False)
        setup_logging("Sheaf Plethysm", "1.0", "development", io.StringIO())
        setup_logging("Sheaf Plethysm", "1.0", "development", io.StringIO())
        assert len(installed()) == 1
        assert logging.getLogger().level == logging.DEBUG

    def test_level_override(self, monkeypatch):
        """SHEAF_PLETHYSM_LOGLEVEL overrides the environment default."""
        monkeypatch.setenv("SHEAF_PLETHYSM_LOGLEVEL", "warning")
        setup_logging("Sheaf Plethysm", "1.0", "development", io.StringIO())
        assert logging.getLogger().level == logging.WARNING

    def test_unknown_level(self, monkeypatch):
        """An unknown level name is rejected."""
        monkeypatch.setenv("SHEAF_PLETHYSM_LOGLEVEL", "chatty")
        with pytest.raises(ValueError):
            setup_logging("Sheaf Plethysm", "1.0", "production", io.StringIO())
