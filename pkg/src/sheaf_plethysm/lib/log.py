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
"""Logging setup."""
import logging
import os
import sys

FORMAT = (
    "%(asctime)s %(levelname)s [{application} {version} {environment}] "
    "%(name)s: %(message)s"
)
HANDLER_NAME = "sheaf_plethysm"


def setup_logging(application, version, environment, stream=None):
    """Install one stream handler on the root logger.

    Calling it again replaces the handler installed by an earlier call.

    :param application: Name shown in every record.
    :type application: str
    :param version: Application version.
    :type version: str
    :param environment: 'development' logs at DEBUG, anything else at INFO.
    :type environment: str
    :param stream: Stream to write to, stderr by default.
    :type stream: file
    :return: The installed handler.
    :rtype: :obj:`logging.Handler`
    """
    level = logging.DEBUG if environment == "development" else logging.INFO
    override = os.getenv("SHEAF_PLETHYSM_LOGLEVEL")
    if override:
        level = logging.getLevelName(override.upper())
        if not isinstance(level, int):
            raise ValueError("Unknown log level {!r}".format(override))

    root = logging.getLogger()
    for handler in list(root.handlers):
        if handler.get_name() == HANDLER_NAME:
            root.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.set_name(HANDLER_NAME)
    handler.setFormatter(
        logging.Formatter(
            FORMAT.format(application=application, version=version, environment=environment)
        )
    )
    root.addHandler(handler)
    root.setLevel(level)
    return handler
