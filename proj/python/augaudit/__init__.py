# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The augaudit Authors
"""Augmented-data bias audit toolkit (Python bindings)."""

from ._augaudit import *  # noqa: F401,F403
from ._augaudit import __version__  # noqa: F401
