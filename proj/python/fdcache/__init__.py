# Copyright 2026 The fdcache Authors
# SPDX-License-Identifier: Apache-2.0
"""Cache-aided full-duplex small-cell networks: analytic model and simulator."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
