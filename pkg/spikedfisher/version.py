# -*- coding: utf-8 -*-
# License: New BSD
"""
Unique version information place
"""

__version__ = "0.1.0"
VERSION = tuple(int(x) for x in __version__.split("."))
