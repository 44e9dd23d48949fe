# -*- coding: utf-8 -*-

from .pandas import (labeled_frame,
                     long_table,
                     read_csv,
                     write_csv,)
