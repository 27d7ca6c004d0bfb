# Copyright (c) The shrinkcs authors.
__version__ = '0.1.0'
