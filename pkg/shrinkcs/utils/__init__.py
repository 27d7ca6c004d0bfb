# Copyright (c) The shrinkcs authors.
# the logger class must be installed before any module level logger is created
from shrinkcs.utils.logging import ShrinkCSLogger  # noqa: F401
