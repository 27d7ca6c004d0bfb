# Copyright (c) The shrinkcs authors.
# trigger register mechanism
from shrinkcs import experiments, imaging, penalties, solvers
from shrinkcs.utils.logging import prepare_global_logging
from shrinkcs.version import __version__

prepare_global_logging()
