"""

Raw row and document types, as read from and written to files.

"""

from .rows import *
from .documents import *
