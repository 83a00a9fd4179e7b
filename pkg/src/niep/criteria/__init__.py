from .kellogg import *  # noqa: F401,F403
from .real import *  # noqa: F401,F403
from .guo import *  # noqa: F401,F403
from .complex_region import *  # noqa: F401,F403
from .rado import *  # noqa: F401,F403
