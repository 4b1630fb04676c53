__version__ = "0.1.0"

from .base_field import FqConfig, KElement  # noqa: E402,F401
from .biderivation import Biderivation, inner  # noqa: E402,F401
from .exceptions import DrinfeldExtError  # noqa: E402,F401
from .skew_poly import SkewMatrix, SkewPoly  # noqa: E402,F401
from .tmodule import (  # noqa: E402,F401
    DrinfeldModule,
    TModuleMorphism,
    TModulePresentation,
    carlitz,
    carlitz_tensor,
    make_drinfeld,
)
