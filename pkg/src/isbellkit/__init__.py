"""Isbell completions and directed tight spans of finite generalized
metric spaces."""

from .errors import IsbellError
from .extnn import EPS, INF, monus
from .functionals import Functional, Role, coyoneda, yoneda
from .isbell import (IsbellPoint, conjugate_L, conjugate_R, embed,
                     isbell_dist, project_RL, project_LR)
from .space import Space, ShortMap, validate

__all__ = [
    "EPS", "INF", "Functional", "IsbellError", "IsbellPoint", "Role",
    "ShortMap", "Space", "conjugate_L", "conjugate_R", "coyoneda", "embed",
    "isbell_dist", "monus", "project_LR", "project_RL", "validate", "yoneda",
]
