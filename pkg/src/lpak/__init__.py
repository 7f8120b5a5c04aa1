"""K-theory and Morita classification for Leavitt path algebras of finite-vertex graphs."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    INFINITY,
    Graph,
    GraphError,
    cuntz_splice,
    is_simple,
    parse_graph,
    partition_vertices,
    presentation_matrix,
)
from .groups import AlgClosed, FiniteField, GroupExpr, NumberField, parse_field  # noqa: E402
from .intlinalg import FgAbGroup, IntMatrix, smith_normal_form  # noqa: E402
from .ktheory import Fidelity, KGroupResult, k0, k1, k_group  # noqa: E402
from .classify import morita_equivalent  # noqa: E402
