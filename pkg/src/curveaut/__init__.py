"""curveaut: exact automorphism groups of smooth plane curves.

Construction of the named curve families, finite closure of projective
matrix groups over cyclotomic fields, smoothness and Galois-point tests,
the five-case classification with witnesses, and the genus-based bound
calculators, behind a FastAPI service and a CLI.
"""

from .bounds import arakawa, case_bound, hurwitz, hurwitz_admits, oikawa
from .classify import (
    ClassificationReport,
    classify,
    theorem2_audit,
    theorem3_audit,
    verify_action,
)
from .curves import (
    CurveFamilyInstance,
    descendant_check,
    galois_group_at,
    make_family,
)
from .cyclo import CycloElem, embed_to, parse_scalar, rational, root_of_unity_order, zeta
from .groupid import GroupLabel, fingerprint, pbd_split
from .polyring import (
    ProjLine,
    ProjPoint,
    TernaryForm,
    core_decomposition,
    evaluate,
    genus,
    intersection_multiplicity,
    is_smooth,
    lies_on,
    line_meet_count,
    preserves_up_to_scalar,
    restrict_to_line,
    tangent_line,
    transform_action,
)
from .projgroup import (
    MatrixGroup,
    ProjTransform,
    canonicalize,
    closure,
    eigen_structure,
    element_order,
    fixed_configuration,
    homology_data,
)

__version__ = "0.1.0"
