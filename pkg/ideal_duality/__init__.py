from .config import Config, __version__
from .groebner import buchberger, ideal_basis, membership, normal_form, syzygy_module
from .resolution import be_exactness, dualize, free_resolution, minimalize
from .ext_duality import cm_check, ext_module, purity_check, support_containment
from .noetherian import RationalSection, VariableSplit, noetherian_membership, noetherian_operators
from .residue import QuotientAlgebra, bezoutian, hefer_matrix, residue, residue_functional
from .problem import format_problem, parse_problem
