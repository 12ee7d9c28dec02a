"""Thomas-Fermi and Emden-Fowler equations through homology-invariant charts."""

from .errors import BracketError, DomainError, SingularityError
from .homology import (CoppelUV, DresnerConstants, DresnerTauS, HomologyMap,
                       MajoranaConstants, MajoranaTU, MilneUV, apply_homology,
                       homology_exponent, solve_dresner_constants,
                       solve_majorana_constants, to_coppel, to_dresner,
                       to_majorana, to_milne)
from .odes import (EquationParams, SolutionTable, Termination, ef_rhs,
                   integrate_direct, shoot_initial_slope, tf_series_start)
from .reconstruct import (ParametricSolution, initial_slope_from_u0,
                          reconstruct_dresner, reconstruct_majorana, w_of_t)
from .reduced import (ReducedSolution, coppel_rhs, dresner_rhs,
                      majorana_boundary_slope, majorana_general_rhs,
                      majorana_rhs, milne_rhs, solve_majorana,
                      solve_reduced_generic)

__version__ = "0.1.0"

__all__ = [
    "BracketError", "DomainError", "SingularityError",
    "CoppelUV", "DresnerConstants", "DresnerTauS", "HomologyMap",
    "MajoranaConstants", "MajoranaTU", "MilneUV", "apply_homology",
    "homology_exponent", "solve_dresner_constants", "solve_majorana_constants",
    "to_coppel", "to_dresner", "to_majorana", "to_milne",
    "EquationParams", "SolutionTable", "Termination", "ef_rhs",
    "integrate_direct", "shoot_initial_slope", "tf_series_start",
    "ParametricSolution", "initial_slope_from_u0", "reconstruct_dresner",
    "reconstruct_majorana", "w_of_t",
    "ReducedSolution", "coppel_rhs", "dresner_rhs", "majorana_boundary_slope",
    "majorana_general_rhs", "majorana_rhs", "milne_rhs", "solve_majorana",
    "solve_reduced_generic",
]
