"""Explicit block diagonalization of the commutant of a wreath product G~S_n
acting on the generalized Boolean algebra B_X(n)."""
from .block_diag import BlockImage, alpha, factorized_apply, johnson_eigenvalue, lambda_sum, phi
from .boolean_scheme import beta, build_sjb, delsarte_eigenvalue, schrijver_block
from .generalized_boolean import (
    BlockIndex, OrbitInvariant, Word, build_M, enumerate_words, index_set_I, index_set_I_level,
    index_set_J, index_set_J_level, mu, orbit_type,
)
from .group_action import (
    GroupAction, GroupError, SpectralTable, check_multiplicity_free, cyclic_group, load_group,
    orbit_matrix, orbitals, spectral_table, symmetric_group,
)
from .jordan_ssjb import TensorLabel, build_ssjb, build_unitary, standard_vector

__version__ = "0.1.0"


def data_file(name: str) -> str:
    """Path of a bundled group file: ``s2``, ``s3``, ``c3`` or ``d4``."""
    from importlib.resources import files
    return str(files(__name__) / "data" / f"{name}.json")
