"""Framed almost complex models, their Nijenhuis tensor and its rank."""

from .builders import (abelian_lie, abelian_torus, c2_example, check_jacobi, coordinate_model,
                       from_lie_algebra, kodaira_thurston, lie_from_differentials,
                       mapping_torus_leading, mapping_torus_s1s3, mapping_torus_vectors, product,
                       rotation_J, t6_rank2, torus_a, torus_mni, JacobiError)
from .io import SchemaError, load_model, model_from_dict
from .model import (FramedModel, ModelError, check_identification, d_squared_zero,
                    dbar_function, exterior_d, mubar_columns, mubar_matrix, nijenhuis_vec,
                    theta_components, theta_dual_vector)
from .rank import (RankReport, certificate, coframe_det, generic_rank, min_sampled_rank,
                   rank_at, unit_dominant)
