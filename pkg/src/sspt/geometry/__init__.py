from sspt.geometry.sampling import (
    angle_between,
    cone_angle_from_radius,
    radius_from_cone_angle,
    sample_direction_in_cone,
    sample_direction_uniform_sphere,
)
from sspt.geometry.sh import (
    ShBasis,
    n_coefficients,
    real_sh,
    sh_basis,
    sh_index,
)
from sspt.geometry.sphere import (
    DiscretizedSphere,
    expected_vertex_count,
    nearest_vertex,
    subdivide_icosahedron,
)
