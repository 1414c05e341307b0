from sspt.phantom.generator import (
    KernelProjector,
    fiber_directions_at,
    generate,
    project_kernel_to_sh,
)
from sspt.phantom.phantom_spec import PhantomKind, PhantomSpec
