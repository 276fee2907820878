"""Services: polytope projection, Gaussian and discrete region sweeps, reductions, output."""
from secrecy_regions.services.polytope import (
    build_polytope,
    hull2d,
    max_weighted_rate,
    project_bundle,
    trace_region,
)
from secrecy_regions.services.gaussian_region import (
    max_sum_rate,
    region_full,
    region_partial,
    regular_region,
    sum_rate_full,
    sum_rate_partial,
    t_terms,
)
from secrecy_regions.services.dm_region import bundle_dm, joint_law, region_full_dm, region_partial_dm
from secrecy_regions.services.reductions import (
    mac_wiretap_region,
    miso_sum_rate,
    relay_eavesdropper_rate,
)
from secrecy_regions.services.runner import fig3_preset, fig4_preset, run

__all__ = [
    "build_polytope",
    "hull2d",
    "max_weighted_rate",
    "project_bundle",
    "trace_region",
    "max_sum_rate",
    "region_full",
    "region_partial",
    "regular_region",
    "sum_rate_full",
    "sum_rate_partial",
    "t_terms",
    "bundle_dm",
    "joint_law",
    "region_full_dm",
    "region_partial_dm",
    "mac_wiretap_region",
    "miso_sum_rate",
    "relay_eavesdropper_rate",
    "fig3_preset",
    "fig4_preset",
    "run",
]
