"""dirmax: computational experiments with directional maximal operators.

Direction-set generators and their inverse slopes, Perron factors and
capacities, constructive witness searches inside random direction sets,
closed-form probability checks, and rasterized Kakeya blow demonstrations.
"""

from .directions import (
    DirectionSample,
    OrderedSample,
    generate,
    generate_from_spec,
    invert,
    stream_value,
)
from .lacunary import (
    LacunaryCertificate,
    is_lacunary_sequence,
    verify_order_certificate,
)
from .perron import (
    CapacityEstimate,
    capacity_exact_small,
    capacity_search,
    perron_factor,
    perron_term,
)
from .probability import (
    FrequencyEstimate,
    eta,
    homogeneous_inclusion_prob,
    mc_event_a,
    mc_inclusion,
    mc_p,
    p_analytic,
    schedule,
)
from .streams import ConstantStream, RandomStream, unit_stream
from .witnesses import (
    HomogeneousSpec,
    Perturbation,
    WitnessReport,
    dyadic_subinterval,
    en_indices,
    homogeneous_set,
    perturbed_homogeneous,
    t1_witness_search,
    t2_witness_search,
)

__version__ = "0.1.0"
