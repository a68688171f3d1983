"""Classical and quantum correlation dynamics of Bell-diagonal qubit pairs."""

__version__ = "0.1.0"

from .channels import (  # noqa: E402
    ChannelKind,
    ChannelSpec,
    TransitionClassParams,
    class_state,
    evolve,
    integrate,
    lindblad_rhs,
    separable_class_state,
)
from .correlations import (  # noqa: E402
    CorrelationReport,
    classical_correlations,
    closest_classical,
    discord,
    dissonance,
    entanglement_re,
    entropy,
    full_report,
    mutual_information,
    mutual_information_split,
    relative_entropy,
    sudden_death_time,
    transition_time,
)
from .errors import CorrdynError, NonPhysical  # noqa: E402
from .states import (  # noqa: E402
    BellLabel,
    BellSpectrum,
    CorrelationVector,
    bell_spectrum,
    make_state,
    sorted_spectrum,
    to_density_matrix,
)
