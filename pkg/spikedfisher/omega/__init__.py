from .probe import (SvdParts,
                    OmegaSample,
                    OmegaProbe,
                    svd_parts,
                    compute_omega,
                    probe_omega,
                    spike_point)

from .universality import (UniversalityReport,
                           universality_test,
                           check_geometry)
