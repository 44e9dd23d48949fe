from .sampling import (SampleDistribution,
                       TruncationPolicy,
                       draw_matrix,
                       truncate_center_scale)

from .fisher import (SigmaPair,
                     build_sigma,
                     fisher_eigs,
                     generalized_eigvals)

from .model import (SigmaCase,
                    ModelConfig)

from .montecarlo import (EigenSample,
                         GroupSummary,
                         McReport,
                         run_mc,
                         summarize)
