from .config import SPIKEDFISHER_CFG as configuration

from .config import (get_config_setting,
                     update_config,
                     load_model_config)

from .lsd import SpectralModel, stieltjes
from .phase import SpikeSpec, classify
from .clt import theory_table
from .version import __version__
