from .config import RunConfig, ConfigError, parse_config, dump_config
from .ppm import write_ppm
from .commands import main, run_render, run_voxel, run_sweep, run_detail
