""" Run configuration from command-line flags, config documents and built-in defaults.

Flags override config document values, which override the defaults.

A config document holds one "key = value" per line. Keys are the long flag names without
the leading dashes, "#" starts a comment. Vectors are written as comma-separated numbers,
e.g.

    # High-Detail figure
    c = -0.04,0.95,0.4,-0.43,0.09,-0.35,-0.27,-0.31
    iterations = 15
    slice = 0,0,0,0,0,rs-rx-ry

dump_config writes every resolved value in this format, so reading a dumped document back
gives the identical RunConfig.
"""
import argparse
import math
from collections import namedtuple

from .. import get_pkg_version
from ..algebra import SquaringMode
from ..julia import DEFAULT_SLICE_MAP, DistanceEstimator, make_iteration_params, make_scene, make_slice, \
    parse_slice_map, slice_map_name
from ..parallel import WORKERS_ENV_VAR, default_worker_count
from ..render import make_camera, make_light, make_march_params, make_material
from ..voxel import make_grid_config
from .presets import PRESETS, get_preset
from .sweep import SEED_LIMIT

MODES = ('render', 'voxel', 'sweep', 'detail')

DEFAULT_OUTPUTS = {'render': 'dqjulia.ppm',
                   'voxel': 'dqjulia.obj',
                   'sweep': 'sweep',
                   'detail': 'detail',
                   }


# Published name of the componentwise squaring rule.
SQUARING_ALIASES = {'paper': SquaringMode.COMPONENTWISE.value}


class ConfigError(ValueError):
    """Invalid configuration value, with the offending key or field in the message."""


# Value converters. They raise ArgumentTypeError so argparse names the flag on failure.
def _real(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("malformed number '{}'".format(text))
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("number must be finite, got '{}'".format(text))
    return value


def _integer(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("malformed integer '{}'".format(text))


def _reals(count):
    def parse(text):
        parts = text.split(',')
        if len(parts) != count:
            raise argparse.ArgumentTypeError("expected {} comma-separated numbers, got '{}'".format(count, text))
        return tuple(_real(part.strip()) for part in parts)
    return parse


def _integers(count):
    def parse(text):
        parts = text.split(',')
        if len(parts) != count:
            raise argparse.ArgumentTypeError("expected {} comma-separated integers, got '{}'".format(count, text))
        return tuple(_integer(part.strip()) for part in parts)
    return parse


def _slice(text):
    """Five constants, optionally followed by a slice map name like rs-rx-ry."""
    parts = [part.strip() for part in text.split(',')]
    if len(parts) == 6:
        try:
            mapping = slice_map_name(parse_slice_map(parts.pop()))
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))
    elif len(parts) == 5:
        mapping = DEFAULT_SLICE_MAP
    else:
        raise argparse.ArgumentTypeError("expected 5 comma-separated numbers and an optional slice map, "
                                         "got '{}'".format(text))
    return tuple(_real(part) for part in parts), mapping


def _choice(choices, aliases=None):
    """Parser for one of choices. aliases maps extra names to a choice."""
    aliases = aliases or dict()

    def parse(text):
        value = text.strip().lower()
        value = aliases.get(value, value)
        if value not in choices:
            raise argparse.ArgumentTypeError("invalid choice '{}' (choose from {})".format(
                text, ', '.join(sorted(set(choices) | set(aliases)))))
        return value
    return parse


def _gamma(text):
    if text.strip().lower() in ('none', 'off'):
        return None
    return _real(text)


def _text(text):
    return text.strip()


def _boolean(text):
    value = text.strip().lower()
    if value in ('true', 'yes', 'on', '1'):
        return True
    if value in ('false', 'no', 'off', '0'):
        return False
    raise argparse.ArgumentTypeError("expected true or false, got '{}'".format(text))


def _format_reals(values):
    return ','.join(repr(float(v)) for v in values)


def _format_slice(value):
    constants, mapping = value
    return _format_reals(constants) + ',' + mapping


Option = namedtuple('Option', ['field', 'flag', 'parse', 'format', 'default', 'help'])

OPTIONS = (
    Option('mode', '--mode', _choice(MODES), str, 'render',
           "render: one image, voxel: occupancy mesh, sweep: images for random constants,\n"
           "detail: one image per iteration count in --detail-range."),
    Option('c', '--c', _reals(8), _format_reals, PRESETS['high-detail'][0],
           "Julia constant as 8 comma-separated reals: real part s,x,y,z then dual part s,x,y,z."),
    Option('slice', '--slice', _slice, _format_slice, ((0.0, 0.0, 0.0, 0.0, 0.0), DEFAULT_SLICE_MAP),
           "5 constants for the fixed slots and an optional slice map naming the 3 slots\n"
           "that follow x, y, z, out of rs rx ry rz ds dx dy dz. Default: 0,0,0,0,0,rs-rx-ry"),
    Option('iterations', '--iterations', _integer, str, 10, "Maximum number of iterations."),
    Option('escape_radius', '--escape-radius', _real, repr, 4.0, "Orbits escape beyond this magnitude."),
    Option('squaring_mode', '--squaring-mode', _choice(tuple(m.value for m in SquaringMode), SQUARING_ALIASES), str,
           SquaringMode.COMPONENTWISE.value,
           "paper or componentwise: square real and dual part independently, clifford: full dual-quaternion product."),
    Option('de', '--de', _choice(tuple(e.value for e in DistanceEstimator)), str, DistanceEstimator.HART_LOG.value,
           "Distance estimator. hart: 0.5 |z| ln|z| / |z'|, alpha: alpha |z| / |z'|."),
    Option('alpha', '--alpha', _real, repr, 0.1, "Scale of the alpha distance estimator, in (0, 0.1]."),
    Option('width', '--width', _integer, str, 512, "Image width in pixels."),
    Option('height', '--height', _integer, str, 512, "Image height in pixels."),
    Option('camera_pos', '--camera-pos', _reals(3), _format_reals, (0.0, 0.0, -4.0), "Camera position x,y,z."),
    Option('look_at', '--look-at', _reals(3), _format_reals, (0.0, 0.0, 0.0), "Point the camera looks at."),
    Option('up', '--up', _reals(3), _format_reals, (0.0, 1.0, 0.0), "Camera up vector."),
    Option('fov', '--fov', _real, repr, 45.0, "Vertical field of view in degrees."),
    Option('epsilon', '--epsilon', _real, repr, 1e-4, "Ray hits when the distance estimate drops below this."),
    Option('max_steps', '--max-steps', _integer, str, 256, "Maximum ray marching steps per ray."),
    Option('bounding_radius', '--bounding-radius', _real, repr, 3.0, "Radius of the bounding sphere."),
    Option('max_distance', '--max-distance', _real, repr, 100.0, "Maximum distance a ray travels."),
    Option('no_culling', '--no-culling', _boolean, lambda v: 'true' if v else 'false', False,
           "Don't clip rays against the bounding sphere."),
    Option('ambient', '--ka', _real, repr, 0.1, "Ambient reflection coefficient."),
    Option('diffuse', '--kd', _real, repr, 0.7, "Diffuse reflection coefficient."),
    Option('specular', '--ks', _real, repr, 0.2, "Specular reflection coefficient."),
    Option('shininess', '--shininess', _real, repr, 10.0, "Specular exponent."),
    Option('color', '--color', _reals(3), _format_reals, (1.0, 1.0, 1.0), "Surface color r,g,b in [0, 1]."),
    Option('light_dir', '--light-dir', _reals(3), _format_reals, (-1.0, 1.0, -1.0),
           "Direction towards the light."),
    Option('light_ambient', '--ia', _real, repr, 1.0, "Ambient light intensity."),
    Option('light_diffuse', '--id', _real, repr, 1.0, "Diffuse light intensity."),
    Option('light_specular', '--is', _real, repr, 1.0, "Specular light intensity."),
    Option('background', '--background', _integers(3), lambda v: ','.join(str(i) for i in v), (0, 0, 0),
           "Background color as 8 bit r,g,b."),
    Option('gamma', '--gamma', _gamma, lambda v: 'none' if v is None else repr(v), 2.2,
           "Gamma for 8 bit quantization, 'none' for linear output."),
    Option('normal_offset', '--normal-offset', _real, repr, 1e-3, "Sample offset for surface normals."),
    Option('resolution', '--resolution', _integer, str, 50, "Voxel cells per axis."),
    Option('bounds', '--bounds', _reals(6), _format_reals, (-1.5, -1.5, -1.5, 1.5, 1.5, 1.5),
           "Voxel box as min x,y,z then max x,y,z."),
    Option('seed', '--seed', _integer, str, 0, "64-bit unsigned seed for sweep constants."),
    Option('count', '--count', _integer, str, 6, "Number of images in sweep mode."),
    Option('detail_range', '--detail-range', _integers(2), lambda v: ','.join(str(i) for i in v), (6, 15),
           "Lowest and highest iteration count in detail mode."),
    Option('workers', '--workers', _integer, str, None,
           "Number of worker processes. Default: ${} or the number of CPUs.".format(WORKERS_ENV_VAR)),
    Option('output', '--output', _text, str, None,
           "Output file (render, voxel) or folder (sweep, detail).\n"
           "Default: " + ', '.join('{} for {}'.format(path, mode) for mode, path in DEFAULT_OUTPUTS.items())),
    Option('quiet', '--quiet', _boolean, lambda v: 'true' if v else 'false', False, "Only print errors."),
)

OPTIONS_BY_KEY = {option.flag[2:]: option for option in OPTIONS}

RunConfig = namedtuple('RunConfig', [option.field for option in OPTIONS])
RunConfig.__doc__ = """Fully resolved settings of one run."""


def _attach_values(argv):
    """Join value flags with their value, '--c', '-0.1,...' -> '--c=-0.1,...'.

    argparse would take a leading minus of a comma-separated vector for an option.
    """
    value_flags = {option.flag for option in OPTIONS if option.parse is not _boolean}
    value_flags.update({'--config', '--preset'})
    argv = list(argv)
    joined = []
    i = 0
    while i < len(argv):
        if argv[i] in value_flags and i + 1 < len(argv):
            joined.append('{}={}'.format(argv[i], argv[i + 1]))
            i += 2
        else:
            joined.append(argv[i])
            i += 1
    return joined


def build_parser():
    parser = argparse.ArgumentParser(
        prog='dqjulia',
        description="""Render 3D slices of dual-quaternion Julia sets.""",
        epilog="""Settings are read from the defaults, then the --config file, then the command line.
Use --dump-config to print the resolved settings as a config file.""",
        formatter_class=argparse.RawTextHelpFormatter)
    parser.add_argument("-v", "--ver", action='version', version='%(prog)s v{}'.format(get_pkg_version()))
    parser.add_argument("--config", type=str, default=None, help="Config file with 'key = value' lines.")
    parser.add_argument("--preset", choices=sorted(PRESETS), default=None,
                        help="Julia constant and iteration count of a published figure.")
    parser.add_argument("--dump-config", action='store_true', help="Print the resolved configuration and exit.")
    for option in OPTIONS:
        if option.parse is _boolean:
            parser.add_argument(option.flag, dest=option.field, action='store_true', default=argparse.SUPPRESS,
                                help=option.help)
        else:
            parser.add_argument(option.flag, dest=option.field, type=option.parse, default=argparse.SUPPRESS,
                                help=option.help)
    return parser


def parse_config_document(text, source='config'):
    """Read values from a config document.

    :param text: Document content.
    :type text: str
    :param source: Name used in error messages, usually the file path.
    :type source: str
    :return: Values by RunConfig field, preset name or None.
    :rtype: tuple
    :raises ConfigError: On malformed lines, unknown keys or invalid values.
    """
    values = dict()
    preset = None
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, separator, value = line.partition('=')
        if not separator:
            raise ConfigError("{} line {}: expected 'key = value', got '{}'".format(source, number, line))
        key = key.strip().lower().replace('_', '-')
        value = value.strip()
        if key == 'preset':
            preset = value
            continue
        option = OPTIONS_BY_KEY.get(key)
        if option is None:
            raise ConfigError("{} line {}: unknown key '{}'".format(source, number, key))
        try:
            values[option.field] = option.parse(value)
        except (argparse.ArgumentTypeError, ValueError) as e:
            raise ConfigError("{} line {}: {}: {}".format(source, number, key, e))
    return values, preset


def read_config_file(filepath):
    try:
        with open(filepath) as file_handle:
            return file_handle.read()
    except OSError as e:
        raise ConfigError("Could not open config file {}: {}".format(filepath, e.strerror))


def dump_config(cfg):
    """Config document with every value of cfg.

    :type cfg: RunConfig
    :rtype: str
    """
    lines = ["# dqjulia configuration"]
    lines.extend("{} = {}".format(option.flag[2:], option.format(getattr(cfg, option.field))) for option in OPTIONS)
    return '\n'.join(lines) + '\n'


def split_bounds(bounds):
    """Flat (min x, y, z, max x, y, z) as a pair of corners."""
    return tuple(bounds[:3]), tuple(bounds[3:])


def build_scene(cfg):
    """Fractal parameters of a run.

    :type cfg: RunConfig
    :rtype: julia.SceneParams
    """
    constants, mapping = cfg.slice
    return make_scene(c=cfg.c,
                      slice_config=make_slice(constants, mapping),
                      iteration=make_iteration_params(cfg.iterations, cfg.escape_radius,
                                                      SquaringMode(cfg.squaring_mode)),
                      estimator=DistanceEstimator(cfg.de),
                      alpha=cfg.alpha)


def build_camera(cfg):
    return make_camera(cfg.camera_pos, cfg.look_at, cfg.up, cfg.fov, cfg.width, cfg.height)


def build_march(cfg):
    return make_march_params(cfg.epsilon, cfg.max_steps, cfg.bounding_radius, cfg.max_distance,
                             use_bounding_sphere=not cfg.no_culling)


def build_material(cfg):
    return make_material(cfg.ambient, cfg.diffuse, cfg.specular, cfg.shininess, cfg.color)


def build_light(cfg):
    return make_light(cfg.light_ambient, cfg.light_diffuse, cfg.light_specular, cfg.light_dir)


def validate_config(cfg):
    """Check every value of cfg.

    :raises ConfigError: Naming the first invalid field.
    """
    try:
        build_scene(cfg)
        build_camera(cfg)
        build_march(cfg)
        build_material(cfg)
        build_light(cfg)
        make_grid_config(cfg.resolution, split_bounds(cfg.bounds))
        if not cfg.output:
            raise ValueError("output path must not be empty")
        if cfg.count < 1:
            raise ValueError("count must be at least 1, got {}".format(cfg.count))
        if not 0 <= cfg.seed < SEED_LIMIT:
            raise ValueError("seed must be a 64-bit unsigned integer, got {}".format(cfg.seed))
        if cfg.workers < 1:
            raise ValueError("workers must be a positive integer, got {}".format(cfg.workers))
        if not all(0 <= channel <= 255 for channel in cfg.background):
            raise ValueError("background channels must lie in 0..255, got {}".format(cfg.background))
        if cfg.gamma is not None and not cfg.gamma > 0.0:
            raise ValueError("gamma must be positive, got {}".format(cfg.gamma))
        if not cfg.normal_offset > 0.0:
            raise ValueError("normal_offset must be positive, got {}".format(cfg.normal_offset))
        low, high = cfg.detail_range
        if not 1 <= low <= high:
            raise ValueError("detail_range needs 1 <= min <= max, got {},{}".format(low, high))
    except ValueError as e:
        raise ConfigError(str(e))


def _apply_preset(values, preset):
    if not preset:
        return
    try:
        c, iterations = get_preset(preset)
    except ValueError as e:
        raise ConfigError(str(e))
    values.update(c=c, iterations=iterations)


def parse_command_line(argv, document=None):
    """Resolve the run configuration.

    :param argv: Command-line arguments without the program name.
    :type argv: list
    :param document: Config document content. If None, the file given by --config is read, if any.
    :type document: str
    :return: Resolved configuration and whether --dump-config was given.
    :rtype: tuple
    :raises ConfigError: On invalid config documents or values.
    :raises SystemExit: On command-line usage errors (exit status 2).
    """
    args = build_parser().parse_args(_attach_values(argv))
    source = 'config'
    if document is None and args.config:
        document = read_config_file(args.config)
        source = args.config
    document_values, document_preset = parse_config_document(document, source) if document else (dict(), None)

    # Each layer overrides the one before: defaults, document preset, document values,
    # command-line preset, command-line flags.
    values = {option.field: option.default for option in OPTIONS}
    _apply_preset(values, document_preset)
    values.update(document_values)
    _apply_preset(values, args.preset)
    values.update({option.field: getattr(args, option.field) for option in OPTIONS if hasattr(args, option.field)})

    if values['workers'] is None:
        try:
            values['workers'] = default_worker_count()
        except ValueError as e:
            raise ConfigError(str(e))
    if values['output'] is None:
        values['output'] = DEFAULT_OUTPUTS[values['mode']]
    cfg = RunConfig(**values)
    validate_config(cfg)
    return cfg, args.dump_config


def parse_config(argv=(), document=None):
    """Resolve the run configuration from flags and an optional config document.

    :rtype: RunConfig
    """
    cfg, _ = parse_command_line(argv, document)
    return cfg
