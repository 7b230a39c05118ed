""" Julia constants and iteration counts of published figures. """

PRESETS = {
    'high-detail': ((-0.04, 0.95, 0.4, -0.43, 0.09, -0.35, -0.27, -0.31), 15),
    'high-detail-2': ((-0.39054, -0.58679, 0.0, 0.0, 0.0, 0.5632, 0.0, 0.05), 15),
    # Random parameter experiments. The caption prints the first dual scalar as "-023".
    'experimental-1': ((-0.10, 0.8, -0.26, 0.15, -0.23, -0.38, -0.86, 0.64), 10),
    'experimental-2': ((-0.67, -0.54, -0.07, 0.02, 0.06, -0.53, 0.15, -0.27), 10),
    'experimental-3': ((-0.98, 0.27, 0.40, 0.20, -0.37, -0.41, -0.24, -0.34), 10),
    'experimental-4': ((0.35, 0.78, 0.85, -0.57, -0.22, 0.06, -0.46, 0.05), 10),
    'experimental-5': ((-0.17, -0.28, 0.11, 0.8, 0.06, 0.44, -0.66, 0.06), 10),
    'experimental-6': ((-0.04, 0.95, 0.4, -0.43, 0.09, -0.45, -0.27, -0.31), 10),
}

DEFAULT_PRESET = 'high-detail'


def get_preset(name):
    """Julia constant and iteration count of a named preset.

    :return: (c as 8 floats, max iterations)
    :rtype: tuple
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError("unknown preset '{}'. Choose one of: {}".format(name, ', '.join(sorted(PRESETS))))
