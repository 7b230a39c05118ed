""" Binary PPM (P6) encoding.

Layout: ASCII header "P6\n<width> <height>\n255\n", then width * height RGB byte triples,
row by row from the top-left corner.
"""
import numpy as np


def encode_ppm(buffer):
    """Encode an image as binary PPM.

    :param buffer: Image with width, height and uint8 pixels of shape (height, width, 3).
    :type buffer: render.ImageBuffer
    :return: File content.
    :rtype: bytes
    """
    pixels = np.ascontiguousarray(buffer.pixels, dtype=np.uint8)
    if pixels.shape != (buffer.height, buffer.width, 3):
        raise ValueError("pixel array of shape {} doesn't match a {}x{} RGB image".format(
            pixels.shape, buffer.width, buffer.height))
    header = "P6\n{} {}\n255\n".format(buffer.width, buffer.height).encode('ascii')
    return header + pixels.tobytes()


def write_ppm(buffer, filepath):
    """Write an image to a binary PPM file.

    :param buffer: Image to write.
    :type buffer: render.ImageBuffer
    :param filepath: Destination file path.
    :type filepath: str
    :raises OSError: If the file can't be written. The message contains the path.
    """
    data = encode_ppm(buffer)
    try:
        with open(filepath, 'wb') as file_handle:
            file_handle.write(data)
    except OSError as e:
        raise OSError(e.errno, "Could not write image file: {}".format(e.strerror), filepath)
