# contains common functions used accross project

import math
import pathlib
import re

TWO_PI = 2.0 * math.pi

_DEGREE_SUFFIX = re.compile(r"^\s*([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(deg|°|d)\s*$")
_PI_FORM = re.compile(r"^\s*([-+]?[0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$")


def normalize_angle(value: float) -> float:
    """Reduce a finite angle into [0, 2π)."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {value!r}")
    reduced = math.fmod(value, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    # fmod of a tiny negative number can land exactly on 2π after the shift
    return 0.0 if reduced >= TWO_PI else reduced


def parse_angle(text: str) -> float:
    """
    Parse an angle given on the command line.

    Plain numbers are radians. A degree suffix ("30deg", "30°", "30d") is
    converted exactly as deg·π/180, and "pi" forms such as "2pi/3" are
    accepted for convenience.
    Returns: the angle in radians, normalized to [0, 2π)
    Raises:
        ValueError: if the text is not an angle
    """
    match = _DEGREE_SUFFIX.match(text)
    if match:
        return normalize_angle(float(match.group(1)) * math.pi / 180.0)
    match = _PI_FORM.match(text)
    if match:
        coefficient = match.group(1)
        if coefficient in ("", "+"):
            factor = 1.0
        elif coefficient == "-":
            factor = -1.0
        else:
            factor = float(coefficient)
        divisor = float(match.group(2)) if match.group(2) else 1.0
        if divisor == 0.0:
            raise ValueError(f"zero divisor in angle {text!r}")
        return normalize_angle(factor * math.pi / divisor)
    return normalize_angle(float(text))


def format_angle(value: float) -> str:
    """Radians and degrees side by side, for human-readable output."""
    return f"{value:.6f} rad ({math.degrees(value):.4f}°)"


def validate_output_path(file_path):
    """
    Resolve an output path and make sure its parent directory exists.
    Returns: the resolved pathlib.Path
    """
    path = pathlib.Path(file_path).resolve()
    path.parent.mkdir(parents=True, exist_ok=True)
    return path
