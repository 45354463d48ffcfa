"""CSV input, and CSV / PPM / SVG output of families and SiZer maps."""

from __future__ import annotations

import csv
import math
import os
from pathlib import Path

import numpy as np

from .binning import Grid
from .inference import Pixel, SizerMap
from .scale_space import BandwidthGrid, ScaleSpaceFamily
from .survival import SurvivalSample

__all__ = [
    "COLORS",
    "read_csv",
    "read_matrix_csv",
    "read_ppm",
    "write_csv_sample",
    "write_outputs",
    "write_ppm",
    "write_svg",
]

COLORS = {
    Pixel.SPARSE: (128, 128, 128),
    Pixel.FLAT: (160, 32, 240),
    Pixel.INCREASE: (0, 0, 255),
    Pixel.DECREASE: (255, 0, 0),
}

FORMATS = ("csv", "ppm", "svg")


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_csv(path) -> SurvivalSample:
    """Read ``time,event`` rows. A non-numeric first field on line 1 marks a header.

    A single-column file is read as uncensored times.
    """
    times, events = [], []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            fields = [f.strip() for f in row]
            if not fields or all(f == "" for f in fields):
                continue
            if lineno == 1 and not _is_number(fields[0]):
                continue
            if len(fields) > 2:
                raise ValueError(f"{path}:{lineno}: expected 'time,event', got {len(fields)} fields")
            try:
                t = float(fields[0])
                e = float(fields[1]) if len(fields) == 2 else 1.0
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric field in {row!r}") from None
            if not math.isfinite(t) or t <= 0:
                raise ValueError(f"{path}:{lineno}: time must be positive and finite, got {fields[0]}")
            if e not in (0.0, 1.0):
                raise ValueError(f"{path}:{lineno}: event must be 0 or 1, got {fields[1]}")
            times.append(t)
            events.append(int(e))
    if not times:
        raise ValueError(f"{path}: no data rows")
    if not any(events):
        raise ValueError(f"{path}: every observation is censored")
    return SurvivalSample(np.array(times), np.array(events, dtype=np.int8))


def _fmt(v) -> str:
    # repr gives the shortest string that round-trips
    return repr(float(v))


def write_csv_sample(sample: SurvivalSample, fh) -> None:
    fh.write("time,event\n")
    for t, e in zip(sample.times, sample.events):
        fh.write(f"{_fmt(t)},{int(e)}\n")


def _write_matrix(path: Path, xs, hs, mat, fmt=_fmt):
    with open(path, "w", newline="") as fh:
        fh.write("h," + ",".join(_fmt(x) for x in xs) + "\n")
        for h, row in zip(hs, mat):
            fh.write(_fmt(h) + "," + ",".join(fmt(v) for v in row) + "\n")


def read_matrix_csv(path):
    """Inverse of the matrix writers: returns ``(x, h, matrix)``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    xs = np.array([float(v) for v in rows[0][1:]])
    hs = np.array([float(r[0]) for r in rows[1:]])
    mat = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return xs, hs, mat


def _rgb(pixels: np.ndarray) -> np.ndarray:
    # largest bandwidth on top
    table = np.array([COLORS[p] for p in Pixel], dtype=np.uint8)
    return table[np.asarray(pixels, dtype=np.intp)[::-1]]


def write_ppm(path, pixels) -> None:
    """Binary P6 image: one pixel per cell, width ``g``, largest bandwidth first."""
    rgb = _rgb(pixels)
    height, width = rgb.shape[:2]
    with open(path, "wb") as fh:
        fh.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        fh.write(rgb.tobytes())


def read_ppm(path) -> np.ndarray:
    """Decode a P6 file written by :func:`write_ppm` back to pixel codes."""
    data = Path(path).read_bytes()
    parts = data.split(maxsplit=4)
    if parts[0] != b"P6":
        raise ValueError(f"{path}: not a binary PPM")
    width, height, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    if maxval != 255:
        raise ValueError(f"{path}: unsupported maxval {maxval}")
    rgb = np.frombuffer(parts[4][: width * height * 3], dtype=np.uint8).reshape(height, width, 3)
    lookup = {c: int(p) for p, c in COLORS.items()}
    codes = np.empty((height, width), dtype=np.int8)
    for i in range(height):
        for j in range(width):
            codes[i, j] = lookup[tuple(int(v) for v in rgb[i, j])]
    return codes[::-1]


def write_svg(path, pixels, cell: int = 2) -> None:
    rgb = _rgb(pixels)
    height, width = rgb.shape[:2]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width * cell}" '
        f'height="{height * cell}" shape-rendering="crispEdges">'
    ]
    for i in range(height):
        for j in range(width):
            r, g, b = rgb[i, j]
            out.append(
                f'<rect x="{j * cell}" y="{i * cell}" width="{cell}" height="{cell}" '
                f'fill="#{r:02x}{g:02x}{b:02x}"/>'
            )
    out.append("</svg>\n")
    Path(path).write_text("\n".join(out))


def write_outputs(
    family: ScaleSpaceFamily,
    sizer: SizerMap,
    grid: Grid,
    bandwidths: BandwidthGrid,
    out_dir,
    formats=("csv",),
) -> list[Path]:
    """Write the requested formats into ``out_dir``; returns the paths written."""
    formats = tuple(formats)
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise ValueError(f"unknown output format(s) {sorted(unknown)}; choose from {FORMATS}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if not os.access(out_dir, os.W_OK):
        raise PermissionError(f"cannot write to {out_dir}")
    xs, hs = grid.points, bandwidths.values
    written = []
    if "csv" in formats:
        for name, mat in (
            ("family", family.estimate),
            ("derivative", family.derivative),
            ("sd", family.sd),
            ("ess", family.ess),
        ):
            path = out_dir / f"{name}.csv"
            _write_matrix(path, xs, hs, mat)
            written.append(path)
        path = out_dir / "sizer.csv"
        _write_matrix(path, xs, hs, sizer.pixels, fmt=lambda v: str(int(v)))
        written.append(path)
    if "ppm" in formats:
        path = out_dir / "sizer.ppm"
        write_ppm(path, sizer.pixels)
        written.append(path)
    if "svg" in formats:
        path = out_dir / "sizer.svg"
        write_svg(path, sizer.pixels)
        written.append(path)
    return written
