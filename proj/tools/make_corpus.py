#!/usr/bin/env python3
"""Regenerates tests/data from scikit-image's bundled sample images.

The PGM/PBM files are checked in; this script only documents how they were made.
"""
import pathlib

import numpy as np
import skimage.color
import skimage.data
from skimage.transform import resize

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def gray(name):
    img = getattr(skimage.data, name)()
    if img.ndim == 3:
        img = (skimage.color.rgb2gray(img) * 255.0).round()
    return np.asarray(img, dtype=np.float64)


def fit(img, rows, cols):
    out = resize(img, (rows, cols), order=1, anti_aliasing=True, preserve_range=True)
    return np.clip(out.round(), 0, 255).astype(np.uint8)


def crop(img, rows, cols):
    r0 = (img.shape[0] - rows) // 2
    c0 = (img.shape[1] - cols) // 2
    return np.clip(img[r0:r0 + rows, c0:c0 + cols].round(), 0, 255).astype(np.uint8)


def save_pgm(path, img):
    rows, cols = img.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (cols, rows) + img.tobytes())


def save_pbm(path, bits):
    rows, cols = bits.shape
    packed = np.packbits(bits.astype(np.uint8), axis=1)
    path.write_bytes(b"P4\n%d %d\n" % (cols, rows) + packed.tobytes())


def logo(size=51):
    yy, xx = np.mgrid[0:size, 0:size]
    c = (size - 1) / 2.0
    r = np.hypot(yy - c, xx - c)
    ring = (r > size * 0.30) & (r < size * 0.45)
    bar = (np.abs(xx - c) < size * 0.08) & (np.abs(yy - c) < size * 0.30)
    cross = (np.abs(yy - c) < size * 0.08) & (np.abs(xx - c) < size * 0.22)
    return (ring | bar | cross).astype(np.uint8)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    # 256x256 natural images
    save_pgm(OUT / "moon_256.pgm", fit(gray("moon"), 256, 256))
    save_pgm(OUT / "brick_256.pgm", crop(gray("brick"), 256, 256))
    save_pgm(OUT / "rocket_256.pgm", crop(gray("rocket"), 256, 256))
    save_pgm(OUT / "clock_256.pgm", fit(gray("clock"), 256, 256))
    save_pgm(OUT / "coins_256.pgm", fit(gray("coins"), 256, 256))
    # Hundreds of near-black pixels: book-keeping outgrows layer-2 capacity.
    save_pgm(OUT / "camera_256.pgm", fit(gray("camera"), 256, 256))
    # odd and non-square sizes
    save_pgm(OUT / "coins_136x137.pgm", fit(gray("coins"), 136, 137))
    save_pgm(OUT / "chelsea_116.pgm", fit(gray("chelsea"), 116, 116))
    save_pgm(OUT / "clock_131x90.pgm", fit(gray("clock"), 90, 131))
    save_pgm(OUT / "coffee_135x101.pgm", fit(gray("coffee"), 101, 135))
    save_pbm(OUT / "logo_51.pbm", logo())


if __name__ == "__main__":
    main()
