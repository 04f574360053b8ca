"""Command-line front end: distance maps, lighting changes, detection, link checks.

Exit codes: 0 success, 1 empty result (no detection), 2 input or domain
error, 3 numerical verification failure.  Results go to stdout,
diagnostics to stderr.  Every command is deterministic given its flags;
random instances come from numpy's seeded PCG64 generator with grey
values uniform in [10, 240].
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import asplund, probing, raster_io
from .errors import DomainError, LipError, VerificationError
from .lip import lip_add, lip_mult
from .morphology import full_overlap_mask
from .rasters import GreyImage, clamp_strict, require_regime

LINK_TOL = asplund.LINK_TOL


def _load_image(args):
    image = raster_io.read_image(args.image)
    if args.clamp is not None:
        image = clamp_strict(image, args.clamp)
    return image


def _max_dev(a, b, scale):
    """Max deviation between two value arrays, relative to ``scale`` (array or float).

    Matching infinities count as zero deviation; a lone infinity shows up
    as an infinite deviation.
    """
    both_inf = ~np.isfinite(a) & ~np.isfinite(b) & (np.sign(a) == np.sign(b))
    with np.errstate(invalid="ignore"):
        diff = np.abs(a - b)
    diff = np.where(both_inf, 0.0, diff)
    return float(np.max(diff / scale))


def cmd_map_mult(args) -> int:
    image = _load_image(args)
    probe = raster_io.read_probe(args.probe, strict=args.strict)
    if args.strict:
        require_regime(image.values, image.m, "I*")
    result = asplund.map_mult(image, probe, path=args.path)
    raster_io.write_map(result, args.out, mode="exact")
    return 0


def cmd_map_add(args) -> int:
    image = _load_image(args)
    probe = raster_io.read_probe(args.probe)
    direct = asplund.map_add(image, probe)
    result = direct
    if args.via_mult:
        result = asplund.map_add_via_mult(image, probe)
        dev = _max_dev(result.values, direct.values, image.m)
        print(f"via-mult max deviation from direct path: {dev:.3e} (scale-relative)", file=sys.stderr)
    raster_io.write_map(result, args.out, mode="exact")
    return 0


def cmd_lighting(args) -> int:
    image = _load_image(args)
    if args.add is not None:
        k = args.add
        if not 0 <= k < image.m:
            raise DomainError(f"--add constant must lie in [0, m={image.m}[, got {k}")
        values = lip_add(image.values, k, image.m)
    else:
        a = args.mult
        if not a > 0:
            raise DomainError(f"--mult factor must be positive, got {a}")
        values = lip_mult(a, image.values, image.m)
    raster_io.write_image(image.with_values(values), args.out)
    return 0


def cmd_detect(args) -> int:
    dist_map = raster_io.read_map(args.map)
    if args.probe is not None:
        probe = raster_io.read_probe(args.probe)
        dist_map = type(dist_map)(
            dist_map.values, full_overlap_mask(dist_map.shape, probe), dist_map.m
        )
    hits = probing.detect_minima(dist_map, args.threshold)
    for d in hits:
        print(f"{d.col} {d.row} {format(d.value, '.17g')}")
    return 0 if hits else 1


def _centre_window_pair(image, probe):
    """1xN image/probe pair over the most central full-overlap window."""
    fom = full_overlap_mask(image.shape, probe)
    if not fom.any():
        raise DomainError("no full-overlap cell: image is smaller than the probe")
    rows, cols = np.nonzero(fom)
    i = len(rows) // 2
    dys, dxs, _ = probe.offsets()
    window = image.values[rows[i] + dys, cols[i] + dxs]
    return (
        GreyImage(window.reshape(1, -1), image.m),
        GreyImage(probe.masked_values().reshape(1, -1), image.m),
    )


def cmd_verify_link(args) -> int:
    if args.image is not None:
        if args.probe is None:
            raise DomainError("verify-link needs --probe together with --image")
        image = _load_image(args)
        probe = raster_io.read_probe(args.probe)
    elif args.random is not None:
        rng = np.random.default_rng(args.seed)
        h, w = args.random[1], args.random[0]
        image = probing.random_image(h, w, rng)
        probe = probing.random_probe(3, 3, rng)
    else:
        raise DomainError("verify-link needs either --image/--probe or --random W H")

    m = image.m
    mult_direct = asplund.map_mult(image, probe)
    mult_via = asplund.map_mult_via_add(image, probe)
    dev_mult = _max_dev(mult_via.values, mult_direct.values, 1.0 + np.abs(mult_direct.values))
    print(f"map-mult via additive:      max scale-relative deviation {dev_mult:.3e}")

    add_direct = asplund.map_add(image, probe)
    add_via = asplund.map_add_via_mult(image, probe)
    dev_add = _max_dev(add_via.values, add_direct.values, m)
    print(f"map-add via multiplicative: max scale-relative deviation {dev_add:.3e}")

    fw, gw = _centre_window_pair(image, probe)
    direct, linked = asplund.dist_metric_link(fw, gw)
    dev_metric = abs(direct - linked) / (1.0 + abs(direct))
    print(f"metric pair: direct {direct:.6f} linked {linked:.6f} deviation {dev_metric:.3e}")

    if max(dev_mult, dev_add, dev_metric) > LINK_TOL:
        print(f"verify-link: FAILED (tolerance {LINK_TOL:g})", file=sys.stderr)
        return 3
    print("verify-link: OK")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lipmaps",
        description=(
            "Asplund distance maps in the logarithmic image processing model: "
            "lighting-invariant template probing, plus the isomorphism link "
            "between the multiplicative and additive metrics."
        ),
        epilog=(
            "Random instances (verify-link --random) draw grey values uniformly "
            "from [10, 240] with numpy's PCG64 generator seeded by --seed."
        ),
    )
    parser.add_argument(
        "--clamp",
        type=float,
        metavar="EPS",
        default=None,
        help="clamp loaded image values into [EPS, m-EPS] before regime checks "
        "(for 8-bit inputs containing 0)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map-mult", help="map of LIP-multiplicative Asplund distances")
    p.add_argument("--image", required=True)
    p.add_argument("--probe", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--path", choices=("ratio", "morpho"), default="morpho",
                   help="bound-ratio closed form or dilation/erosion path (default)")
    p.add_argument("--strict", action="store_true",
                   help="validate the strict regime ]0, m[ at load time")
    p.set_defaults(func=cmd_map_mult)

    p = sub.add_parser("map-add", help="map of LIP-additive Asplund distances")
    p.add_argument("--image", required=True)
    p.add_argument("--probe", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--via-mult", action="store_true",
                   help="route through the multiplicative map (reports deviation on stderr)")
    p.set_defaults(func=cmd_map_add)

    p = sub.add_parser("lighting", help="simulate a lighting change")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--add", type=float, metavar="K",
                   help="LIP-add the constant K (exposure-time change)")
    g.add_argument("--mult", type=float, metavar="A",
                   help="LIP-multiply by A (opacity/thickness change)")
    p.set_defaults(func=cmd_lighting)

    p = sub.add_parser("detect", help="threshold a distance map and list minima")
    p.add_argument("--map", required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--probe", default=None,
                   help="restrict detections to this probe's full-overlap region")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("verify-link", help="check the metric/map link identities")
    p.add_argument("--image", default=None)
    p.add_argument("--probe", default=None)
    p.add_argument("--random", type=int, nargs=2, metavar=("W", "H"), default=None,
                   help="use a seeded random WxH image and 3x3 probe")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_link)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"lipmaps: verification failure: {exc}", file=sys.stderr)
        return 3
    except LipError as exc:
        print(f"lipmaps: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lipmaps: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
