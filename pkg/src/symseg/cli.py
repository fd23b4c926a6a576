"""Command-line interface.

Subcommands:
  segment            full pipeline: JSON report + PPM overlay (+ PBM mask)
  edges              run one edge operator, print its edge count
  axis               fit and print the symmetry axis
  phantom            generate synthetic phantoms with ground truth
  compare-operators  per-image Roberts/Prewitt/Canny counts as CSV
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .edges import CannyParams, DEFAULT_EDGE_THRESHOLD, canny, count_edges, gradient, threshold_edges
from .errors import SymsegError
from .image import GrayImage, RgbImage, rgb_to_gray
from .phantom import PhantomSpec, TumorSpec, generate_phantom, phantom_suite
from .pipeline import PipelineConfig, emit_report, run_pipeline_detailed
from .pnm import decode_pnm, encode_pbm, encode_pnm


def _parse_spacing(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'sx,sy', got {text!r}")
    return float(parts[0]), float(parts[1])


def _add_pipeline_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mt", type=int, default=32, help="row-symmetry deviation bound (1..255)")
    p.add_argument("--quant-levels", type=int, default=8, help="quantization levels (must divide 256)")
    p.add_argument("--sigma", type=float, default=1.4, help="Canny Gaussian sigma in pixels")
    p.add_argument("--canny-low", type=float, default=0.1, help="low hysteresis fraction of max magnitude")
    p.add_argument("--canny-high", type=float, default=0.3, help="high hysteresis fraction of max magnitude")
    p.add_argument("--axis-degree", type=int, choices=(1, 2), default=1, help="symmetry-axis polynomial degree")
    p.add_argument("--tol", type=int, default=2, help="reflection match tolerance in pixels")
    p.add_argument("--min-area", type=int, default=30, help="minimum region area in pixels")
    p.add_argument("--spacing", type=_parse_spacing, default=(1.0, 1.0), metavar="SX,SY",
                   help="pixel spacing in mm (default 1,1)")
    p.add_argument("--raw-edges", action="store_true",
                   help="run edge analysis on the raw image instead of the homogenized one")


def _config_from_args(args) -> PipelineConfig:
    return PipelineConfig(
        sigma=args.sigma,
        low=args.canny_low,
        high=args.canny_high,
        mt=args.mt,
        quant_levels=args.quant_levels,
        axis_degree=args.axis_degree,
        tol=args.tol,
        min_area=args.min_area,
        spacing=args.spacing,
        raw_edges=args.raw_edges,
    )


def _load_image(path: str) -> GrayImage | RgbImage:
    return decode_pnm(Path(path).read_bytes())


def _cmd_segment(args) -> int:
    import numpy as np

    image = _load_image(args.image)
    config = _config_from_args(args)
    doc, overlay, result = run_pipeline_detailed(image, config, input_name=Path(args.image).name)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.image).stem
    report_path = out_dir / f"{stem}.report.json"
    overlay_path = out_dir / f"{stem}.overlay.ppm"
    report_path.write_bytes(emit_report(doc))
    overlay_path.write_bytes(encode_pnm(overlay))
    written = [report_path, overlay_path]
    if args.emit_mask:
        if result.region is not None:
            mask = result.region.mask(overlay.width, overlay.height)
        else:
            mask = np.zeros((overlay.height, overlay.width), bool)
        mask_path = out_dir / f"{stem}.region.pbm"
        mask_path.write_bytes(encode_pbm(mask))
        written.append(mask_path)
    print(f"detected={str(doc.detected).lower()} area_px={doc.area_px}")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_edges(args) -> int:
    image = _load_image(args.image)
    gray = rgb_to_gray(image) if isinstance(image, RgbImage) else image
    if args.operator == "canny":
        edge_map = canny(gray, CannyParams(args.sigma, args.canny_low, args.canny_high))
    else:
        edge_map = threshold_edges(gradient(gray, args.operator), args.threshold)
    print(f"{args.operator} {count_edges(edge_map)}")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{Path(args.image).stem}.{args.operator}.pbm"
        path.write_bytes(encode_pbm(edge_map.mask))
        print(f"wrote {path}")
    return 0


def _cmd_axis(args) -> int:
    from .axis import extract_midpoints, fit_axis
    from .rowsym import SymmetryParams, process_image

    image = _load_image(args.image)
    gray = rgb_to_gray(image) if isinstance(image, RgbImage) else image
    config = _config_from_args(args)
    homogenized = process_image(gray, SymmetryParams(config.mt, config.quant_levels))
    analysis = gray if config.raw_edges else homogenized
    edge_map = canny(analysis, CannyParams(config.sigma, config.low, config.high))
    axis = fit_axis(extract_midpoints(edge_map), config.axis_degree)
    print(json.dumps({
        "degree": axis.degree,
        "a0": axis.a0,
        "a1": axis.a1,
        "a2": axis.a2,
        "sr": axis.sr,
    }))
    return 0


def _tumor_from_json(obj) -> TumorSpec | None:
    if obj is None:
        return None
    return TumorSpec(
        cx=float(obj["cx"]),
        cy=float(obj["cy"]),
        radius=float(obj["radius"]),
        delta=float(obj["delta"]),
        textured=bool(obj.get("textured", False)),
    )


def _spec_from_json(obj) -> PhantomSpec:
    kwargs = {k: obj[k] for k in (
        "width", "height", "axis_a0", "axis_a1", "skull_rx", "skull_ry",
        "background", "brain", "skull", "noise_sigma", "seed",
    ) if k in obj}
    kwargs["tumor"] = _tumor_from_json(obj.get("tumor"))
    return PhantomSpec(**kwargs)


def _write_phantom(spec: PhantomSpec, name: str, out_dir: Path, grade: str | None) -> None:
    image, truth = generate_phantom(spec)
    (out_dir / f"{name}.pgm").write_bytes(encode_pnm(image))
    (out_dir / f"{name}.mask.pbm").write_bytes(encode_pbm(truth.tumor_mask))
    doc = {
        "axis": {"a0": truth.axis_a0, "a1": truth.axis_a1},
        "tumor_area_px": truth.tumor_area_px,
        "grade": grade,
        "spec": _spec_to_json(spec),
    }
    (out_dir / f"{name}.truth.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {out_dir / name}.pgm")


def _spec_to_json(spec: PhantomSpec) -> dict:
    obj = dataclasses.asdict(spec)
    return obj


def _cmd_phantom(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.suite:
        for i, (spec, grade) in enumerate(phantom_suite(), start=1):
            if args.seed is not None:
                spec = dataclasses.replace(spec, seed=args.seed + i)
            _write_phantom(spec, f"phantom_{i:02d}_{grade}", out_dir, grade)
        return 0
    if not args.spec:
        print("error: provide a phantom spec JSON or --suite", file=sys.stderr)
        return 2
    obj = json.loads(Path(args.spec).read_text())
    spec = _spec_from_json(obj)
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    _write_phantom(spec, Path(args.spec).stem, out_dir, None)
    return 0


def _cmd_compare_operators(args) -> int:
    rows = []
    for path in sorted(Path(args.dir).glob("*.pgm")):
        image = _load_image(str(path))
        gray = rgb_to_gray(image) if isinstance(image, RgbImage) else image
        truth_path = path.with_suffix("").with_suffix(".truth.json")
        grade = ""
        if truth_path.exists():
            grade = json.loads(truth_path.read_text()).get("grade") or ""
        counts = {
            "roberts": count_edges(threshold_edges(gradient(gray, "roberts"), args.threshold)),
            "prewitt": count_edges(threshold_edges(gradient(gray, "prewitt"), args.threshold)),
            "canny": count_edges(canny(gray, CannyParams(args.sigma, args.canny_low, args.canny_high))),
        }
        rows.append((path.name, grade, counts))
    lines = ["image,grade,roberts,prewitt,canny"]
    for name, grade, counts in rows:
        lines.append(f"{name},{grade},{counts['roberts']},{counts['prewitt']},{counts['canny']}")
    csv = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(csv)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symseg", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"symseg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="run the full detection pipeline on a PGM/PPM image")
    p.add_argument("image", help="input PGM (P5) or PPM (P6) file")
    _add_pipeline_args(p)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--emit-mask", action="store_true", help="also write the region mask as PBM")
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("edges", help="run one edge operator and print its count")
    p.add_argument("image")
    p.add_argument("--operator", choices=("roberts", "prewitt", "sobel", "canny"), default="canny")
    p.add_argument("--threshold", type=float, default=DEFAULT_EDGE_THRESHOLD,
                   help="binarization fraction for gradient operators")
    p.add_argument("--sigma", type=float, default=1.4)
    p.add_argument("--canny-low", type=float, default=0.1)
    p.add_argument("--canny-high", type=float, default=0.3)
    p.add_argument("--out", default=None, help="directory for the PBM edge map")
    p.set_defaults(func=_cmd_edges)

    p = sub.add_parser("axis", help="fit the symmetry axis and print it as JSON")
    p.add_argument("image")
    _add_pipeline_args(p)
    p.set_defaults(func=_cmd_axis)

    p = sub.add_parser("phantom", help="generate synthetic phantoms with ground truth")
    p.add_argument("spec", nargs="?", default=None, help="phantom spec JSON file")
    p.add_argument("--suite", action="store_true", help="emit the built-in 6-phantom suite")
    p.add_argument("--seed", type=int, default=None, help="override the spec seed")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=_cmd_phantom)

    p = sub.add_parser("compare-operators", help="edge counts per operator for every PGM in a directory")
    p.add_argument("dir")
    p.add_argument("--threshold", type=float, default=DEFAULT_EDGE_THRESHOLD)
    p.add_argument("--sigma", type=float, default=1.4)
    p.add_argument("--canny-low", type=float, default=0.1)
    p.add_argument("--canny-high", type=float, default=0.3)
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.set_defaults(func=_cmd_compare_operators)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SymsegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
