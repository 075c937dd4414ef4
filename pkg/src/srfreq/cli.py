"""Command-line surface.

Exit codes: 0 success, 2 usage or I/O error, 3 data/shape error.
Every command is deterministic given identical inputs and flags.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .datasets import paired_files, synthesize_pair
from .errors import DegenerateInputError, LayoutError, ParameterError, ShapeError
from .hyra import (
    ProbeSpec,
    check_spatial_invariance,
    decompose,
    extract_impulse_response,
    gen_probe,
    sinc_similarity,
)
from .image import ImageF
from .imgio import (
    load_image,
    load_manifest,
    parse_shift_key,
    save_image,
    save_manifest,
    save_png,
    shift_key,
    write_sidecar,
)
from .kernels import Window
from .lpfsr import classical_resize, cutoff_sweep, lpf_upsample_freq, lpf_upsample_spatial
from .metrics import metric_report, psnr, ssim, to_luma
from .spectra import spectrum_view, verify_periodic_extension

DEFAULT_SHIFTS = [(0, 0), (-3, -3), (3, -2)]


def _parse_pos(text: str) -> tuple[int, int]:
    try:
        r, c = (int(v) for v in text.split(","))
    except Exception:
        raise ParameterError(f"expected 'row,col' integers, got {text!r}") from None
    return r, c


def _parse_shifts(text: str) -> list[tuple[int, int]]:
    shifts = []
    for part in text.split(";"):
        part = part.strip()
        if part:
            shifts.append(_parse_pos(part))
    if not shifts:
        raise ParameterError(f"no shifts parsed from {text!r}")
    return shifts


def _probe_filename(shift: tuple[int, int]) -> str:
    return f"probe_{shift[0]}_{shift[1]}.png"


def cmd_probe_gen(args) -> int:
    # probes are stored as 8-bit PNG, so pin the value to its stored level
    effective = round(min(max(args.value, 0.0), 1.0) * 255) / 255
    if abs(effective - args.value) > 1e-12:
        print(f"note: impulse value {args.value} stored as {effective:.9g} (8-bit grid)")
    spec = ProbeSpec(
        size=args.size,
        impulse_pos=_parse_pos(args.pos),
        impulse_value=effective,
        channels=args.channels,
    )
    shifts = _parse_shifts(args.shifts) if args.shifts else list(DEFAULT_SHIFTS)
    if (0, 0) not in shifts:
        shifts.insert(0, (0, 0))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    probe_files = {}
    for shift in shifts:
        shifted = spec.shifted(*shift)
        name = _probe_filename(shift)
        save_png(gen_probe(shifted), out / name)
        probe_files[shift_key(shift)] = name
    lr_files = []
    for lr_path in args.lr or []:
        img = load_image(lr_path)
        name = Path(lr_path).name
        save_image(img, out / name)
        lr_files.append(name)
    manifest = {
        "scale": args.scale,
        "probe": {
            "size": spec.size,
            "pos": list(spec.impulse_pos),
            "value": spec.impulse_value,
            "channels": spec.channels,
        },
        "shifts": [list(s) for s in shifts],
        "files": {"probes": probe_files, "lr": lr_files},
    }
    save_manifest(manifest, out / "manifest.json")
    print(f"wrote {len(probe_files)} probes and manifest to {out}")
    return 0


def _spec_from_manifest(manifest: dict) -> ProbeSpec:
    p = manifest["probe"]
    return ProbeSpec(
        size=p["size"],
        impulse_pos=tuple(p["pos"]),
        impulse_value=p["value"],
        channels=p.get("channels", 3),
    )


def _save_view(channel_img: ImageF, stem: Path, command: str) -> None:
    view = spectrum_view(to_luma(channel_img).channel(0))
    for name, plane in (("amplitude", view.amplitude), ("phase", view.phase)):
        lo, hi = float(plane.min()), float(plane.max())
        norm = (plane - lo) / (hi - lo) if hi > lo else np.zeros_like(plane)
        path = stem.parent / f"{stem.name}_{name}.png"
        save_png(ImageF(norm[np.newaxis]), path)
        write_sidecar(path, command, {}, display_mapping={"min": lo, "max": hi})


def cmd_hyra(args) -> int:
    lr = load_image(args.lr)
    sr = load_image(args.sr)
    probe_out = load_image(args.probe_out)
    if args.manifest:
        manifest = load_manifest(args.manifest)
        spec = _spec_from_manifest(manifest)
        scale = args.scale or manifest["scale"]
    else:
        spec = ProbeSpec(
            size=args.probe_size,
            impulse_pos=_parse_pos(args.probe_pos),
            impulse_value=args.probe_value,
            channels=lr.channels,
        )
        scale = args.scale
    if not scale:
        raise ParameterError("scale missing: pass --scale or a manifest that records it")

    dec = decompose(lr, sr, probe_out, spec, scale, alignment=args.alignment)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    flags = {"lr": str(args.lr), "sr": str(args.sr), "probe_out": str(args.probe_out),
             "scale": scale, "alignment": args.alignment}
    response_mean = ImageF(dec.impulse_response.data.mean(axis=0, keepdims=True))
    for name, img in (("linear", dec.linear), ("nonlinear", dec.nonlinear),
                      ("response", dec.impulse_response), ("response_mean", response_mean)):
        path = out / f"{name}.imgf"
        save_image(img, path)
        write_sidecar(path, "hyra", flags,
                      display_mapping={"min": float(img.data.min()), "max": float(img.data.max())})
    for name, img in (("sr", dec.sr), ("linear", dec.linear), ("nonlinear", dec.nonlinear)):
        _save_view(img, out / name, "hyra")

    margin = dec.impulse_response.height // 2
    interior = dec.nonlinear.data[:, margin:-margin, margin:-margin]
    g_inf = float(np.max(np.abs(interior))) if interior.size else float("nan")
    fit = sinc_similarity(dec.impulse_response)
    report = {
        "scale": scale,
        "alignment": args.alignment,
        "g_inf_interior": g_inf,
        "interior_margin": margin,
        "sinc_similarity": {
            "score": fit.score,
            "fitted_omega": fit.fitted_omega,
            "fitted_window": fit.fitted_window.value,
        },
    }
    (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    print(f"||G||inf interior = {g_inf:.3e}; sinc similarity = {fit.score:.6f} "
          f"(omega {fit.fitted_omega:.4f}, {fit.fitted_window.value})")
    return 0


def cmd_metrics(args) -> int:
    pairs = paired_files(args.hr, args.sr)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for hr_path, sr_path in pairs:
        hr = load_image(hr_path)
        sr = load_image(sr_path)
        if args.channel_policy == "luma":
            hr, sr = to_luma(hr), to_luma(sr)
        report = metric_report(hr, sr)
        (out / f"{hr_path.stem}.json").write_text(report.to_json() + "\n")
        rows.append((hr_path.stem, report))
    fields = ["psnr", "ssim", "fsds", "l1_freq", "l2_freq", "l1_spatial", "l2_spatial"]
    with open(out / "summary.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name"] + fields)
        for name, rep in rows:
            writer.writerow([name] + [f"{getattr(rep, f):.6g}" for f in fields])
        means = [float(np.mean([getattr(rep, f) for _, rep in rows])) for f in fields]
        writer.writerow(["mean"] + [f"{m:.6g}" for m in means])
    for field, mean in zip(fields, means):
        print(f"mean {field}: {mean:.6g}")
    return 0


def _load_pairs(args) -> list[tuple[ImageF, ImageF]]:
    hr_dir = Path(args.hr)
    hr_paths = sorted(p for p in hr_dir.iterdir() if p.suffix.lower() in (".png", ".imgf"))
    if not hr_paths:
        raise ParameterError(f"no images found in {hr_dir}")
    pairs = []
    if args.lr:
        lr_dir = Path(args.lr)
        by_name = [lr_dir / p.name for p in hr_paths]
        if all(p.exists() for p in by_name):
            lr_paths = by_name
        else:
            # differently named sets (e.g. 0801.png vs 0801x2.png): pair sorted
            lr_paths = sorted(p for p in lr_dir.iterdir() if p.suffix.lower() in (".png", ".imgf"))
            if len(lr_paths) != len(hr_paths):
                raise ShapeError(
                    f"cannot pair {len(hr_paths)} HR with {len(lr_paths)} LR images"
                )
        for hr_path, lr_path in zip(hr_paths, lr_paths):
            pairs.append((load_image(lr_path), load_image(hr_path)))
    else:
        for hr_path in hr_paths:
            lr, hr_c = synthesize_pair(load_image(hr_path), args.scale)
            pairs.append((lr, hr_c))
    return pairs


def cmd_sweep(args) -> int:
    pairs = _load_pairs(args)
    omega_grid = np.linspace(args.omega_start, args.omega_stop, args.omega_steps)
    result = cutoff_sweep(pairs, args.scale, omega_grid,
                          smooth_window=args.smooth_window, alignment=args.alignment)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "sweep.csv").write_text(result.to_csv())
    bic_psnr, bic_ssim = [], []
    for lr, hr in pairs:
        sr = classical_resize(lr, args.scale, "bicubic")
        sr = ImageF(np.clip(sr.data, 0.0, 1.0))
        bic_psnr.append(psnr(hr, sr))
        bic_ssim.append(ssim(hr, sr))
    summary = {
        "scale": args.scale,
        "pairs": len(pairs),
        "best_omega_psnr": result.best_omega_psnr,
        "best_omega_ssim": result.best_omega_ssim,
        "peak_psnr": float(np.max(result.psnr_smooth)),
        "peak_ssim": float(np.max(result.ssim_smooth)),
        "bicubic_psnr": float(np.mean(bic_psnr)),
        "bicubic_ssim": float(np.mean(bic_ssim)),
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"peak psnr {summary['peak_psnr']:.3f} dB at omega {summary['best_omega_psnr']:.4f} "
          f"(bicubic {summary['bicubic_psnr']:.3f} dB)")
    return 0


def cmd_lpfsr(args) -> int:
    img = load_image(args.input)
    cutoff = args.cutoff if args.cutoff is not None else np.pi / args.scale
    if args.route == "freq":
        up = lpf_upsample_freq(img, args.scale, cutoff, alignment=args.alignment)
    else:
        up = lpf_upsample_spatial(img, args.scale, cutoff, Window.parse(args.window), args.radius)
    save_image(up, args.output)
    write_sidecar(args.output, "lpfsr", {
        "input": str(args.input), "scale": args.scale, "cutoff": cutoff,
        "route": args.route, "window": args.window, "radius": args.radius,
    })
    print(f"wrote {args.output}")
    return 0


def cmd_resize(args) -> int:
    img = load_image(args.input)
    out = classical_resize(img, args.scale, args.method)
    save_image(out, args.output)
    print(f"wrote {args.output}")
    return 0


def cmd_spectrum(args) -> int:
    img = load_image(args.input)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _save_view(img, out / Path(args.input).stem, "spectrum")
    print(f"wrote spectrum views to {out}")
    return 0


def cmd_invariance(args) -> int:
    manifest = load_manifest(args.manifest)
    outputs = manifest.get("outputs", {}).get("probes")
    if not outputs:
        raise ParameterError(
            f"manifest {args.manifest} has no probe outputs; run the exporter first"
        )
    base = Path(args.manifest).parent
    spec = _spec_from_manifest(manifest)
    scale = manifest["scale"]
    responses = {}
    for key, rel in outputs.items():
        img = load_image(base / rel)
        responses[parse_shift_key(key)] = extract_impulse_response(
            img, spec.shifted(*parse_shift_key(key)), scale
        )
    report = check_spatial_invariance(responses, scale, args.tolerance)
    result = {
        "tolerance": report.tolerance,
        "passed": report.passed,
        "shifts": [list(s) for s in report.shifts],
        "max_abs_errors": report.max_abs_errors,
    }
    if args.out:
        Path(args.out).write_text(json.dumps(result, indent=2) + "\n")
    status = "PASS" if report.passed else "FAIL"
    worst = max(report.max_abs_errors)
    print(f"spatial invariance: {status} (worst error {worst:.3e}, tolerance {args.tolerance:g})")
    return 0 if report.passed else 3


def cmd_extension_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    factors = [int(f) for f in args.factors.split(",")]
    worst = 0.0
    rows = []
    for length in range(2, args.max_length + 1):
        x = rng.standard_normal(length)
        for factor in factors:
            err = verify_periodic_extension(x, factor)
            rows.append((length, factor, err))
            worst = max(worst, err)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["length", "factor", "max_error"])
            writer.writerows(rows)
    passed = worst < args.tolerance
    print(f"max_error {worst:.3e} {'<' if passed else '>='} {args.tolerance:g}: "
          f"{'PASS' if passed else 'FAIL'}")
    return 0 if passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srfreq",
        description="Frequency-domain analysis of image super-resolution systems",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probe-gen", help="write impulse probes and a manifest")
    p.add_argument("--size", type=int, default=11)
    p.add_argument("--pos", default="5,5", help="impulse row,col")
    p.add_argument("--value", type=float, default=1.0)
    p.add_argument("--channels", type=int, default=3)
    p.add_argument("--scale", type=int, default=4, help="target scale recorded for the exporter")
    p.add_argument("--shifts", default=None, help="semicolon-separated dr,dc list")
    p.add_argument("--lr", nargs="*", default=None, help="LR images to include in the set")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_probe_gen)

    p = sub.add_parser("hyra", help="decompose an SR output into linear + residual")
    p.add_argument("--lr", required=True)
    p.add_argument("--sr", required=True)
    p.add_argument("--probe-out", required=True)
    p.add_argument("--scale", type=int, default=None)
    p.add_argument("--manifest", default=None, help="probe manifest (spec + scale)")
    p.add_argument("--probe-size", type=int, default=11)
    p.add_argument("--probe-pos", default="5,5")
    p.add_argument("--probe-value", type=float, default=1.0)
    p.add_argument("--alignment", choices=("half", "corner"), default="half")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hyra)

    p = sub.add_parser("metrics", help="score paired HR/SR directories")
    p.add_argument("--hr", required=True)
    p.add_argument("--sr", required=True)
    p.add_argument("--channel-policy", choices=("rgb", "luma"), default="rgb")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("sweep", help="PSNR/SSIM versus cutoff frequency")
    p.add_argument("--hr", required=True)
    p.add_argument("--lr", default=None, help="LR dir; synthesized from HR when omitted")
    p.add_argument("--scale", type=int, required=True)
    p.add_argument("--omega-start", type=float, default=0.05)
    p.add_argument("--omega-stop", type=float, default=float(np.pi))
    p.add_argument("--omega-steps", type=int, default=60)
    p.add_argument("--smooth-window", type=int, default=10)
    p.add_argument("--alignment", choices=("half", "corner"), default="half")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lpfsr", help="low-pass-filter super-resolution of one image")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--scale", type=int, required=True)
    p.add_argument("--cutoff", type=float, default=None, help="rad/sample on the output grid")
    p.add_argument("--route", choices=("spatial", "freq"), default="spatial")
    p.add_argument("--window", default="hann")
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--alignment", choices=("corner", "half"), default="corner",
                   help="freq route only: grid convention of the reconstruction")
    p.set_defaults(func=cmd_lpfsr)

    p = sub.add_parser("resize", help="classical interpolation upscaling")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--scale", type=int, required=True)
    p.add_argument("--method", choices=("nearest", "bilinear", "bicubic"), default="bicubic")
    p.set_defaults(func=cmd_resize)

    p = sub.add_parser("spectrum", help="export log-amplitude and phase views")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("invariance", help="shifted-probe spatial-invariance check")
    p.add_argument("--manifest", required=True, help="completed manifest with outputs")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("extension-check", help="zero-interleaving spectrum extension identity")
    p.add_argument("--max-length", type=int, default=64)
    p.add_argument("--factors", default="2,3,4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_extension_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ShapeError, LayoutError, DegenerateInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
