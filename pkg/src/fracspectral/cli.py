"""Command-line driver: convergence studies and single solves.

    fracspectral study --config study.toml [--format csv|json] [--out PATH] [--quad-extra M]
    fracspectral solve --kind fivp --nu 0.5 --N 32 --rhs "1+x+cos(x)" [--out PATH]

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__, registry
from .errors import ConfigError, DegenerateFit, FracSpectralError
from .solvers import Kind, ProblemSpec, error_norms, exact_reference, reference_N, solve

try:  # Python 3.11+
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

CSV_COLUMNS = ("kind", "nu", "N", "error_l2", "error_frac", "rate_frac")
NORMS = ("l2", "frac")


class StudyError(FracSpectralError):
    """A solver failure inside one (nu, N) cell of a study."""


@dataclass(frozen=True)
class StudyConfig:
    kind: Kind
    nu: tuple
    rhs: str
    N_list: tuple
    norms: tuple = NORMS
    output: Optional[str] = None
    format: str = "csv"
    quad_extra: int = 16
    N_ref: Optional[int] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", Kind(self.kind))
        except ValueError:
            raise ConfigError(f"unknown problem kind {self.kind!r}") from None
        nus = self.nu if isinstance(self.nu, (list, tuple)) else (self.nu,)
        object.__setattr__(self, "nu", tuple(float(v) for v in nus))
        object.__setattr__(self, "N_list", tuple(int(n) for n in self.N_list))
        object.__setattr__(self, "norms", tuple(str(n).lower() for n in self.norms))
        if not self.nu:
            raise ConfigError("no orders given")
        if not self.N_list or any(b <= a for a, b in zip(self.N_list, self.N_list[1:])):
            raise ConfigError("N_list must be non-empty and strictly increasing")
        bad = [n for n in self.norms if n not in NORMS]
        if bad or not self.norms:
            raise ConfigError(f"norms must be a non-empty subset of {NORMS}, got {bad or '[]'}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.quad_extra < 1:
            raise ConfigError("quad_extra must be >= 1")
        if self.N_ref is not None and self.N_ref <= max(self.N_list):
            raise ConfigError("N_ref must exceed every entry of N_list")
        if self.rhs not in registry.names():
            raise ConfigError(f"unknown right-hand side {self.rhs!r}; known: {registry.names()}")
        for nu in self.nu:
            try:
                ProblemSpec(self.kind, nu, self.N_list[0], registry.PLAIN["one"], self.quad_extra)
                if registry.is_exact(self.rhs):
                    registry.manufactured(self.rhs, self.kind, nu)
            except FracSpectralError as exc:
                raise ConfigError(f"nu={nu}: {exc}") from exc

    @property
    def reference_N(self) -> int:
        return self.N_ref if self.N_ref is not None else reference_N(self.N_list)

    def canonical(self) -> dict:
        """Everything that influences the numbers, in a stable form."""
        return {
            "kind": self.kind.value,
            "nu": list(self.nu),
            "rhs": self.rhs,
            "N_list": list(self.N_list),
            "norms": list(self.norms),
            "quad_extra": self.quad_extra,
            "N_ref": self.reference_N,
        }

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class StudyRow:
    kind: str
    nu: float
    N: int
    error_l2: Optional[float]
    error_frac: Optional[float]
    rate_frac: Optional[float] = None


@dataclass(frozen=True)
class RateFit:
    rate: float
    head_rate: float
    super_algebraic: bool


def _slope(points) -> float:
    N = np.array([p[0] for p in points], dtype=float)
    e = np.array([p[1] for p in points], dtype=float)
    return -np.polyfit(np.log(N), np.log(e), 1)[0]


def _check_points(points) -> list:
    points = list(points)
    if len(points) < 3:
        raise DegenerateFit(f"need at least 3 points, got {len(points)}")
    if any(not (e > 0 and math.isfinite(e)) for _, e in points):
        raise DegenerateFit("errors must be positive and finite")
    return points


def estimate_rate(points) -> float:
    """Algebraic rate r in e ~ N^-r from a least-squares fit of log e
    against log N over the last ceil(len/2) points."""
    points = _check_points(points)
    half = math.ceil(len(points) / 2)
    return float(_slope(points[-half:]))


def fit_rates(points) -> RateFit:
    """Tail and head rates; super_algebraic when tail > 1.5 * head."""
    points = _check_points(points)
    half = math.ceil(len(points) / 2)
    tail = float(_slope(points[-half:]))
    head = float(_slope(points[:half]))
    return RateFit(tail, head, head > 0 and tail > 1.5 * head)


def load_config(path: str | Path, **overrides) -> StudyConfig:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        if path.suffix.lower() == ".json":
            data = json.loads(raw)
        else:
            data = tomllib.loads(raw.decode())
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a table/object")
    data = dict(data)
    data.update(data.pop("problem", {}) or {})
    data.update({k: v for k, v in overrides.items() if v is not None})
    known = {f for f in StudyConfig.__dataclass_fields__}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    missing = [k for k in ("kind", "nu", "rhs", "N_list") if k not in data]
    if missing:
        raise ConfigError(f"missing config keys: {missing}")
    try:
        return StudyConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def _sweep(cfg: StudyConfig, nu: float) -> list[StudyRow]:
    name = cfg.rhs
    man = registry.manufactured(name, cfg.kind, nu) if registry.is_exact(name) else None
    f = man.rhs if man else registry.plain_rhs(name)
    template = ProblemSpec(cfg.kind, nu, cfg.N_list[0], f, cfg.quad_extra)
    N_ref = cfg.reference_N
    try:
        if man is not None:
            K = math.floor(template.sigma) + 1
            ref = exact_reference(template, man.deriv(K), N_ref)
        else:
            ref = solve(template.with_N(N_ref))
    except FracSpectralError as exc:
        raise StudyError(f"nu={nu}, reference N={N_ref}: {exc}") from exc
    rows = []
    prev = None
    for N in cfg.N_list:
        try:
            sol = solve(template.with_N(N))
            e_l2 = error_norms(sol, ref, "l2") if "l2" in cfg.norms else None
            e_fr = error_norms(sol, ref, "frac") if "frac" in cfg.norms else None
        except FracSpectralError as exc:
            raise StudyError(f"nu={nu}, N={N}: {exc}") from exc
        rate = None
        if prev is not None and e_fr is not None and prev[1] > 0 and e_fr > 0:
            rate = -math.log(e_fr / prev[1]) / math.log(N / prev[0])
        rows.append(StudyRow(cfg.kind.value, nu, N, e_l2, e_fr, rate))
        prev = (N, e_fr) if e_fr is not None else None
    return rows


def run_study(cfg: StudyConfig, write: bool = True) -> list[StudyRow]:
    rows = []
    for nu in cfg.nu:
        rows.extend(_sweep(cfg, nu))
    if write and cfg.output:
        Path(cfg.output).write_text(render(rows, cfg))
    return rows


def _num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, str)):
        return str(v)
    return format(float(v), ".16g")


def _header(cfg_hash: str) -> str:
    return f"fracspectral {__version__} config_sha256={cfg_hash}"


def render(rows: Sequence[StudyRow], cfg: StudyConfig) -> str:
    if cfg.format == "json":
        doc = {
            "library": "fracspectral",
            "version": __version__,
            "config_sha256": cfg.digest(),
            "config": cfg.canonical(),
            "rows": [asdict(r) for r in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write("# " + _header(cfg.digest()) + "\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for r in rows:
        buf.write(",".join(_num(getattr(r, c)) for c in CSV_COLUMNS) + "\n")
    return buf.getvalue()


def _solve_command(args) -> str:
    name = args.rhs
    try:
        kind = Kind(args.kind)
    except ValueError:
        raise ConfigError(f"unknown problem kind {args.kind!r}") from None
    if registry.is_exact(name):
        f = registry.manufactured(name, kind, args.nu).rhs
    else:
        f = registry.plain_rhs(name)
    try:
        spec = ProblemSpec(kind, args.nu, args.N, f, args.quad_extra)
    except FracSpectralError as exc:
        raise ConfigError(str(exc)) from exc
    sol = solve(spec)
    fam = sol.family
    settings = {"kind": kind.value, "nu": spec.nu, "N": spec.N, "rhs": name, "quad_extra": spec.quad_extra}
    digest = hashlib.sha256(json.dumps(settings, sort_keys=True).encode()).hexdigest()
    degrees = sol.coeffs.degrees()
    if args.format == "json":
        doc = {
            "library": "fracspectral",
            "version": __version__,
            "config_sha256": digest,
            "problem": settings,
            "basis": {"side": fam.side.value, "alpha": fam.alpha, "beta": fam.beta, "start": sol.coeffs.start},
            "n": [int(n) for n in degrees],
            "coeffs": [float(c) for c in sol.coeffs.coeffs],
            "diag": [float(d) for d in sol.diag],
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [
        "# " + _header(digest),
        f"# basis side={fam.side.value} alpha={_num(fam.alpha)} beta={_num(fam.beta)}",
        "n,coeff,diag",
    ]
    lines += [f"{int(n)},{_num(c)},{_num(d)}" for n, c, d in zip(degrees, sol.coeffs.coeffs, sol.diag)]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracspectral", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"fracspectral {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    st = sub.add_parser("study", help="run a convergence study from a TOML or JSON config")
    st.add_argument("--config", required=True)
    st.add_argument("--format", choices=("csv", "json"))
    st.add_argument("--out")
    st.add_argument("--quad-extra", type=int)

    so = sub.add_parser("solve", help="solve one problem and print its coefficients")
    so.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    so.add_argument("--nu", type=float, required=True)
    so.add_argument("--N", type=int, required=True)
    so.add_argument("--rhs", required=True)
    so.add_argument("--out")
    so.add_argument("--format", choices=("csv", "json"), default="csv")
    so.add_argument("--quad-extra", type=int, default=16)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "study":
            cfg = load_config(args.config, format=args.format, output=args.out, quad_extra=args.quad_extra)
            rows = run_study(cfg, write=False)
            text = render(rows, cfg)
        else:
            text = _solve_command(args)
        out = getattr(args, "out", None) if args.command == "solve" else cfg.output
        if out:
            Path(out).write_text(text)
        else:
            sys.stdout.write(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FracSpectralError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
