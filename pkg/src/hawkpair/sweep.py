"""Parameter-point and sweep evaluation with deterministic CSV/JSON emission."""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, fields

from . import closed_form as cf
from .density import eig_symmetric, mutual_information_numeric, negativity_sum, partial_transpose, reduced_density
from .fock import entangled_pair_state, squared_norm
from .kinematics import ModeSpec, SqueezeParam, make_squeeze, squeezing_from_mode

# (N_max+1)^4 amplitudes: 14 keeps the state and its 225x225 reductions desk-scale
DEFAULT_NUMERIC_CAP = 14
CSV_HEADER = (
    "r_a,r_b,n_max,e_n_block00,neg_sum_num,e_n_num,s_a_closed,s_b_closed,"
    "s_ab_closed,i_closed,s_a_num,s_b_num,s_ab_num,i_num,trace_deficit"
)


class NumericCapError(RuntimeError):
    """Requested numeric cutoff exceeds the memory cap."""


@dataclass(frozen=True)
class SweepConfig:
    r_min: float
    r_max: float
    steps: int
    omega_ratio: float = 1.0
    cutoff: cf.SeriesConfig = cf.SeriesConfig(tail_tol=1e-10)
    methods: tuple = ("closed", "numeric")
    numeric_cap: int = DEFAULT_NUMERIC_CAP

    def __post_init__(self):
        if not self.r_min < self.r_max:
            raise ValueError(f"need r_min < r_max, got [{self.r_min}, {self.r_max}]")
        if self.r_min < 0:
            raise ValueError("r_min must be non-negative")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if self.omega_ratio <= 0:
            raise ValueError("omega_ratio must be positive")
        bad = set(self.methods) - {"closed", "numeric"}
        if bad or not self.methods:
            raise ValueError(f"methods must be a non-empty subset of closed, numeric; got {self.methods}")


@dataclass(frozen=True)
class EntanglementReport:
    """One parameter point's closed-form and numeric measures.

    Numeric fields are None when the numeric method was not run; None means
    absent, never zero.
    """

    r_a: float
    r_b: float
    n_max: int
    e_n_block00: float | None = None
    neg_sum_num: float | None = None
    e_n_num: float | None = None
    s_a_closed: float | None = None
    s_b_closed: float | None = None
    s_ab_closed: float | None = None
    i_closed: float | None = None
    s_a_num: float | None = None
    s_b_num: float | None = None
    s_ab_num: float | None = None
    i_num: float | None = None
    trace_deficit: float | None = None


@dataclass(frozen=True)
class ComparisonReport:
    n_max: int
    diff_e_n: float
    diff_s_a: float
    diff_s_ab: float
    diff_i: float
    warnings: tuple


def _numeric_measures(sq_a: SqueezeParam, sq_b: SqueezeParam, n_max: int) -> dict:
    state = entangled_pair_state(sq_a, sq_b, max(n_max, 1))
    rho_ab = reduced_density(state, keep=("A_out", "B_out"))
    pt_spec = eig_symmetric(partial_transpose(rho_ab, "B_out").entries)
    neg = negativity_sum(pt_spec)
    mi = mutual_information_numeric(state)
    return {
        "neg_sum_num": neg.negative_sum,
        "e_n_num": neg.paper_measure,
        "s_a_num": mi["s_a"],
        "s_b_num": mi["s_b"],
        "s_ab_num": mi["s_ab"],
        "i_num": mi["mutual_information"],
        "trace_deficit": max(1.0 - squared_norm(state), 0.0),
    }


def run_point(
    r_a: float | None = None,
    r_b: float | None = None,
    mode: ModeSpec | None = None,
    omega_prime: float | None = None,
    cutoff: cf.SeriesConfig = cf.SeriesConfig(tail_tol=1e-10),
    methods=("closed", "numeric"),
    numeric_cap: int = DEFAULT_NUMERIC_CAP,
) -> EntanglementReport:
    """Evaluate one parameter point, given either r values or a ModeSpec."""
    if mode is not None:
        if r_a is not None or r_b is not None:
            raise ValueError("give either r values or a ModeSpec, not both")
        sq_a = squeezing_from_mode(mode)
        sq_b = squeezing_from_mode(ModeSpec(mode.mass, omega_prime)) if omega_prime else sq_a
    else:
        if r_a is None:
            raise ValueError("r_a (or a ModeSpec) is required")
        sq_a = make_squeeze(r_a)
        sq_b = make_squeeze(r_b) if r_b is not None else sq_a
    bad = set(methods) - {"closed", "numeric"}
    if bad or not methods:
        raise ValueError(f"methods must be a non-empty subset of closed, numeric; got {methods}")

    n_max = cf.resolve_cutoff(sq_a, sq_b, cutoff)
    values: dict = {}
    if "closed" in methods:
        s_a = cf.s_a_closed(sq_a, cutoff)
        s_b = cf.s_b_closed(sq_b, cutoff)
        s_ab = cf.s_ab_closed(sq_a, sq_b, cutoff)
        values.update(
            e_n_block00=cf.e_n_paper(sq_a, sq_b),
            s_a_closed=s_a,
            s_b_closed=s_b,
            s_ab_closed=s_ab,
            i_closed=s_a + s_b - s_ab,
        )
        x = sq_a.tanh_r**2
        y = sq_b.tanh_r**2
        values["trace_deficit"] = 1.0 - (1.0 - x ** (n_max + 1)) * (1.0 - y ** (n_max + 1))
    if "numeric" in methods:
        if n_max > numeric_cap:
            raise NumericCapError(
                f"numeric method needs cutoff {n_max}, above the memory cap of "
                f"{numeric_cap} ((N_max+1)^4 amplitudes)"
            )
        values.update(_numeric_measures(sq_a, sq_b, n_max))
    return EntanglementReport(r_a=sq_a.r, r_b=sq_b.r, n_max=n_max, **values)


def run_sweep(cfg: SweepConfig) -> list:
    """One report per grid point, ascending r; numeric auto-disables per point
    when the resolved cutoff exceeds the memory cap (noted once on stderr)."""
    rows = []
    warned = False
    for k in range(cfg.steps):
        r = cfg.r_min + k * (cfg.r_max - cfg.r_min) / (cfg.steps - 1)
        if cfg.omega_ratio == 1.0:
            r_b = r
        else:
            r_b = math.atanh(math.tanh(r) ** cfg.omega_ratio) if r > 0 else 0.0
        methods = cfg.methods
        if "numeric" in methods:
            n_req = cf.resolve_cutoff(make_squeeze(r), make_squeeze(r_b), cfg.cutoff)
            if n_req > cfg.numeric_cap:
                if not warned:
                    print(
                        f"note: numeric method disabled where the resolved cutoff "
                        f"exceeds the memory cap of {cfg.numeric_cap}",
                        file=sys.stderr,
                    )
                    warned = True
                methods = tuple(m for m in methods if m != "numeric")
        try:
            rows.append(
                run_point(r_a=r, r_b=r_b, cutoff=cfg.cutoff, methods=methods, numeric_cap=cfg.numeric_cap)
            )
        except Exception as exc:
            raise type(exc)(f"sweep failed at r = {r}: {exc}") from exc
    return rows


def compare_closed_vs_numeric(report: EntanglementReport, warn_threshold: float = 1e-2) -> ComparisonReport:
    """Per-measure |closed - numeric| differences; large ones are flagged,
    not failed (the closed forms are a per-block approximation)."""
    closed_ok = report.e_n_block00 is not None
    numeric_ok = report.e_n_num is not None
    if not (closed_ok and numeric_ok):
        missing = "closed" if not closed_ok else "numeric"
        raise ValueError(f"comparison needs both method families; {missing} is absent")
    diffs = {
        "e_n": abs(report.e_n_block00 - report.e_n_num),
        "s_a": abs(report.s_a_closed - report.s_a_num),
        "s_ab": abs(report.s_ab_closed - report.s_ab_num),
        "i": abs(report.i_closed - report.i_num),
    }
    warnings = tuple(
        f"{name} differs by {diff:.3e} (> {warn_threshold:.0e}): per-block approximation gap"
        for name, diff in diffs.items()
        if diff > warn_threshold
    )
    return ComparisonReport(
        n_max=report.n_max,
        diff_e_n=diffs["e_n"],
        diff_s_a=diffs["s_a"],
        diff_s_ab=diffs["s_ab"],
        diff_i=diffs["i"],
        warnings=warnings,
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{value:.11e}"


def csv_lines(rows) -> list:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, f.name)) for f in fields(EntanglementReport)))
    return lines


def emit_csv(rows, path: str) -> None:
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(csv_lines(rows)) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write CSV to {path}: {exc}") from exc


def emit_json(rows, path: str) -> None:
    payload = [
        {f.name: getattr(row, f.name) for f in fields(EntanglementReport)} for row in rows
    ]
    try:
        with open(path, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed to write JSON to {path}: {exc}") from exc
