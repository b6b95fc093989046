"""Flat key/value configuration files and parameter round-tripping.

Format: one ``key = value`` per line, ``#`` starts a comment, blank
lines ignored.  Keys match the parameter field names:

    u0, gamma0, recoil_kick          lattice
    alpha0, a_amp, b_amp, omega, phi drive
    dt, t_total, t_transient, n_traj, seed, initial_spread, record_stride

``initial_spread`` is a comma pair ``z_width,p_width``.  Any key can be
overridden from the command line with ``--set key=value``.
"""

from __future__ import annotations

from .params import DriveParams, InvalidParams, LatticeParams, SimParams, validate

__all__ = ["parse_config_text", "sim_params_from_dict", "load_sim_params", "config_lines"]

_FLOAT_KEYS = {
    "u0", "gamma0", "alpha0", "a_amp", "b_amp", "omega", "phi",
    "dt", "t_total", "t_transient",
}
_INT_KEYS = {"n_traj", "seed", "record_stride"}
_BOOL_KEYS = {"recoil_kick"}
_PAIR_KEYS = {"initial_spread"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _BOOL_KEYS | _PAIR_KEYS

_DEFAULTS = {
    "t_transient": "0",
    "n_traj": "1000",
    "seed": "0",
    "recoil_kick": "true",
    "initial_spread": "3.141592653589793,2.0",
    "phi": "0",
}
_REQUIRED = ("u0", "gamma0", "alpha0", "a_amp", "b_amp", "omega", "dt", "t_total")


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Split config text into a key -> raw-value map, rejecting unknown keys."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParams(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise InvalidParams(f"{source}:{lineno}: unknown key {key!r}")
        entries[key] = value
    return entries


def _convert(key: str, raw: str):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _BOOL_KEYS:
            lowered = raw.lower()
            if lowered in ("true", "1", "yes", "on"):
                return True
            if lowered in ("false", "0", "no", "off"):
                return False
            raise ValueError(raw)
        parts = [float(x) for x in raw.split(",")]
        if len(parts) != 2:
            raise ValueError(raw)
        return (parts[0], parts[1])
    except ValueError:
        raise InvalidParams(f"bad value for {key}: {raw!r}") from None


def sim_params_from_dict(entries: dict[str, str]) -> SimParams:
    """Build and validate SimParams from raw string entries."""
    merged = dict(_DEFAULTS)
    merged.update(entries)
    missing = [k for k in _REQUIRED if k not in merged]
    if missing:
        raise InvalidParams(f"missing required config keys: {', '.join(missing)}")
    for key in merged:
        if key not in KNOWN_KEYS:
            raise InvalidParams(f"unknown key {key!r}")

    val = {k: _convert(k, v) for k, v in merged.items()}
    params = SimParams(
        lattice=LatticeParams(
            u0=val["u0"], gamma0=val["gamma0"], recoil_kick=val["recoil_kick"]
        ),
        drive=DriveParams(
            alpha0=val["alpha0"],
            a_amp=val["a_amp"],
            b_amp=val["b_amp"],
            omega=val["omega"],
            phi=val["phi"],
        ),
        dt=val["dt"],
        t_total=val["t_total"],
        t_transient=val["t_transient"],
        n_traj=val["n_traj"],
        seed=val["seed"],
        initial_spread=val["initial_spread"],
        record_stride=val.get("record_stride"),
    )
    return validate(params)


def load_sim_params(path: str, overrides: dict[str, str] | None = None) -> SimParams:
    """Read a config file, apply overrides, validate."""
    with open(path, "r", encoding="utf-8") as fh:
        entries = parse_config_text(fh.read(), source=path)
    for key, value in (overrides or {}).items():
        if key not in KNOWN_KEYS:
            raise InvalidParams(f"unknown key {key!r}")
        entries[key] = value
    return sim_params_from_dict(entries)


def config_lines(params: SimParams) -> list[str]:
    """Round-trippable key = value lines describing ``params``."""
    z_spread, p_spread = params.initial_spread
    lines = [
        f"u0 = {params.lattice.u0!r}",
        f"gamma0 = {params.lattice.gamma0!r}",
        f"recoil_kick = {'true' if params.lattice.recoil_kick else 'false'}",
        f"alpha0 = {params.drive.alpha0!r}",
        f"a_amp = {params.drive.a_amp!r}",
        f"b_amp = {params.drive.b_amp!r}",
        f"omega = {params.drive.omega!r}",
        f"phi = {params.drive.phi!r}",
        f"dt = {params.dt!r}",
        f"t_total = {params.t_total!r}",
        f"t_transient = {params.t_transient!r}",
        f"n_traj = {params.n_traj}",
        f"seed = {params.seed}",
        f"initial_spread = {z_spread!r},{p_spread!r}",
    ]
    if params.record_stride is not None:
        lines.append(f"record_stride = {params.record_stride}")
    return lines
