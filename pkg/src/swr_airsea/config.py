"""Experiment configuration: a flat key = value document.

Format: one `key = value` per line, `#` starts a comment, blank lines
ignored.  Complex values use Python literal syntax without spaces
(`10`, `1e-3j`, `0.1+0j`).  Unknown keys are a hard error, as is any
missing required key; values are validated against the domain-type
invariants at load time.
"""

from dataclasses import dataclass

from .errors import ConfigError
from .model import GridSpec, PhysicalParams, TimeSpec
from .swr import SwrConfig

FRICTION_CHOICES = ("linear", "quadratic", "linearized")

#: keys that must be present in every config file
REQUIRED_KEYS = ("f", "nu_a", "nu_o", "rho_a", "rho_o", "c_d",
                 "u_inf_a", "u_inf_o", "h_a", "h_o", "n_a", "n_o",
                 "dt", "n_t")

#: keys with defaults; g_a / g_o default to the geostrophic forcing
#: i f u_inf_j, alpha_c to the stationary-state recipe c_d |jump_e|
OPTIONAL_KEYS = ("g_a", "g_o", "theta", "max_iters", "tol",
                 "noise_amplitude", "seed", "friction", "alpha_c")

_FLOAT_KEYS = {"f", "nu_a", "nu_o", "rho_a", "rho_o", "c_d", "h_a", "h_o",
               "dt", "theta", "tol", "noise_amplitude", "alpha_c"}
_INT_KEYS = {"n_a", "n_o", "n_t", "max_iters", "seed"}
_COMPLEX_KEYS = {"u_inf_a", "u_inf_o", "g_a", "g_o"}


@dataclass
class ExperimentConfig:
    """Validated bundle of every run parameter."""

    params: PhysicalParams
    grid: GridSpec
    time: TimeSpec
    swr: SwrConfig
    friction: str
    alpha_c: float = None  # None: compute from the equilibrium solve


def default_values():
    """The reference configuration (all values as the experiments of the
    underlying study use them: 1-day window, 60 s steps, 2000 m columns)."""
    return {
        "f": 1e-4,
        "nu_a": 1.0,
        "nu_o": 3e-3,
        "rho_a": 1.0,
        "rho_o": 1000.0,
        "c_d": 1.2e-3,
        "u_inf_a": 10.0 + 0.0j,
        "u_inf_o": 0.1 + 0.0j,
        "h_a": 20.0,
        "h_o": 2.0,
        "n_a": 100,
        "n_o": 1000,
        "dt": 60.0,
        "n_t": 1440,
        "theta": 1.0,
        "max_iters": 40,
        "tol": 1e-12,
        "noise_amplitude": 1.0,
        "seed": 1234,
        "friction": "linear",
    }


def _convert(key, raw):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _COMPLEX_KEYS:
            return complex(raw)
    except ValueError as exc:
        raise ConfigError(f"key '{key}': cannot parse value '{raw}'") from exc
    if key == "friction":
        if raw not in FRICTION_CHOICES:
            raise ConfigError(f"key 'friction': must be one of "
                              f"{'|'.join(FRICTION_CHOICES)}, got '{raw}'")
        return raw
    raise ConfigError(f"unknown key '{key}'")


def parse_config_text(text):
    """Parse the flat document into a raw key -> value dict."""
    known = set(REQUIRED_KEYS) | set(OPTIONAL_KEYS)
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in body.split("=", 1))
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key '{key}'")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        values[key] = _convert(key, raw)
    return values


def build_config(values):
    """Assemble and validate an ExperimentConfig from a value dict."""
    for key in REQUIRED_KEYS:
        if key not in values:
            raise ConfigError(f"missing required key '{key}'")
    defaults = default_values()
    merged = {**defaults, **values}
    g_a = merged.get("g_a", 1j * merged["f"] * complex(merged["u_inf_a"]))
    g_o = merged.get("g_o", 1j * merged["f"] * complex(merged["u_inf_o"]))
    try:
        params = PhysicalParams(
            f=merged["f"], nu_a=merged["nu_a"], nu_o=merged["nu_o"],
            rho_a=merged["rho_a"], rho_o=merged["rho_o"], c_d=merged["c_d"],
            u_inf_a=complex(merged["u_inf_a"]), u_inf_o=complex(merged["u_inf_o"]),
            g_a=g_a, g_o=g_o)
        grid = GridSpec(h_a=merged["h_a"], h_o=merged["h_o"],
                        n_a=merged["n_a"], n_o=merged["n_o"])
        time = TimeSpec(dt=merged["dt"], n_t=merged["n_t"])
        swr = SwrConfig(theta=merged["theta"], max_iters=merged["max_iters"],
                        tol=merged["tol"],
                        noise_amplitude=merged["noise_amplitude"],
                        seed=merged["seed"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return ExperimentConfig(params=params, grid=grid, time=time, swr=swr,
                            friction=merged["friction"],
                            alpha_c=merged.get("alpha_c"))


def load_config(path=None):
    """Load a config file, or the built-in defaults when path is None."""
    if path is None:
        return build_config(default_values())
    with open(path, "r", encoding="utf-8") as fh:
        return build_config(parse_config_text(fh.read()))
