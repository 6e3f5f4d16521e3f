"""
Text formats for states and measurement settings.

State file::

    # comment
    dims 2 2 2
    0 0 0  0.7071067811865476 0
    1 1 1  0.7071067811865476 0

Settings file, one observable per line (parties are 1-based). A line holds the
outcome-0 ray, optionally followed by the outcome-1 ray; the two span the
measurement subspace of a qudit party::

    1 a  1 0  0 0
    1 b  0.7071067811865476 0  0.7071067811865476 0
    2 a  1 0  0 0  0 0   0 0  0 0  1 0
"""
import logging
from pathlib import Path

import numpy as np
from marshmallow import ValidationError

from tripartite_hardy.schemas.file_schema import SettingsLineSchema, StateFileSchema
from tripartite_hardy.services.hardy3 import HardySettings
from tripartite_hardy.services.tensor_core import PureState, make_state
from tripartite_hardy.utils.errors import DimensionMismatchError, ParseError

state_schema = StateFileSchema()
settings_line_schema = SettingsLineSchema()


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as error:
        raise ParseError(verboseMessage=f"{path}: {error}")


def parse_state_text(text: str) -> PureState:
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "dims":
        raise ParseError(verboseMessage="first line must be 'dims d1 ... dn'")

    raw = {"dims": lines[0][1][1:], "entries": []}
    for number, tokens in lines[1:]:
        if len(tokens) < 3:
            raise ParseError(verboseMessage=f"line {number}: expected indices followed by 're im'")
        raw["entries"].append({"index": tokens[:-2], "re": tokens[-2], "im": tokens[-1]})

    try:
        data = state_schema.load(raw)
    except ValidationError as err:
        logging.error(f"Validation error: {err.messages}")
        raise ParseError(verboseMessage=err.messages)

    entries = [(entry["index"], complex(entry["re"], entry["im"])) for entry in data["entries"]]
    return make_state(data["dims"], entries)


def _split_rays(values, dim: int, party: int, obs: str):
    """One ray (outcome 0) or two rays (outcome 0, then outcome 1) of ``dim`` components."""
    comps = np.array(values[0::2]) + 1j * np.array(values[1::2])
    if comps.size == dim:
        return comps, None
    if comps.size == 2 * dim:
        return comps[:dim], comps[dim:]
    raise DimensionMismatchError(
        f"Party {party + 1} ray {obs} has {comps.size} components, expected {dim} or {2 * dim}"
    )


def parse_settings_text(text: str, dims) -> HardySettings:
    blocks = {}
    for number, tokens in _content_lines(text):
        try:
            data = settings_line_schema.load({"party": tokens[0], "obs": tokens[1] if len(tokens) > 1 else None,
                                              "components": tokens[2:]})
        except ValidationError as err:
            logging.error(f"Validation error: {err.messages}")
            raise ParseError(verboseMessage={f"line {number}": err.messages})

        key = (data["party"] - 1, data["obs"])
        if key in blocks:
            raise ParseError(verboseMessage=f"line {number}: ray for party {data['party']} {data['obs']} repeated")
        blocks[key] = data["components"]

    n = len(dims)
    rays = {}
    for (party, obs), values in blocks.items():
        if party >= n:
            raise DimensionMismatchError(f"Settings name party {party + 1} of a {n}-party state")
        rays[(party, obs)] = _split_rays(values, dims[party], party, obs)

    missing = [f"{k + 1}{obs}" for k in range(n) for obs in ("a", "b") if (k, obs) not in rays]
    if missing:
        raise ParseError(verboseMessage=f"missing rays: {', '.join(missing)}")

    return HardySettings.from_rays(
        [rays[(k, "a")][0] for k in range(n)],
        [rays[(k, "b")][0] for k in range(n)],
        a1_rays=[rays[(k, "a")][1] for k in range(n)],
        b1_rays=[rays[(k, "b")][1] for k in range(n)],
    )


def read_state_file(path) -> PureState:
    return parse_state_text(_read_text(path))


def read_settings_file(path, dims) -> HardySettings:
    return parse_settings_text(_read_text(path), dims)


def _number(value: float) -> str:
    return format(float(value), ".17g")


def dump_state_text(state: PureState, tol: float = 0.0) -> str:
    lines = ["dims " + " ".join(str(d) for d in state.dims)]
    for index in np.ndindex(*state.dims):
        amplitude = state.amps[index]
        if abs(amplitude) > tol:
            lines.append(" ".join(str(i) for i in index) + f" {_number(amplitude.real)} {_number(amplitude.imag)}")
    return "\n".join(lines) + "\n"


def dump_settings_text(settings) -> str:
    lines = []
    for k, pair in enumerate(settings):
        for obs in ("a", "b"):
            rays = [pair.ray(obs)]
            if pair.complement_ray(obs) is not None:
                rays.append(pair.outcome_ray(obs, 1))
            components = "  ".join(" ".join(f"{_number(c.real)} {_number(c.imag)}" for c in ray) for ray in rays)
            lines.append(f"{k + 1} {obs} {components}")
    return "\n".join(lines) + "\n"


def write_text(path, text: str):
    Path(path).write_text(text, encoding="utf-8")
