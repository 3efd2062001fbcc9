"""Scenario files: YAML text <-> :class:`ScenarioConfig`.

Schema (every key optional; omitted keys take the type defaults)::

    name: rule14
    vessel:
      white:
        params: {length, beam, mass, ...}      # VesselParams fields
        state: {x, y, psi, u, r}               # VesselState fields, radians
      red:                                     # omit for a single-vessel run
        params: {...}
        state: {x, y, psi, u, r}
        speed: 1.5                             # or thrust: <N per motor>
    guidance: {...}                            # GuidanceParams fields
    colregs: {...}                             # ColregsThresholds fields, radians
    apf: {...}                                 # FieldParams fields except safety_radius
    sim:
      dt: 0.1
      max_time: 300.0
      seed: 0
      route: {kind, goal, amplitude, n_samples, points, closed, laps}
      noise: {gps_std, compass_std, gyro_std, accel_std, speed_std}

The safety radius is always twice the white vessel's beam and cannot be set.
"""
from __future__ import annotations

import dataclasses
import typing

import yaml

from .apf import FieldParams
from .colregs import ColregsThresholds
from .dynamics import VesselParams, VesselState
from .guidance import GuidanceParams
from .simulator import NoiseConfig, PathSpec, RedScript, ScenarioConfig


class ConfigError(ValueError):
    pass


def _where(source, node) -> str:
    m = node.start_mark
    return f"{source}:{m.line + 1}:{m.column + 1}"


class _Reader:
    def __init__(self, loader, source):
        self.loader = loader
        self.source = source

    def mapping(self, node, path) -> dict:
        if not isinstance(node, yaml.MappingNode):
            raise ConfigError(f"{_where(self.source, node)}: {path or 'document'} must be a mapping")
        out = {}
        for k, v in node.value:
            key = self.loader.construct_object(k, deep=True)
            if not isinstance(key, str):
                raise ConfigError(f"{_where(self.source, k)}: keys must be strings")
            if key in out:
                raise ConfigError(f"{_where(self.source, k)}: duplicate key {_join(path, key)!r}")
            out[key] = v
        return out

    def value(self, node):
        return self.loader.construct_object(node, deep=True)

    def fields(self, cls, node, path, skip=(), extra=None):
        """Keyword arguments for ``cls`` from a mapping node."""
        raw = self.mapping(node, path)
        hints = typing.get_type_hints(cls)
        allowed = {f.name for f in dataclasses.fields(cls)} - set(skip)
        kwargs = {}
        for key, v in raw.items():
            if extra and key in extra:
                continue
            if key not in allowed:
                raise ConfigError(f"{_where(self.source, v)}: unknown key {_join(path, key)!r}")
            kwargs[key] = _coerce(self.value(v), hints[key])
        return kwargs, raw

    def build(self, cls, node, path, **kw):
        try:
            return cls(**kw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{_where(self.source, node)}: invalid {path}: {exc}") from None


def _join(path, key):
    return f"{path}.{key}" if path else key


def _coerce(value, hint):
    # integers written without a decimal point still mean floats
    args = typing.get_args(hint)
    if hint is float or float in args:
        if isinstance(value, int) and not isinstance(value, bool):
            return float(value)
    if isinstance(value, list):
        return tuple(_coerce_seq(v) for v in value)
    return value


def _coerce_seq(v):
    if isinstance(v, list):
        return tuple(float(x) if isinstance(x, int) and not isinstance(x, bool) else x for x in v)
    if isinstance(v, int) and not isinstance(v, bool):
        return float(v)
    return v


def _vessel(r: _Reader, node, path, red: bool):
    extra = ("params", "state")
    cls = RedScript if red else None
    raw = r.mapping(node, path)
    params = VesselParams()
    state = VesselState()
    if "params" in raw:
        kw, _ = r.fields(VesselParams, raw["params"], f"{path}.params")
        params = r.build(VesselParams, raw["params"], f"{path}.params", **kw)
    if "state" in raw:
        kw, _ = r.fields(VesselState, raw["state"], f"{path}.state", skip=("t",))
        state = r.build(VesselState, raw["state"], f"{path}.state", **kw)
    if cls is None:
        for key, v in raw.items():
            if key not in extra:
                raise ConfigError(f"{_where(r.source, v)}: unknown key {_join(path, key)!r}")
        return params, state
    kw, _ = r.fields(RedScript, node, path, extra=extra)
    return r.build(RedScript, node, path, params=params, state=state, **kw)


SECTIONS = ("name", "vessel", "guidance", "colregs", "apf", "sim")


def parse_scenario_file(text: str, source: str = "<string>") -> ScenarioConfig:
    """Parse scenario text.

    Raises:
        ConfigError: on a YAML syntax error (with line and column), an
            unknown key (named, with its position) or an invalid value.
    """
    loader = yaml.SafeLoader(text)
    try:
        try:
            root = loader.get_single_node()
        except yaml.MarkedYAMLError as exc:
            mark = exc.problem_mark or exc.context_mark
            pos = f"{source}:{mark.line + 1}:{mark.column + 1}" if mark else source
            raise ConfigError(f"{pos}: syntax error: {exc.problem or exc.context}") from None
        if root is None:
            return ScenarioConfig()
        r = _Reader(loader, source)
        top = r.mapping(root, "")
        for key, v in top.items():
            if key not in SECTIONS:
                raise ConfigError(f"{_where(source, v)}: unknown key {key!r}")
        kw = {}
        if "name" in top:
            kw["name"] = str(r.value(top["name"]))
        if "vessel" in top:
            vessels = r.mapping(top["vessel"], "vessel")
            for key, v in vessels.items():
                if key not in ("white", "red"):
                    raise ConfigError(f"{_where(source, v)}: unknown key {_join('vessel', key)!r}")
            if "white" in vessels:
                kw["white_params"], kw["white_state"] = _vessel(r, vessels["white"], "vessel.white", False)
            if "red" in vessels:
                kw["red"] = _vessel(r, vessels["red"], "vessel.red", True)
        if "guidance" in top:
            gkw, _ = r.fields(GuidanceParams, top["guidance"], "guidance")
            kw["guidance"] = r.build(GuidanceParams, top["guidance"], "guidance", **gkw)
        if "colregs" in top:
            ckw, _ = r.fields(ColregsThresholds, top["colregs"], "colregs")
            kw["thresholds"] = r.build(ColregsThresholds, top["colregs"], "colregs", **ckw)
        apf_node = None
        if "apf" in top:
            apf_node = top["apf"]
            raw = r.mapping(apf_node, "apf")
            if "safety_radius" in raw:
                raise ConfigError(f"{_where(source, raw['safety_radius'])}: apf.safety_radius "
                                  "is derived from the white beam and cannot be set")
            fkw, _ = r.fields(FieldParams, apf_node, "apf")
        sim_node = top.get("sim")
        if sim_node is not None:
            sim = r.mapping(sim_node, "sim")
            for key, v in sim.items():
                if key == "route":
                    pkw, _ = r.fields(PathSpec, v, "sim.route")
                    kw["route"] = r.build(PathSpec, v, "sim.route", **pkw)
                elif key == "noise":
                    nkw, _ = r.fields(NoiseConfig, v, "sim.noise")
                    kw["noise"] = r.build(NoiseConfig, v, "sim.noise", **nkw)
                elif key in ("dt", "max_time", "seed"):
                    val = r.value(v)
                    kw[key] = _coerce(val, float) if key != "seed" else val
                else:
                    raise ConfigError(f"{_where(source, v)}: unknown key {_join('sim', key)!r}")
        if apf_node is not None:
            white = kw.get("white_params", VesselParams())
            try:
                kw["field"] = FieldParams.for_vessel(white, **fkw)
            except ValueError as exc:
                raise ConfigError(f"{_where(source, apf_node)}: invalid apf: {exc}") from None
        return r.build(ScenarioConfig, root, "scenario", **kw)
    finally:
        loader.dispose()


def load_scenario(path) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_scenario_file(text, source=str(path))


def _plain(obj, skip=()):
    out = {}
    for f in dataclasses.fields(obj):
        if f.name in skip:
            continue
        v = getattr(obj, f.name)
        if isinstance(v, tuple):
            v = [list(p) if isinstance(p, tuple) else p for p in v]
        out[f.name] = v
    return out


def scenario_to_dict(config: ScenarioConfig) -> dict:
    white = {"params": _plain(config.white_params), "state": _plain(config.white_state, ("t",))}
    vessel = {"white": white}
    if config.red is not None:
        red = config.red
        vessel["red"] = {"params": _plain(red.params), "state": _plain(red.state, ("t",)),
                         "speed": red.speed, "thrust": red.thrust}
    return {
        "name": config.name,
        "vessel": vessel,
        "guidance": _plain(config.guidance),
        "colregs": _plain(config.thresholds),
        "apf": _plain(config.field, ("safety_radius",)),
        "sim": {"dt": config.dt, "max_time": config.max_time, "seed": config.seed,
                "route": _plain(config.route), "noise": _plain(config.noise)},
    }


def serialize_scenario(config: ScenarioConfig) -> str:
    """Full YAML text of a config; parsing it gives back an equal config."""
    if config.field != FieldParams.for_vessel(config.white_params, **_plain(config.field, ("safety_radius",))):
        raise ValueError("safety radius differs from twice the beam and cannot be serialized")
    return yaml.safe_dump(scenario_to_dict(config), sort_keys=False, default_flow_style=False)
