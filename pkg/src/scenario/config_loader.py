"""
Scenario files: YAML in, validated and SI-resolved ``ScenarioConfig`` out.

Quantities are plain numbers (SI) or ``"<value> <unit>"`` strings. Unknown
keys are rejected. Physical invariants of the rod, environment and plan are
checked at load; whether the planned transfer fits on the rod is left to the
protocol stage.
"""

from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

import yaml
from box import Box
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainValidator,
    ValidationError,
    field_validator,
    model_validator,
)

from ..common.constants import DEFAULT_FREE_FALL_ACCELERATION
from ..common.errors import (
    ConfigError,
    ConfigParseError,
    PhysicsDomainError,
    SchemaError,
    TorsionBalanceError,
    UnitMismatchError,
)
from ..common.units import (
    ACCELERATION,
    ANGLE,
    GRADIENT,
    LENGTH,
    MASS,
    MASS_DENSITY,
    NUMBER_DENSITY,
    POLARIZABILITY,
    PRESSURE,
    TEMPERATURE,
    TIME,
    parse_quantity,
    quantity_dimension,
)
from ..common.utils import get_logger
from ..config import PRESETS_DIR
from ..protocol import ProtocolPlan
from ..protocol.protocol_plan import T2_ASSUMED
from ..system_model import (
    Environment,
    GasSpecies,
    Nanorod,
    density_from_pressure,
    mass_from_density,
)

logger = get_logger(__name__)

PLATFORMS = ("table_top", "drop_tower", "sounding_rocket", "space", "custom")

# Only the drop-tower time is a quoted facility figure; the rest are defaults
DEFAULT_PLATFORM_DURATIONS: Dict[str, float] = {
    "table_top": 0.1,
    "drop_tower": 4.6,
    "sounding_rocket": 60.0,
    "space": 1000.0,
}


def _quantity(dimension: str, **constraints):
    def parse(value: Any) -> float:
        return parse_quantity(value, dimension)
    return Annotated[float, BeforeValidator(parse), Field(**constraints)]


def _parse_dielectric(value: Any) -> complex:
    if isinstance(value, bool):
        raise SchemaError("dielectric must be a number, a complex string or {real, imag}")
    if isinstance(value, Mapping):
        unknown = set(value) - {"real", "imag"}
        if unknown or "real" not in value:
            raise SchemaError("dielectric mapping takes 'real' and optional 'imag'")
        return complex(float(value["real"]), float(value.get("imag", 0.0)))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError:
            raise SchemaError(f"cannot read a complex dielectric constant from {value!r}") from None
    raise SchemaError(f"unsupported dielectric value {value!r}")


Length = _quantity(LENGTH)
PositiveLength = _quantity(LENGTH, gt=0)
Mass = _quantity(MASS)
PositiveTime = _quantity(TIME, gt=0)
Time = _quantity(TIME, ge=0)
PositiveTemperature = _quantity(TEMPERATURE, gt=0)
NumberDensity = _quantity(NUMBER_DENSITY)
Gradient = _quantity(GRADIENT)
PositiveAngle = _quantity(ANGLE, gt=0)
MassDensity = _quantity(MASS_DENSITY)
Acceleration = _quantity(ACCELERATION, gt=0)
Polarizability = _quantity(POLARIZABILITY)
Dielectric = Annotated[Any, PlainValidator(_parse_dielectric)]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RodSection(_Section):
    sphere_radius: Length = Field(description="Sphere radius r")
    half_length: Length = Field(description="Half the bar length, L")
    mass: Optional[Mass] = Field(None, description="Mass of one sphere (or give density)")
    density: Optional[MassDensity] = Field(None, description="Sphere material density")
    dielectric: Dielectric = Field(complex(5.7, 2.85e-4), description="Complex dielectric constant")

    @model_validator(mode="after")
    def _resolve_mass(self) -> "RodSection":
        if (self.mass is None) == (self.density is None):
            raise SchemaError("give exactly one of 'mass' or 'density'")
        if self.density is not None:
            self.mass = mass_from_density(self.sphere_radius, self.density)
            self.density = None
        return self


class SpeciesSection(_Section):
    name: str
    mass: Mass = Field(description="Molecular mass")
    fraction: float = Field(ge=0, le=1)


class EnvironmentSection(_Section):
    number_density: NumberDensity = Field(description="Gas number density, or a pressure at T_E")
    temperature_external: PositiveTemperature = Field(description="Environment temperature T_E")
    temperature_internal: Optional[PositiveTemperature] = Field(
        None, description="Internal temperature T_I; equals T_E when omitted"
    )
    species: Optional[List[SpeciesSection]] = Field(None, description="Gas mixture; air when omitted")

    @model_validator(mode="before")
    @classmethod
    def _pressure_to_density(cls, data: Any) -> Any:
        if not isinstance(data, Mapping) or "temperature_external" not in data:
            return data
        value = data.get("number_density")
        if quantity_dimension(value, "environment.number_density") != PRESSURE:
            return data
        temperature = parse_quantity(
            data["temperature_external"], TEMPERATURE, "environment.temperature_external"
        )
        pressure = parse_quantity(value, PRESSURE, "environment.number_density")
        return {**data, "number_density": density_from_pressure(pressure, temperature)}


class PlanSection(_Section):
    gradient: Gradient = Field(description="Magnetic field gradient dB/dx")
    transfer_time: Time = Field(description="Gradient on-time t0")
    measurement_time: Time = Field(0.0, description="Remaining spin-stage time")
    spin_coherence: PositiveTime = Field(T2_ASSUMED, description="Spin coherence time T2")
    lande_g: float = Field(2.0, gt=0)
    safety_factor: float = Field(1.0, ge=1, description="Required T2 / t0")
    wavepacket_width: Length = Field(0.0, ge=0, description="Centre-of-mass wavepacket width")


class DynamicsSection(_Section):
    theta0: Optional[PositiveAngle] = Field(
        None, description="Explicit initial angle overriding the protocol value"
    )
    initial_angular_velocity: float = Field(0.0, description="theta'(0) in rescaled units")
    tolerance: Optional[float] = Field(None, gt=0, description="Relative integrator tolerance")
    samples: Optional[int] = Field(None, ge=2, description="Trajectory samples")
    spacing: Literal["log", "linear"] = "log"
    max_rescaled_time: float = Field(100.0, gt=0, description="Threshold-search horizon")


class DetectionResolution(_Section):
    label: str
    displacement: Optional[PositiveLength] = None
    angle: Optional[PositiveAngle] = None

    @model_validator(mode="after")
    def _one_form(self) -> "DetectionResolution":
        if (self.displacement is None) == (self.angle is None):
            raise SchemaError(f"resolution {self.label!r}: give exactly one of 'displacement' or 'angle'")
        return self

    def angle_for(self, half_length: float) -> float:
        """Angular resolution; a displacement converts as dtheta = dx / L."""
        if self.angle is not None:
            return self.angle
        return self.displacement / half_length


class PolarizabilitySection(_Section):
    alpha_x: Polarizability
    alpha_z: Polarizability


class OutputSection(_Section):
    directory: Optional[str] = None
    formats: List[Literal["json", "csv"]] = Field(default_factory=lambda: ["json", "csv"])
    svg: bool = False


class ScenarioConfig(_Section):
    """Fully resolved scenario, every quantity in SI units."""

    rod: RodSection
    environment: EnvironmentSection
    plan: PlanSection
    platform: Literal["table_top", "drop_tower", "sounding_rocket", "space", "custom"]
    duration: Optional[PositiveTime] = None
    platform_durations: Dict[
        Literal["table_top", "drop_tower", "sounding_rocket", "space"], PositiveTime
    ] = Field(default_factory=lambda: dict(DEFAULT_PLATFORM_DURATIONS))
    dynamics: DynamicsSection = Field(default_factory=DynamicsSection)
    gravity_acceleration: Acceleration = DEFAULT_FREE_FALL_ACCELERATION
    detection_resolutions: List[DetectionResolution] = Field(default_factory=list)
    temperatures_to_mark: List[PositiveTemperature] = Field(default_factory=list)
    polarizability: Optional[PolarizabilitySection] = None
    collisional_mode: Literal["species", "averaged"] = "species"
    output: OutputSection = Field(default_factory=OutputSection)

    @field_validator("platform_durations", mode="before")
    @classmethod
    def _merge_platform_defaults(cls, value: Any) -> Any:
        if isinstance(value, Mapping):
            return {**DEFAULT_PLATFORM_DURATIONS, **value}
        return value

    @model_validator(mode="after")
    def _duration_known(self) -> "ScenarioConfig":
        if self.platform == "custom" and self.duration is None:
            raise SchemaError("platform 'custom' needs an explicit duration")
        return self

    @property
    def resolved_duration(self) -> float:
        if self.duration is not None:
            return self.duration
        return self.platform_durations[self.platform]

    def build_rod(self) -> Nanorod:
        return Nanorod(
            sphere_radius=self.rod.sphere_radius,
            half_length=self.rod.half_length,
            mass=self.rod.mass,
            dielectric=self.rod.dielectric,
        )

    def build_environment(self) -> Environment:
        env = self.environment
        if env.species is None:
            return Environment.air(env.number_density, env.temperature_external, env.temperature_internal)
        return Environment(
            species=tuple(GasSpecies(s.name, s.mass, s.fraction) for s in env.species),
            number_density=env.number_density,
            temperature_external=env.temperature_external,
            temperature_internal=(
                env.temperature_external if env.temperature_internal is None else env.temperature_internal
            ),
        )

    def build_plan(self) -> ProtocolPlan:
        return ProtocolPlan(
            gradient=self.plan.gradient,
            transfer_time=self.plan.transfer_time,
            measurement_time=self.plan.measurement_time,
            spin_coherence=self.plan.spin_coherence,
            lande_g=self.plan.lande_g,
        )

    def resolution_angles(self) -> List[Tuple[str, float, Optional[float]]]:
        """(label, angle in rad, displacement in m or None) per detection line."""
        return [
            (r.label, r.angle_for(self.rod.half_length), r.displacement)
            for r in self.detection_resolutions
        ]

    def to_data(self) -> Dict[str, Any]:
        """Plain SI mapping; ``config_from_mapping`` of it gives back an equal config."""
        data = self.model_dump(exclude_none=True)
        dielectric = self.rod.dielectric
        data["rod"]["dielectric"] = {"real": dielectric.real, "imag": dielectric.imag}
        return data


SWEEP_AXES: Dict[str, str] = {
    "T_E": "environment.temperature_external",
    "T_I": "environment.temperature_internal",
    "n_gas": "environment.number_density",
    "L": "rod.half_length",
    "r": "rod.sphere_radius",
    "m": "rod.mass",
    "dxB": "plan.gradient",
    "t0": "plan.transfer_time",
    "duration": "duration",
}


def _translate(error: ValidationError, source: str) -> ConfigError:
    problems: List[str] = []
    keys: List[str] = []
    for item in error.errors():
        key = ".".join(str(part) for part in item["loc"])
        cause = (item.get("ctx") or {}).get("error")
        if isinstance(cause, UnitMismatchError):
            return UnitMismatchError(key or cause.key, cause.expected, cause.received, cause.unit)
        if item["type"] == "missing":
            problems.append(f"{key}: required key missing")
        elif item["type"] == "extra_forbidden":
            problems.append(f"{key}: unknown key")
        elif isinstance(cause, TorsionBalanceError):
            problems.append(f"{key}: {cause.message}" if key else cause.message)
        else:
            problems.append(f"{key}: {item['msg']}")
        keys.append(key)
    return SchemaError(f"{source}: invalid scenario: " + "; ".join(problems), keys=keys)


def _check_physics(config: ScenarioConfig, source: str) -> None:
    builders = (
        ("rod", config.build_rod),
        ("environment", config.build_environment),
        ("plan", config.build_plan),
    )
    for section, build in builders:
        try:
            build()
        except PhysicsDomainError as e:
            raise SchemaError(f"{source}: {section}: {e.message}", keys=[section]) from e


def config_from_mapping(data: Mapping[str, Any], source: str = "<mapping>") -> ScenarioConfig:
    """Validate an already-parsed mapping into a ``ScenarioConfig``."""
    try:
        config = ScenarioConfig.model_validate(dict(data))
    except ValidationError as e:
        translated = _translate(e, source)
        logger.error(f"Scenario rejected: {translated}")
        raise translated from None
    _check_physics(config, source)
    return config


def parse_config(text: str, source: str = "<string>") -> ScenarioConfig:
    """Parse scenario YAML text."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        problem = getattr(e, "problem", None) or str(e)
        raise ConfigParseError(
            f"{source}: {problem}",
            line=mark.line + 1 if mark is not None else None,
            column=mark.column + 1 if mark is not None else None,
        ) from None

    if data is None:
        data = {}
    if not isinstance(data, Mapping):
        raise SchemaError(f"{source}: top level must be a mapping of sections")
    return config_from_mapping(data, source)


def load_config(path: Union[str, Path]) -> ScenarioConfig:
    """
    Load a scenario file.

    Args:
        path: YAML file

    Returns:
        Resolved ScenarioConfig

    Raises:
        ConfigParseError: malformed YAML (with line and column)
        UnitMismatchError: quantity in a unit of the wrong dimension
        SchemaError: missing, unknown or invalid keys
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"scenario file not found: {path}")
    config = parse_config(path.read_text(encoding="utf-8"), str(path))
    logger.info(f"Loaded scenario {path.name} (platform {config.platform})")
    return config


def dump_config(config: ScenarioConfig, path: Union[str, Path, None] = None) -> str:
    """Serialize the resolved config as SI-valued YAML."""
    text = yaml.safe_dump(config.to_data(), sort_keys=True, default_flow_style=False)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def list_presets() -> List[str]:
    return sorted(p.stem for p in PRESETS_DIR.glob("*.yaml"))


def load_preset(name: str) -> ScenarioConfig:
    """Load a shipped preset by name (e.g. ``paper_fig2``)."""
    path = PRESETS_DIR / f"{name}.yaml"
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(list_presets())}")
    return load_config(path)


def resolve_config(source: Union[str, Path]) -> ScenarioConfig:
    """Load ``source`` as a file path, else as a preset name."""
    if Path(source).is_file() or str(source) not in list_presets():
        return load_config(source)
    return load_preset(str(source))


def with_override(config: ScenarioConfig, axis: str, value: Any) -> ScenarioConfig:
    """
    Copy of ``config`` with one sweepable scalar replaced.

    Args:
        config: base scenario
        axis: sweep axis name (see ``SWEEP_AXES``)
        value: new value, number (SI) or quantity string
    """
    if axis not in SWEEP_AXES:
        raise SchemaError(
            f"unknown sweep axis {axis!r}; sweepable axes: {', '.join(SWEEP_AXES)}", keys=[axis]
        )
    data = Box(config.to_data(), box_dots=True)
    data[SWEEP_AXES[axis]] = value
    return config_from_mapping(data.to_dict(), source=f"{axis}={value}")
