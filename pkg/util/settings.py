from util.errors import ConfigError
from util.state_manager import Command, ImbalanceKind, Method
import hashlib, json, os
import numpy as np

VERSION = "0.3.0"
CACHE_ENV = "SCARLADDER_CACHE"

def parse_delta_grid(text: str) -> list[float]:
    """
    Parse a detuning grid written ``start:stop:step`` (stop included within half a step) or a single number.

    :param text: The grid.
    :type text: str
    :return: The grid values, rounded to 12 decimals.
    :rtype: list[float]
    :raises ConfigError: On malformed input or a non-positive step.
    """
    parts = str(text).split(":")
    try:
        numbers = [float(part) for part in parts]
    except ValueError:
        raise ConfigError(f"cannot parse grid {text!r}, expected start:stop:step")
    if len(numbers) == 1:
        return [round(numbers[0], 12)]
    if len(numbers) != 3:
        raise ConfigError(f"cannot parse grid {text!r}, expected start:stop:step")
    start, stop, step = numbers
    if step <= 0:
        raise ConfigError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ConfigError(f"grid stop {stop} lies below start {start}")
    count = int(np.floor((stop - start) / step + 0.5)) + 1
    values = start + step * np.arange(count)
    return [round(float(value), 12) for value in values]

class Settings:
    """
    Create a new Settings object with default values. It stores one run of the command line and resolves
    flags, a JSON config file and defaults, in that order of precedence.

    :ivar command: The command to run.
    :vartype command: Command
    :ivar legs: 1 for the chain, 2 for the ladder.
    :vartype legs: int
    :ivar L: Number of rungs.
    :vartype L: int
    :ivar delta: Detuning grid, ``start:stop:step`` or a number.
    :vartype delta: str
    :ivar init: Named initial states.
    :vartype init: list[str]
    :ivar method: Time propagator.
    :vartype method: Method
    """
    POSITIVE = ("t_max", "dt", "stride", "threads", "cap", "tol_zero", "drift_budget", "prominence", "w", "min_contrast")

    def __init__(self) -> None:
        """Create a new Settings object with default values."""
        self.command: Command = Command.DIMS
        self.legs: int = 2
        self.L: int = 4
        self.delta: str = "1.0"
        self.w: float = 1.0
        self.init: list[str] = ["Z2"]
        self.imbalances: list[ImbalanceKind] = list(ImbalanceKind)
        self.t_max: float = 100.0
        self.dt: float = 0.005
        self.stride: float = 0.05
        self.method: Method = Method.RK4
        self.k: int | None = None
        self.overlaps: list[str] = []
        self.entanglement: bool = False
        self.record_imbalances: bool = False
        self.out: str = "out"
        self.cache: str | None = os.environ.get(CACHE_ENV)
        self.threads: int = 1
        self.cap: int = 40000
        self.tol_zero: float = 1e-8
        self.drift_budget: float = 1e-6
        self.prominence: float = 0.05
        self.min_contrast: float = 5.0
        self.members: int | None = None
        self.r_grid: str = "0.05:2:0.05"
        self.export_basis: bool = False
        self.dump_operator: bool = False
        self.verbose: int = 0

    def fields(self) -> list[str]:
        return sorted(vars(self))

    def update(self, values: dict) -> 'Settings':
        """
        Overwrite settings from a mapping, converting enum names.

        :param values: Setting names and values.
        :type values: dict
        :return: self
        :rtype: Settings
        :raises ConfigError: On an unknown name or an unconvertible value.
        """
        for name, value in values.items():
            if name not in vars(self):
                raise ConfigError(f"unknown setting {name!r}")
            setattr(self, name, self.__convert(name, value))
        return self

    def __convert(self, name: str, value):
        try:
            if name == "command":
                return Command(value) if not isinstance(value, Command) else value
            if name == "method":
                return Method(value) if not isinstance(value, Method) else value
            if name == "imbalances":
                return [ImbalanceKind(v) if not isinstance(v, ImbalanceKind) else v for v in value]
            if name in ("init", "overlaps") and isinstance(value, str):
                return [part for part in value.split(",") if part]
            if name == "delta":
                return str(value)
        except ValueError as error:
            raise ConfigError(f"invalid value for {name}: {value!r}") from error
        return value

    @staticmethod
    def from_json(path: str) -> dict:
        """
        Read a JSON config file.

        :param path: The file.
        :type path: str
        :return: The mapping it contains.
        :rtype: dict
        :raises ConfigError: If the file cannot be read or is not a JSON object.
        """
        try:
            with open(path, "r", encoding="utf-8") as handle:
                values = json.load(handle)
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigError(f"cannot read config {path}: {error}") from error
        if not isinstance(values, dict):
            raise ConfigError(f"config {path} must contain a JSON object")
        return values

    @staticmethod
    def resolve(flags: dict, config_path: str | None = None) -> 'Settings':
        """
        Defaults, then the JSON config, then the flags that were given (value not None).

        :param flags: Parsed command line flags.
        :type flags: dict
        :param config_path: Optional JSON config file.
        :type config_path: str | None
        :return: The validated settings.
        :rtype: Settings
        """
        settings = Settings()
        if config_path:
            settings.update(Settings.from_json(config_path))
        settings.update({name: value for name, value in flags.items() if value is not None})
        settings.validate()
        return settings

    def validate(self) -> None:
        """
        :raises ConfigError: If a numeric field is not positive or a grid is malformed.
        """
        for name in Settings.POSITIVE:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or value <= 0:
                raise ConfigError(f"{name} must be positive, got {value!r}")
        if self.legs not in (1, 2) or not isinstance(self.L, int) or self.L < 2:
            raise ConfigError(f"invalid geometry legs={self.legs} L={self.L}")
        if self.stride < self.dt:
            raise ConfigError(f"output stride {self.stride} is smaller than dt {self.dt}")
        if self.k is not None and not 0 <= self.k < max(self.L // 2, 1):
            raise ConfigError(f"momentum k={self.k} outside 0..{self.L // 2 - 1}")
        if any(value < 0 for value in self.deltas()):
            raise ConfigError("detuning must be non-negative")
        parse_delta_grid(self.r_grid)
        if not self.init:
            raise ConfigError("at least one initial state is required")

    def deltas(self) -> list[float]:
        return parse_delta_grid(self.delta)

    def r_values(self) -> list[float]:
        return parse_delta_grid(self.r_grid)

    def to_dict(self) -> dict:
        """
        Canonical JSON-ready form of the settings, without the output location.

        :rtype: dict
        """
        result = {}
        for name in self.fields():
            if name in ("out", "cache", "verbose"):
                continue
            value = getattr(self, name)
            if isinstance(value, (Command, Method)):
                value = value.value
            elif name == "imbalances":
                value = [kind.value for kind in value]
            result[name] = value
        return result

    def config_hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

RunConfig = Settings
