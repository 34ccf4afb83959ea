import numpy as np

class QuenchTrace:
    """Time series recorded along a quench: one row per output time, named columns, and integrator diagnostics."""

    def __init__(self) -> None:
        self.__times: list[float] = []
        self.__columns: dict[str, list[float]] = {}
        self.__norms: list[float] = []
        self.__energies: list[float] = []
        self.__diagnostics: dict = {}

    def add_row(self, t: float, values: dict[str, float], norm: float = 1.0, energy: float = 0.0) -> None:
        """
        Append one sample. The first row fixes the column set and order.

        :param t: Time.
        :type t: float
        :param values: Observable values by column name.
        :type values: dict[str, float]
        :param norm: State norm at t.
        :type norm: float
        :param energy: Energy expectation at t.
        :type energy: float
        :raises ValueError: If the columns differ from the first row.
        """
        if not self.__times:
            self.__columns = {name: [] for name in values}
        elif values.keys() != self.__columns.keys():
            raise ValueError("trace rows must share the same columns")
        self.__times.append(float(t))
        for name, value in values.items():
            self.__columns[name].append(float(value))
        self.__norms.append(float(norm))
        self.__energies.append(float(energy))

    def get_times(self) -> np.ndarray:
        return np.array(self.__times)

    def column_names(self) -> list[str]:
        return list(self.__columns)

    def has(self, name: str) -> bool:
        return name in self.__columns

    def get_series(self, name: str) -> np.ndarray:
        """
        :raises KeyError: If the observable was not recorded.
        """
        if name not in self.__columns:
            raise KeyError(f"observable {name!r} not in trace")
        return np.array(self.__columns[name])

    def get_norms(self) -> np.ndarray:
        return np.array(self.__norms)

    def get_energies(self) -> np.ndarray:
        return np.array(self.__energies)

    def row_count(self) -> int:
        return len(self.__times)

    def rows(self) -> list[list[float]]:
        return [[t] + [self.__columns[name][i] for name in self.__columns] for i, t in enumerate(self.__times)]

    def max_norm_drift(self) -> float:
        return float(np.abs(self.get_norms() - 1.0).max()) if self.__norms else 0.0

    def max_energy_drift(self) -> float:
        energies = self.get_energies()
        return float(np.abs(energies - energies[0]).max()) if len(energies) else 0.0

    def set_diagnostic(self, name: str, value) -> None:
        self.__diagnostics[name] = value

    def get_diagnostics(self) -> dict:
        diagnostics = dict(self.__diagnostics)
        diagnostics["max_norm_drift"] = self.max_norm_drift()
        diagnostics["final_norm_deviation"] = abs(self.__norms[-1] - 1.0) if self.__norms else 0.0
        diagnostics["max_energy_drift"] = self.max_energy_drift()
        diagnostics["rows"] = self.row_count()
        return diagnostics

    def __repr__(self) -> str:
        return f"QuenchTrace(rows={self.row_count()}, columns={self.column_names()})"
