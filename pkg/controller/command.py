from controller.eigen_cache import EigenCache
from controller.scheduler import Scheduler
from model.dynamics.quench_runner import run_quench
from model.dynamics.quench_spec import QuenchSpec
from model.dynamics.quench_trace import QuenchTrace
from model.dynamics.revivals import overlap_spectrum, revival_period, revival_report, scar_tower_spacing
from model.ensemble.diagonal_ensemble import diagonal_ensemble, time_average_check
from model.ensemble.sweep import SweepRow, imbalance_sweep
from model.ensemble.thermal import thermal_beta0
from model.hilbert.basis import Basis, chain_dimension_formula, dimension_formula, enumerate_basis
from model.hilbert.momentum_sector import build_sector
from model.hilbert.named_states import state_vector
from model.operators.hamiltonian import build_hamiltonian, build_hx, build_hz
from model.operators.imbalance import build_imbalance
from model.operators.model_params import ModelParams
from model.operators.symmetry import build_symmetry
from model.plaquette.plaquette_model import INITIAL_STATES, PLAQUETTE_SITES, PlaquetteModel
from model.spectra.shannon import chirality_residual, shannon_entropy, shannon_per_eigenstate
from model.spectra.zero_modes import simultaneous_zero_modes, zero_subspace
from util.geometry import Geometry
from util.settings import Settings
from util.state_manager import Command as CommandName, ImbalanceKind, Method, SymmetryKind
from view.base_view import Artifact, BaseView
from abc import ABC, abstractmethod
import logging
import numpy as np

logger = logging.getLogger(__name__)

def delta_suffix(delta: float, many: bool) -> str:
    """File-name suffix for one detuning of a grid, empty for a single detuning."""
    return f"_delta{delta:g}" if many else ""

class Command(ABC):
    """One batch command of the command line."""

    def __init__(self, settings: Settings) -> None:
        """
        :param settings: The resolved settings of the run.
        :type settings: Settings
        """
        self.__settings: Settings = settings
        self.__cache: EigenCache = EigenCache(settings.cache, settings.cap, settings.tol_zero)
        self.__scheduler: Scheduler = Scheduler(settings.threads)

    def get_settings(self) -> Settings:
        return self.__settings

    def get_cache(self) -> EigenCache:
        return self.__cache

    def get_scheduler(self) -> Scheduler:
        return self.__scheduler

    def geometry(self) -> Geometry:
        return Geometry(self.__settings.legs, self.__settings.L)

    def metadata(self, geometry: Geometry, params: ModelParams) -> dict:
        return {"L": geometry.get_L(), "legs": geometry.get_legs(), **params.to_dict()}

    @staticmethod
    def publish(views: list[BaseView], artifact: Artifact) -> None:
        for view in views:
            view.show(artifact)

    @staticmethod
    def say(views: list[BaseView], text: str) -> None:
        logger.info("%s", text)
        for view in views:
            view.message(text)

    def export(self, basis: Basis, views: list[BaseView]) -> None:
        """
        Write the basis listing and the Hamiltonian dump when asked for.
        """
        settings = self.__settings
        size = basis.get_geometry().get_size()
        if settings.export_basis:
            self.publish(views, Artifact(f"basis_N{size}.txt", lines=basis.export_lines(),
                                         diagnostics={"dimension": basis.get_dimension()}))
        if settings.dump_operator:
            params = ModelParams(settings.deltas()[0], settings.w)
            hamiltonian = build_hamiltonian(basis, params)
            self.publish(views, Artifact(f"hamiltonian_N{size}.txt", lines=hamiltonian.dump_lines(),
                                         diagnostics={"nnz": hamiltonian.nnz(), **params.to_dict()}))

    def quench_spec(self, geometry: Geometry, delta: float, initial: str, method: Method | None = None,
                    entanglement: bool | None = None) -> QuenchSpec:
        settings = self.__settings
        return QuenchSpec(geometry, delta, initial, settings.t_max, settings.dt, settings.stride,
                          method or settings.method, settings.w, overlaps=settings.overlaps, sector_k=settings.k,
                          drift_budget=settings.drift_budget,
                          entanglement=settings.entanglement if entanglement is None else entanglement,
                          imbalances=settings.imbalances if settings.record_imbalances and geometry.is_ladder()
                          else None)

    @staticmethod
    def trace_artifact(name: str, trace: QuenchTrace, spec: QuenchSpec, extra: dict | None = None) -> Artifact:
        diagnostics = {"quench": spec.to_dict(), **trace.get_diagnostics(), **(extra or {})}
        return Artifact(name, ["t"] + trace.column_names(), trace.rows(), diagnostics=diagnostics)

    @abstractmethod
    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        """
        Run the command and hand every output to the views.

        :param settings: The resolved settings.
        :type settings: Settings
        :param views: Output views.
        :type views: list[BaseView]
        """
        pass

class DimsCommand(Command):
    """Dimension of the constrained space, of the zero-momentum sector and the closed-form check."""

    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        geometry = self.geometry()
        basis = enumerate_basis(geometry)
        dimension = basis.get_dimension()
        expected = dimension_formula(geometry.get_L()) if geometry.is_ladder() else chain_dimension_formula(geometry.get_L())
        if dimension != expected:
            logger.warning("enumerated dimension %d differs from the closed form %d", dimension, expected)
        text = f"N={geometry.get_size()} dim={dimension}"
        if geometry.get_L() % 2 == 0:
            text += f" k0={build_sector(basis, 0).dimension()}"
        self.say(views, text)
        self.export(basis, views)

class SpectrumCommand(Command):
    """Full spectrum with the Shannon entropy of every eigenstate and the symmetry audits."""

    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        geometry = self.geometry()
        basis = enumerate_basis(geometry)
        deltas = settings.deltas()
        chirality = build_symmetry(basis, SymmetryKind.C1) if geometry.get_L() % 2 == 0 else None
        for delta in deltas:
            params = ModelParams(delta, settings.w)
            hamiltonian = build_hamiltonian(basis, params)
            system = self.get_cache()(hamiltonian, self.metadata(geometry, params))
            zero = np.abs(system.get_eigenvalues()) < system.get_tol_zero()
            entropies = shannon_per_eigenstate(system)
            rows = [[index, energy, entropy, int(flag)]
                    for index, (energy, entropy, flag) in enumerate(zip(system.get_eigenvalues(), entropies, zero))]
            diagnostics = {"dimension": system.get_dimension(), "zero_modes": int(zero.sum()),
                           "largest_zero": system.largest_zero(), "smallest_nonzero": system.smallest_nonzero(),
                           "residual": system.residual(hamiltonian), "pairing_defect": system.pairing_defect(),
                           "orthonormality_defect": system.orthonormality_defect(), **params.to_dict()}
            if chirality is not None:
                diagnostics["chirality_residual"] = chirality_residual(system, hamiltonian, chirality)
            self.publish(views, Artifact(f"spectrum{delta_suffix(delta, len(deltas) > 1)}.csv",
                                         ["index", "energy", "shannon", "zero_mode"], rows, diagnostics=diagnostics))
            self.say(views, f"N={geometry.get_size()} delta={delta:g} dim={system.get_dimension()} "
                            f"zero modes={int(zero.sum())}")
        self.export(basis, views)

class QuenchCommand(Command):
    """Quench from every initial state at every detuning; one trace file per cell."""
    prefix: str = "trace"
    entanglement: bool | None = None

    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        geometry = self.geometry()
        basis = enumerate_basis(geometry)
        deltas = settings.deltas()
        cells = [(delta, initial) for delta in deltas for initial in settings.init]

        def run_cell(cell: tuple[float, str]) -> tuple[QuenchSpec, QuenchTrace]:
            spec = self.quench_spec(geometry, cell[0], cell[1], entanglement=self.entanglement)
            return spec, run_quench(geometry, spec, basis, eigensolver=self.get_cache())

        for (delta, initial), (spec, trace) in zip(cells, self.get_scheduler().map(run_cell, cells)):
            partner = "overlap_Z2bar" if initial == "Z2" else None
            report = revival_report(trace, settings.prominence, partner)
            extra = {"revivals": report.to_dict()}
            if spec.get_imbalances() and spec.get_sector_k() is None:
                extra["time_average"] = self.time_averages(basis, spec, trace)
            name = f"{self.prefix}_{initial}{delta_suffix(delta, len(deltas) > 1)}.csv"
            self.publish(views, self.trace_artifact(name, trace, spec, extra))
            t_star = report.get_fidelity().get_t_star()
            self.say(views, f"N={geometry.get_size()} delta={delta:g} init={initial} rows={trace.row_count()} "
                            f"t*={'none' if t_star is None else format(t_star, '.4g')}")

    def time_averages(self, basis: Basis, spec: QuenchSpec, trace: QuenchTrace) -> dict:
        """
        Running mean of every recorded imbalance over the second half of the trace against its diagonal ensemble.

        :rtype: dict
        """
        params = ModelParams(spec.get_delta(), spec.get_w())
        system = self.get_cache()(build_hamiltonian(basis, params), self.metadata(basis.get_geometry(), params))
        psi_0 = state_vector(basis, spec.get_initial())
        reports = {}
        for kind in spec.get_imbalances():
            result = diagonal_ensemble(system, psi_0, build_imbalance(basis, kind))
            reports[kind.value] = {**time_average_check(trace, kind.value, result).to_dict(), **result.to_dict()}
        return reports

class EntanglementCommand(QuenchCommand):
    """Quench traces with the bipartite entanglement entropy columns."""
    prefix = "entanglement"
    entanglement = True

class ImbalanceSweepCommand(Command):
    """Long-time imbalances over the detuning grid, each imbalance paired with the state it is tailored to."""

    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        geometry = self.geometry()
        basis = enumerate_basis(geometry)
        rows = imbalance_sweep(geometry, settings.deltas(), settings.imbalances, map_fn=self.get_scheduler().map,
                               eigensolver=self.get_cache(), w=settings.w)
        thermal = {kind.value: thermal_beta0(build_imbalance(basis, kind), basis) for kind in settings.imbalances}
        diagnostics = {"thermal_beta0": thermal, "cache_hits": self.get_cache().get_hits()}
        self.publish(views, Artifact("sweep.csv", SweepRow.HEADER, [row.to_list() for row in rows],
                                     diagnostics=diagnostics))
        self.say(views, f"N={geometry.get_size()} sweep rows={len(rows)}")

class ZeroModesCommand(Command):
    """Zero modes of H and the simultaneous zero modes of its two terms, with their Shannon entropies."""

    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        geometry = self.geometry()
        basis = enumerate_basis(geometry)
        delta = settings.deltas()[0]
        params = ModelParams(delta, settings.w)
        system = self.get_cache()(build_hamiltonian(basis, params), self.metadata(geometry, params))
        zero = zero_subspace(system)
        # The kernel of Hz does not depend on the detuning as long as it is nonzero.
        simultaneous = simultaneous_zero_modes(build_hz(basis, delta if delta > 0 else 1.0), build_hx(basis, settings.w))
        rows = [["zero", index, value] for index, value in enumerate(np.atleast_1d(shannon_entropy(zero.get_vectors())))]
        rows.extend(["simultaneous", index, value]
                    for index, value in enumerate(np.atleast_1d(shannon_entropy(simultaneous.get_vectors()))))
        diagnostics = {"zero_modes": zero.get_count(), "simultaneous_zero_modes": simultaneous.get_count(),
                       "largest_zero": system.largest_zero(), "smallest_nonzero": system.smallest_nonzero(),
                       **params.to_dict()}
        self.publish(views, Artifact("zero_modes.csv", ["set", "index", "shannon"], rows, diagnostics=diagnostics))
        self.say(views, f"N={geometry.get_size()} zero modes={zero.get_count()} "
                        f"simultaneous={simultaneous.get_count()}")

class PlaquetteCommand(Command):
    """The single plaquette: long-time imbalances over the r grid, amplitudes and magnetizations in time."""

    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        rows, worst = [], {}
        for r in settings.r_values():
            model = PlaquetteModel(r)
            numeric = model.long_time_imbalances()
            rows.append([r] + [numeric[kind] for kind in ImbalanceKind])
            for kind, value in model.steady_imbalances().items():
                worst[kind.value] = max(worst.get(kind.value, 0.0), abs(value - numeric[kind]))
        self.publish(views, Artifact("plaquette_imbalances.csv", ["r", "iz_z2", "ix_z2", "ix_vac"], rows,
                                     diagnostics={"printed_closed_form_deviation": worst}))
        params = ModelParams(settings.deltas()[0], settings.w)
        model = PlaquetteModel(params.plaquette_ratio())
        times = np.round(np.arange(int(np.floor(settings.t_max / settings.stride + 1e-9)) + 1) * settings.stride, 12)
        claims = [claim.to_dict() for claim in model.claim_report()]
        diagnostics = {"r": model.get_r(), "time": "plaquette time tau = 2 delta t", "claims": claims}
        for initial in INITIAL_STATES:
            amplitudes = model.propagate(np.eye(7)[INITIAL_STATES[initial]], times)
            probability_rows = [[t] + list(np.abs(row) ** 2) for t, row in zip(times, amplitudes)]
            self.publish(views, Artifact(f"plaquette_{initial.lower()}.csv", ["t"] + [f"c{i}" for i in range(7)],
                                         probability_rows, diagnostics=diagnostics))
            header = ["t"] + [f"{axis}_{site.get_j()}{site.get_a()}" for site in PLAQUETTE_SITES for axis in ("mz", "mx")]
            magnetization_rows = []
            for t in times:
                values = model.magnetizations(t, initial)
                magnetization_rows.append([t] + [value for site in PLAQUETTE_SITES for value in values[site]])
            self.publish(views, Artifact(f"plaquette_mag_{initial.lower()}.csv", header, magnetization_rows,
                                         diagnostics={"r": model.get_r()}))
        failing = [claim["name"] for claim in claims if not claim["holds"]]
        self.say(views, f"plaquette r={model.get_r():g}: {len(claims) - len(failing)}/{len(claims)} printed forms hold")

class TowersCommand(Command):
    """Eigenstate overlaps of each initial state, the tower spacing and its comparison with the revival period."""

    def run_command(self, settings: Settings, views: list[BaseView]) -> None:
        geometry = self.geometry()
        basis = enumerate_basis(geometry)
        delta = settings.deltas()[0]
        params = ModelParams(delta, settings.w)
        hamiltonian = build_hamiltonian(basis, params)
        system = self.get_cache()(hamiltonian, self.metadata(geometry, params))
        for initial in settings.init:
            psi_0 = state_vector(basis, initial)
            tower = scar_tower_spacing(system, psi_0, settings.members, min_contrast=settings.min_contrast,
                                       tol_cluster=1e-9)
            spectrum = overlap_spectrum(system, psi_0)
            members = tower.get_energies()
            rows = [[energy, weight, int(bool(np.any(np.abs(members - energy) < 1e-8)))] for energy, weight in spectrum]
            spec = self.quench_spec(geometry, delta, initial, method=Method.EIGENBASIS, entanglement=False)
            trace = run_quench(geometry, spec, basis, system)
            t_star = revival_period(trace, "fidelity", settings.prominence).get_t_star()
            estimate = tower.revival_estimate()
            diagnostics = {"tower": tower.to_dict(), "t_star": t_star, "revival_estimate": estimate,
                           "relative_difference": abs(t_star - estimate) / estimate
                           if t_star is not None and estimate else None, **params.to_dict()}
            self.publish(views, Artifact(f"overlaps_{initial}.csv", ["energy", "weight", "tower"], rows,
                                         diagnostics=diagnostics))
            self.say(views, f"init={initial} dE={'none' if estimate is None else format(tower.get_delta_e(), '.4g')} "
                            f"2pi/dE={'none' if estimate is None else format(estimate, '.4g')} "
                            f"t*={'none' if t_star is None else format(t_star, '.4g')}")

class CommandManager:
    """Factory of the commands."""

    @staticmethod
    def command_factory(name: CommandName, settings: Settings) -> Command:
        """
        Build the command of the given name.

        :param name: The command.
        :type name: Command
        :param settings: The resolved settings.
        :type settings: Settings
        :rtype: Command
        """
        if name == CommandName.DIMS:
            return DimsCommand(settings)
        elif name == CommandName.SPECTRUM:
            return SpectrumCommand(settings)
        elif name == CommandName.QUENCH:
            return QuenchCommand(settings)
        elif name == CommandName.IMBALANCE_SWEEP:
            return ImbalanceSweepCommand(settings)
        elif name == CommandName.ZERO_MODES:
            return ZeroModesCommand(settings)
        elif name == CommandName.PLAQUETTE:
            return PlaquetteCommand(settings)
        elif name == CommandName.ENTANGLEMENT:
            return EntanglementCommand(settings)
        elif name == CommandName.TOWERS:
            return TowersCommand(settings)
        raise ValueError(f"unknown command {name}")
