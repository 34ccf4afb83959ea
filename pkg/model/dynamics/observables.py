from model.entanglement.bipartition import Bipartition
from model.entanglement.entropy import entanglement_entropy
from model.hilbert.basis import Basis
from model.operators.local import local_sigma_x_tilde
from model.operators.sparse_operator import SparseOperator
from model.spectra.shannon import shannon_entropy
from util.site import Site
from util.state_manager import Observable
import numpy as np

def measure_fidelity(psi_t: np.ndarray, psi_0: np.ndarray) -> float:
    """
    F(t) = |<psi_0|psi_t>|^2.

    :rtype: float
    """
    return float(abs(np.vdot(psi_0, psi_t)) ** 2)

def measure_shannon(psi_t: np.ndarray) -> float:
    return float(shannon_entropy(psi_t))

def measure_overlap(psi_t: np.ndarray, phi: np.ndarray) -> float:
    return float(abs(np.vdot(phi, psi_t)) ** 2)

def measure_mz_density(psi_t: np.ndarray, basis: Basis) -> float:
    """
    (1/N) sum over sites of <sigma-z>.

    :rtype: float
    """
    n_sites = basis.get_geometry().get_size()
    magnetization = 2 * basis.excitation_counts() - n_sites
    return float(np.abs(psi_t) ** 2 @ magnetization / n_sites)

def measure_site_magnetizations(psi_t: np.ndarray, basis: Basis) -> dict[Site, tuple[float, float]]:
    """
    (M^z, M^x) of every site, M^x taken with the projected sigma-x.

    :rtype: dict[Site, tuple[float, float]]
    """
    probabilities = np.abs(psi_t) ** 2
    sigma_z = np.where(basis.occupations(), 1.0, -1.0)
    result = {}
    for site in basis.get_geometry().sites():
        bit = basis.get_geometry().bit(site)
        transverse = local_sigma_x_tilde(basis, site).expectation(psi_t)
        result[site] = (float(probabilities @ sigma_z[:, bit]), transverse)
    return result

class ObservableSet:
    """
    The observables recorded along one quench, with their operators built once. Columns come out in the order
    fidelity, shannon, mz_density, overlap_<name>..., mz_<j>_<a>..., mx_<j>_<a>..., svn_par, svn_perp, then
    one column per extra operator expectation.
    """

    def __init__(self, basis: Basis, psi_0: np.ndarray, observables: list[Observable],
                 overlaps: dict[str, np.ndarray] | None = None, bipartitions: dict[str, Bipartition] | None = None,
                 operators: dict[str, SparseOperator] | None = None):
        """
        :param basis: The full basis the states live on.
        :type basis: Basis
        :param psi_0: Initial state, reference of the fidelity.
        :type psi_0: np.ndarray
        :param observables: What to record.
        :type observables: list[Observable]
        :param overlaps: Reference states by name.
        :type overlaps: dict[str, np.ndarray] | None
        :param bipartitions: Cuts by column suffix ("par", "perp").
        :type bipartitions: dict[str, Bipartition] | None
        :param operators: Operators whose expectation is recorded, by column name.
        :type operators: dict[str, SparseOperator] | None
        """
        self.__basis: Basis = basis
        self.__psi_0: np.ndarray = psi_0
        self.__observables: list[Observable] = observables
        self.__overlaps: dict[str, np.ndarray] = dict(overlaps or {})
        self.__bipartitions: dict[str, Bipartition] = dict(bipartitions or {})
        self.__operators: dict[str, SparseOperator] = dict(operators or {})
        self.__sites: list[Site] = basis.get_geometry().sites()
        self.__sigma_z: np.ndarray = np.where(basis.occupations(), 1.0, -1.0)
        self.__sigma_x = [local_sigma_x_tilde(basis, site).get_matrix() for site in self.__sites] \
            if Observable.SITES in observables else []
        self.__magnetization: np.ndarray = self.__sigma_z.sum(axis=1) / len(self.__sites)

    def get_basis(self) -> Basis:
        return self.__basis

    def column_names(self) -> list[str]:
        names = []
        for observable in (Observable.FIDELITY, Observable.SHANNON, Observable.MZ_DENSITY):
            if observable in self.__observables:
                names.append(observable.value)
        names.extend(f"overlap_{name}" for name in self.__overlaps)
        if Observable.SITES in self.__observables:
            names.extend(f"mz_{site.label()}" for site in self.__sites)
            names.extend(f"mx_{site.label()}" for site in self.__sites)
        names.extend(f"svn_{suffix}" for suffix in self.__bipartitions)
        names.extend(self.__operators)
        return names

    def measure(self, psi_t: np.ndarray) -> dict[str, float]:
        """
        All recorded values for one state, keyed by column name.

        :rtype: dict[str, float]
        """
        probabilities = np.abs(psi_t) ** 2
        values = {}
        if Observable.FIDELITY in self.__observables:
            values["fidelity"] = measure_fidelity(psi_t, self.__psi_0)
        if Observable.SHANNON in self.__observables:
            values["shannon"] = measure_shannon(psi_t)
        if Observable.MZ_DENSITY in self.__observables:
            values["mz_density"] = float(probabilities @ self.__magnetization)
        for name, phi in self.__overlaps.items():
            values[f"overlap_{name}"] = measure_overlap(psi_t, phi)
        if Observable.SITES in self.__observables:
            longitudinal = probabilities @ self.__sigma_z
            for site, value in zip(self.__sites, longitudinal):
                values[f"mz_{site.label()}"] = float(value)
            for site, matrix in zip(self.__sites, self.__sigma_x):
                values[f"mx_{site.label()}"] = float(np.vdot(psi_t, matrix @ psi_t).real)
        for suffix, bipartition in self.__bipartitions.items():
            values[f"svn_{suffix}"] = entanglement_entropy(psi_t, bipartition)
        for name, operator in self.__operators.items():
            values[name] = operator.expectation(psi_t)
        return values

    def __call__(self, t: float, psi_t: np.ndarray) -> dict[str, float]:
        return self.measure(psi_t)
