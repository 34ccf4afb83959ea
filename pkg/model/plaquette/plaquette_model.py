from model.operators.imbalance import CELL_SIGNS
from util.errors import ConfigError
from util.site import Site
from util.state_manager import ImbalanceKind
import logging
import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

# Sites of the four single-excitation states F1..F4 on the N = 4 ladder.
PLAQUETTE_SITES: tuple[Site, ...] = (Site(1, 1), Site(2, 1), Site(1, 2), Site(2, 2))

# Occupied sites of the seven plaquette Fock states F0..F6.
FOCK_SITES: tuple[frozenset, ...] = (
    frozenset(),
    frozenset({Site(1, 1)}),
    frozenset({Site(2, 1)}),
    frozenset({Site(1, 2)}),
    frozenset({Site(2, 2)}),
    frozenset({Site(1, 1), Site(2, 2)}),
    frozenset({Site(2, 1), Site(1, 2)}),
)

# Fock-state pairs connected by the projected sigma-x of each site.
FLIP_PAIRS: dict[Site, tuple[tuple[int, int], ...]] = {
    Site(1, 1): ((0, 1), (4, 5)),
    Site(2, 1): ((0, 2), (3, 6)),
    Site(1, 2): ((0, 3), (2, 6)),
    Site(2, 2): ((0, 4), (1, 5)),
}

INITIAL_STATES: dict[str, int] = {"Z2": 5, "vac": 0}

DEFAULT_CLAIM_TIMES = np.linspace(0.0, 50.0, 1001)

CLAIM_TOLERANCE = 1e-6

def sigma_x(site: Site) -> np.ndarray:
    """
    Projected sigma-x of one plaquette site in the basis F0..F6.

    :rtype: np.ndarray
    """
    matrix = np.zeros((7, 7))
    for a, b in FLIP_PAIRS[site]:
        matrix[a, b] = matrix[b, a] = 1.0
    return matrix

def sigma_z(site: Site) -> np.ndarray:
    return np.array([1.0 if site in occupied else -1.0 for occupied in FOCK_SITES])

class Claim:
    """A printed closed form and its largest deviation from the numeric plaquette."""

    def __init__(self, name: str, deviation: float, tolerance: float = CLAIM_TOLERANCE):
        self.__name: str = name
        self.__deviation: float = float(deviation)
        self.__tolerance: float = tolerance

    def get_name(self) -> str:
        return self.__name

    def get_deviation(self) -> float:
        return self.__deviation

    def holds(self) -> bool:
        return self.__deviation <= self.__tolerance

    def to_dict(self) -> dict:
        return {"name": self.__name, "deviation": self.__deviation, "holds": self.holds()}

    def __repr__(self) -> str:
        return f"Claim({self.__name}: {'holds' if self.holds() else 'fails'}, deviation {self.__deviation:.3e})"

class PlaquetteModel:
    """
    The seven-state single plaquette in units of 2*delta, with the single coupling r = w / (2 delta).
    Its matrix equals -H / (2 delta) of the N = 4 ladder with F1 = (1,1), F2 = (2,1), F3 = (1,2), F4 = (2,2),
    and times are tau = 2 delta t.
    """

    def __init__(self, r: float):
        """
        :param r: Coupling ratio w / (2 delta).
        :type r: float
        :raises ConfigError: If r is not positive.
        """
        if r <= 0:
            raise ConfigError(f"plaquette coupling r must be positive, got {r}")
        self.__r: float = float(r)
        self.__e1: float = float(np.sqrt(1 + 2 * r ** 2))
        self.__e2: float = float(np.sqrt(1 + 6 * r ** 2))
        self.__eigensystem: tuple[np.ndarray, np.ndarray] | None = None

    def get_r(self) -> float:
        return self.__r

    def get_e1(self) -> float:
        return self.__e1

    def get_e2(self) -> float:
        return self.__e2

    def alpha(self) -> float:
        return (self.__e1 - 1) / (2 * self.__r)

    def beta(self) -> float:
        return (self.__e1 + 1) / (2 * self.__r)

    def alpha_prime(self) -> float:
        return (self.__e2 - 1) / (2 * self.__r)

    def beta_prime(self) -> float:
        return (self.__e2 + 1) / (2 * self.__r)

    def printed_norm(self) -> float:
        return float(np.sqrt(2) * np.sqrt(2 + 1 / self.__r ** 2))

    def printed_norm_prime(self) -> float:
        return float(np.sqrt(2) * np.sqrt(1 + 6 / self.__r ** 2))

    def hamiltonian(self) -> np.ndarray:
        """
        The 7x7 plaquette matrix: diagonal (0, -1, +1, -1, +1, 0, 0), coupling r along every projected flip.

        :rtype: np.ndarray
        """
        matrix = np.diag([0.0, -1.0, 1.0, -1.0, 1.0, 0.0, 0.0])
        for site in PLAQUETTE_SITES:
            matrix += self.__r * sigma_x(site)
        return matrix

    def energies(self) -> np.ndarray:
        """
        E0..E6 = 0, 0, 0, -E1, +E1, -E2, +E2.

        :rtype: np.ndarray
        """
        return np.array([0.0, 0.0, 0.0, -self.__e1, self.__e1, -self.__e2, self.__e2])

    def printed_eigenvectors(self) -> np.ndarray:
        """
        The closed-form eigenvectors as columns, each divided by its printed normalization.

        :rtype: np.ndarray
        """
        r, a, b, ap, bp = self.__r, self.alpha(), self.beta(), self.alpha_prime(), self.beta_prime()
        n, n_prime = self.printed_norm(), self.printed_norm_prime()
        columns = [
            np.array([0, 0, -r, r, 0, 0, 1]) / np.sqrt(1 + 2 * r ** 2),
            np.array([-1, 0, r, -r, 0, 1, 0]) / np.sqrt(2 + 2 * r ** 2),
            np.array([-1 / r, -1, 1, -1, 1, 0, 0]) / np.sqrt(4 + 1 / r ** 2),
            np.array([0, b, -a, -b, a, -1, 1]) / n,
            np.array([0, -a, b, a, -b, -1, 1]) / n,
            np.array([2, -bp, -ap, -bp, -ap, 1, 1]) / n_prime,
            np.array([2, ap, bp, ap, bp, 1, 1]) / n_prime,
        ]
        return np.column_stack(columns).astype(np.float64)

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Closed-form eigenpairs with every vector normalized and the three zero modes orthonormalized
        inside the kernel.

        :return: Energies E0..E6 and the eigenvectors as columns.
        :rtype: tuple[np.ndarray, np.ndarray]
        """
        if self.__eigensystem is None:
            vectors = self.printed_eigenvectors()
            vectors = vectors / np.linalg.norm(vectors, axis=0)
            kernel, _ = np.linalg.qr(vectors[:, :3])
            vectors[:, :3] = kernel
            self.__eigensystem = (self.energies(), vectors)
        return self.__eigensystem

    def propagate(self, psi_0: np.ndarray, times) -> np.ndarray:
        """
        Numeric evolution exp(-i P tau) psi_0 through the eigendecomposition of the 7x7 matrix.

        :param psi_0: Initial amplitudes over F0..F6.
        :type psi_0: np.ndarray
        :param times: Plaquette times.
        :return: One row of amplitudes per time.
        :rtype: np.ndarray
        """
        values, vectors = scipy.linalg.eigh(self.hamiltonian())
        coefficients = vectors.T @ np.asarray(psi_0, dtype=np.complex128)
        phases = np.exp(-1j * np.outer(np.atleast_1d(np.asarray(times, dtype=np.float64)), values))
        return (phases * coefficients) @ vectors.T

    def __expand(self, index: int, t: float) -> np.ndarray:
        energies, vectors = self.eigensystem()
        return vectors @ (np.exp(-1j * energies * t) * vectors[index, :])

    def z2_coefficients(self, t: float) -> np.ndarray:
        """
        c0..c6 at time t from c5(0) = 1, by eigen-expansion.

        :rtype: np.ndarray
        """
        return self.__expand(INITIAL_STATES["Z2"], t)

    def vac_coefficients(self, t: float) -> np.ndarray:
        """
        d0..d6 at time t from d0(0) = 1, by eigen-expansion.

        :rtype: np.ndarray
        """
        return self.__expand(INITIAL_STATES["vac"], t)

    def printed_z2_coefficients(self, t: float) -> np.ndarray:
        """
        The printed c0..c6 taken literally; c2 is not printed and is returned as nan.

        :rtype: np.ndarray
        """
        r, e = self.__r, (self.__e1, self.__e2)
        e1e2 = self.__e1 ** 2 * self.__e2 ** 2
        c0 = 2 * r ** 2 * (np.cos(e[1] * t) - 1) / e[1] ** 2
        c1 = r / 2 * sum((1 - np.cos(en * t)) / en ** 2 - 1j * np.sin(en * t) / en for en in e)
        c3 = r / 2 * sum(2 * r ** 2 / e1e2 + (-1) ** n * (np.cos(e[0] * t) / en ** 2 - 1j * np.sin(en * t) / en)
                         for n, en in zip((1, 2), e))
        c5 = 1 - 2 * r ** 2 * (1 + 4 * r ** 2) / e1e2 + r ** 2 * sum(np.cos(en * t) / en ** 2 for en in e)
        c6 = -4 * r ** 2 / e1e2 + r ** 2 * sum((-1) ** n * np.cos(en * t) / en ** 2 for n, en in zip((1, 2), e))
        return np.array([c0, c1, np.nan, c3, -np.conj(c3), c5, c6], dtype=np.complex128)

    def printed_vac_coefficients(self, t: float) -> np.ndarray:
        """
        The printed d0..d6 taken literally.

        :rtype: np.ndarray
        """
        r, e1, e2 = self.__r, self.__e1, self.__e2
        d0 = (e1 ** 2 + r ** 2 * np.cos(e2 * t)) / e2 ** 2
        d1 = r * (np.cos(e2 * t) - 1 - 1j * e2 * np.sin(e2 * t)) / e2 ** 2
        d5 = 2 * r ** 2 * (np.cos(e2 * t) - 1) / e2 ** 2
        return np.array([d0, d1, -np.conj(d1), d1, -np.conj(d1), d5, d5], dtype=np.complex128)

    def steady_imbalances(self) -> dict[ImbalanceKind, float]:
        """
        The printed closed forms of the long-time imbalances.

        :rtype: dict[ImbalanceKind, float]
        """
        r, e1, e2 = self.__r, self.__e1, self.__e2
        return {
            ImbalanceKind.IZ_Z2: 2 * (1 + 5 * r ** 2) / (e1 ** 2 * e2 ** 2),
            ImbalanceKind.IX_Z2: r * (1 + 4 * r ** 2) ** 3 / (e1 ** 4 * e2 ** 4),
            ImbalanceKind.IX_VAC: 2 * r * (1 + 4 * r ** 2) / (1 + 6 * r ** 2) ** 2,
        }

    def imbalance_operator(self, kind: ImbalanceKind) -> np.ndarray:
        """
        The imbalance of the N = 4 ladder (one two-rung cell, divided by L = 2) in the basis F0..F6.

        :rtype: np.ndarray
        """
        operator = np.zeros((7, 7))
        for site in PLAQUETTE_SITES:
            sign = CELL_SIGNS[kind][(site.get_j(), site.get_a())]
            local = np.diag(sigma_z(site)) if kind == ImbalanceKind.IZ_Z2 else sigma_x(site)
            operator += sign * local
        return operator / 2

    def long_time_imbalances(self) -> dict[ImbalanceKind, float]:
        """
        Diagonal-ensemble long-time imbalances of the seven-state dynamics, each from the state it is tailored
        to, with the operator diagonalized inside the zero-mode subspace.

        :rtype: dict[ImbalanceKind, float]
        """
        energies, vectors = self.eigensystem()
        result = {}
        for kind in ImbalanceKind:
            psi_0 = np.zeros(7)
            psi_0[INITIAL_STATES[kind.default_initial_state()]] = 1.0
            operator = self.imbalance_operator(kind)
            kernel = vectors[:, :3]
            values, rotation = scipy.linalg.eigh(kernel.T @ operator @ kernel)
            rotated = kernel @ rotation
            total = float((rotated.T @ psi_0) ** 2 @ values)
            for index in range(3, 7):
                vector = vectors[:, index]
                total += float((vector @ psi_0) ** 2 * (vector @ operator @ vector))
            result[kind] = total
        return result

    def magnetizations(self, t: float, initial: str) -> dict[Site, tuple[float, float]]:
        """
        (M^z, M^x) of the four sites at time t after a quench from Z2 (F5) or vac (F0).

        :param t: Plaquette time.
        :type t: float
        :param initial: "Z2" or "vac".
        :type initial: str
        :raises ConfigError: For another initial state.
        :rtype: dict[Site, tuple[float, float]]
        """
        if initial not in INITIAL_STATES:
            raise ConfigError(f"plaquette quenches start from Z2 or vac, got {initial!r}")
        psi = self.__expand(INITIAL_STATES[initial], t)
        probabilities = np.abs(psi) ** 2
        return {site: (float(probabilities @ sigma_z(site)), float(np.vdot(psi, sigma_x(site) @ psi).real))
                for site in PLAQUETTE_SITES}

    def printed_magnetizations(self, t: float, initial: str) -> dict[Site, tuple[float, float]]:
        """
        The printed magnetization formulas taken literally, (M^z, M^x) per site.

        :rtype: dict[Site, tuple[float, float]]
        """
        r, e1, e2 = self.__r, self.__e1, self.__e2
        if initial == "vac":
            cosine = np.cos(e2 * t) - 1
            longitudinal = -1 / (2 * e2 ** 2) - r ** 2 * cosine / e2 ** 4
            transverse = r * cosine * (e2 ** 2 + 4 * r ** 2 * cosine) / e2 ** 4
            return {Site(1, 1): (longitudinal, -transverse), Site(1, 2): (longitudinal, -transverse),
                    Site(2, 1): (longitudinal, transverse), Site(2, 2): (longitudinal, transverse)}
        e1e2 = e1 ** 2 * e2 ** 2
        even = sum(np.cos(en * t) / en ** 2 for en in (e1, e2))
        odd = sum((-1) ** n * np.cos(en * t) / en ** 2 for n, en in zip((1, 2), (e1, e2)))
        first = even - 2 * (1 + 4 * r ** 2) / e1e2
        x22 = 0.5 * first * (r ** 2 * odd + (1 + 8 * r ** 2 * (1 + r ** 2)) / (2 * e1e2))
        x21 = r ** 3 / 2 * first * (4 * r ** 2 / e1e2 - odd)
        s1, s2, c1, c2 = np.sin(e1 * t), np.sin(e2 * t), np.cos(e1 * t), np.cos(e2 * t)
        z11 = (-0.5 + r ** 2 * (1 + 4 * r ** 2) * (5 + 40 * r ** 2 + 48 * r ** 4) / (4 * e1 ** 4 * e2 ** 4)
               + r ** 2 * (np.cos(2 * e1 * t) / (4 * e1 ** 4)
                           + c1 / (2 * e1 ** 4 * e2 ** 4) * (2 * e2 ** 2 * (1 + 8 * r ** 2 * (1 + r ** 2))
                                                              + e1e2 * (1 + 4 * r ** 2) * c2)
                           + (4 * (e1e2 - 4 * r ** 2) * c2 + r ** 2 * e1 ** 2 * np.cos(2 * e2 * t)
                              + 2 * e1 * e2 ** 3 * s1 * s2) / (4 * e1 ** 2 * e2 ** 4)))
        z12 = (-0.5 + r ** 2 * (1 + 12 * r ** 2 + 56 * r ** 4 + 96 * r ** 6) / (2 * e1 ** 4 * e2 ** 4)
               + r ** 2 / (4 * e1 ** 4 * e2 ** 4) * (e2 ** 4 * np.cos(2 * e1 * t)
                                                     - 2 * (e1e2 + r ** 2 * e2 ** 2) * (4 * r ** 2 + e1 ** 2 * c2) * c1
                                                     + e1 ** 2 * (8 * r ** 2 * (e1 ** 2 + r ** 2) * c2
                                                                  - r ** 2 * e1 ** 2 * np.cos(2 * e2 * t)
                                                                  - 2 * e1 * e2 ** 3 * s1 * s2)))
        return {Site(1, 1): (z11, -x22), Site(2, 2): (z11, x22), Site(2, 1): (z12, x21), Site(1, 2): (z12, -x21)}

    def claim_report(self, times=None) -> list[Claim]:
        """
        Every printed closed form with its largest deviation from the numeric plaquette over a time grid.
        Failing claims are logged at warning level.

        :param times: Plaquette times, 0..50 by default.
        :rtype: list[Claim]
        """
        times = DEFAULT_CLAIM_TIMES if times is None else np.asarray(times, dtype=np.float64)
        printed = self.printed_eigenvectors()
        claims = [
            Claim("eigenvector residual", np.abs(self.hamiltonian() @ printed - printed * self.energies()).max()),
            Claim("eigenvector norms", np.abs(np.linalg.norm(printed, axis=0) - 1).max()),
            Claim("zero modes psi0.psi1 orthogonal", abs(printed[:, 0] @ printed[:, 1])),
            Claim("alpha*beta = 1/2", abs(self.alpha() * self.beta() - 0.5)),
        ]
        oracle_z2 = self.propagate(np.eye(7)[INITIAL_STATES["Z2"]], times)
        oracle_vac = self.propagate(np.eye(7)[INITIAL_STATES["vac"]], times)
        printed_z2 = np.array([self.printed_z2_coefficients(t) for t in times])
        printed_vac = np.array([self.printed_vac_coefficients(t) for t in times])
        for index in (0, 1, 3, 4, 5, 6):
            claims.append(Claim(f"c{index}(t)", np.abs(printed_z2[:, index] - oracle_z2[:, index]).max()))
        for index in range(7):
            claims.append(Claim(f"d{index}(t)", np.abs(printed_vac[:, index] - oracle_vac[:, index]).max()))
        steady, numeric = self.steady_imbalances(), self.long_time_imbalances()
        for kind in ImbalanceKind:
            claims.append(Claim(f"steady {kind.value}", abs(steady[kind] - numeric[kind])))
        for initial in INITIAL_STATES:
            deviation_z, deviation_x = 0.0, 0.0
            for t in times:
                exact, claimed = self.magnetizations(t, initial), self.printed_magnetizations(t, initial)
                for site in PLAQUETTE_SITES:
                    deviation_z = max(deviation_z, abs(exact[site][0] - claimed[site][0]))
                    deviation_x = max(deviation_x, abs(exact[site][1] - claimed[site][1]))
            claims.append(Claim(f"Mz from {initial}", deviation_z))
            claims.append(Claim(f"Mx from {initial}", deviation_x))
        for claim in claims:
            if claim.holds():
                logger.debug("%s", claim)
            else:
                logger.warning("r=%g: printed %s deviates by %.3e", self.__r, claim.get_name(), claim.get_deviation())
        return claims

    def __repr__(self) -> str:
        return f"PlaquetteModel(r={self.__r})"

def plaquette_hamiltonian(r: float) -> np.ndarray:
    return PlaquetteModel(r).hamiltonian()

def plaquette_eigensystem(r: float) -> tuple[np.ndarray, np.ndarray]:
    return PlaquetteModel(r).eigensystem()

def z2_coefficients(r: float, t: float) -> np.ndarray:
    return PlaquetteModel(r).z2_coefficients(t)

def vac_coefficients(r: float, t: float) -> np.ndarray:
    return PlaquetteModel(r).vac_coefficients(t)

def steady_imbalances(r: float) -> dict[ImbalanceKind, float]:
    return PlaquetteModel(r).steady_imbalances()

def plaquette_magnetizations(r: float, t: float, initial: str) -> dict[Site, tuple[float, float]]:
    return PlaquetteModel(r).magnetizations(t, initial)
