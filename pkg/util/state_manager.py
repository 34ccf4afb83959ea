from enum import Enum

class Command(Enum):
    """
    Enum representing the batch commands understood by the run controller.

    :cvar DIMS: Print the constrained Hilbert space dimensions.
    :cvar SPECTRUM: Diagonalize and write the spectrum with per-eigenstate Shannon entropies.
    :cvar QUENCH: Time-evolve a named initial state and write the observable trace.
    :cvar IMBALANCE_SWEEP: Long-time imbalance averages over a detuning grid.
    :cvar ZERO_MODES: Count and write the zero modes and the simultaneous zero modes.
    :cvar PLAQUETTE: Evaluate the single-plaquette solution.
    :cvar ENTANGLEMENT: Quench with bipartite entanglement entropy columns.
    :cvar TOWERS: Eigenstate overlaps, scar tower spacing and revival comparison.
    """
    DIMS = "dims"
    SPECTRUM = "spectrum"
    QUENCH = "quench"
    IMBALANCE_SWEEP = "imbalance-sweep"
    ZERO_MODES = "zero-modes"
    PLAQUETTE = "plaquette"
    ENTANGLEMENT = "entanglement"
    TOWERS = "towers"

class Method(Enum):
    """
    Enum representing the time propagators.

    :cvar RK4: Fourth-order Runge-Kutta integration, no renormalization.
    :cvar EIGENBASIS: Phase propagation in the eigenbasis of a full diagonalization.
    """
    RK4 = "rk4"
    EIGENBASIS = "eigenbasis"

class SymmetryKind(Enum):
    """
    Enum representing the signed permutations acting on the constrained basis.

    :cvar T_X: Translation by one rung.
    :cvar T_X2: Translation by two rungs.
    :cvar T_Y: Exchange of the two legs.
    :cvar R_X: Reflection exchanging the two sites of every rung.
    :cvar C: Product of all sigma-z.
    :cvar C1: T_x applied after C.
    :cvar C2: T_x T_y applied after C.
    """
    T_X = "T_x"
    T_X2 = "T_x2"
    T_Y = "T_y"
    R_X = "R_x"
    C = "C"
    C1 = "C1"
    C2 = "C2"

class ImbalanceKind(Enum):
    """
    Enum representing the imbalance operators.

    :cvar IZ_Z2: Longitudinal imbalance tailored to the Neel state.
    :cvar IX_Z2: Transverse imbalance tailored to the Neel state.
    :cvar IX_VAC: Transverse imbalance tailored to the vacuum.
    """
    IZ_Z2 = "Iz_Z2"
    IX_Z2 = "Ix_Z2"
    IX_VAC = "Ix_vac"

    def default_initial_state(self) -> str:
        """
        Returns the initial state the imbalance is tailored to.

        :return: The named state.
        :rtype: str
        """
        return "vac" if self == ImbalanceKind.IX_VAC else "Z2"

class BipartitionKind(Enum):
    """
    Enum representing the bipartitions of the ladder.

    :cvar PARALLEL: One leg against the other.
    :cvar PERPENDICULAR: The first half of the rungs against the second half.
    """
    PARALLEL = "parallel"
    PERPENDICULAR = "perpendicular"

class ExitCode(Enum):
    """
    Enum representing the process exit codes.

    :cvar OK: Success.
    :cvar CONFIG: Invalid configuration.
    :cvar CAPACITY: Problem too large for the diagonalization cap.
    :cvar TOLERANCE: A numerical tolerance was violated.
    """
    OK = 0
    CONFIG = 2
    CAPACITY = 3
    TOLERANCE = 4

class Observable(Enum):
    """
    Enum representing the scalar observables a quench can record.

    :cvar FIDELITY: Return probability to the initial state.
    :cvar SHANNON: Shannon entropy of the Fock-basis weights.
    :cvar MZ_DENSITY: Magnetization density.
    :cvar SITES: Site-resolved sigma-z and projected sigma-x.
    """
    FIDELITY = "fidelity"
    SHANNON = "shannon"
    MZ_DENSITY = "mz_density"
    SITES = "sites"
