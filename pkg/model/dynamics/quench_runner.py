from model.dynamics.observables import ObservableSet
from model.dynamics.propagators import convergence_probe, evolve_rk4, propagate_eigenbasis
from model.dynamics.quench_spec import QuenchSpec
from model.dynamics.quench_trace import QuenchTrace
from model.entanglement.bipartition import build_bipartition
from model.hilbert.basis import Basis, enumerate_basis
from model.hilbert.momentum_sector import build_sector
from model.hilbert.named_states import state_vector
from model.operators.hamiltonian import build_hamiltonian
from model.operators.imbalance import build_imbalance
from model.operators.model_params import ModelParams
from model.operators.sparse_operator import SparseOperator
from model.spectra.eigen_system import EigenSystem, diagonalize
from util.geometry import Geometry
from util.state_manager import BipartitionKind, Method
from typing import Callable
import logging
import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

PROBE_TIME = 1.0

Eigensolver = Callable[[SparseOperator, dict], EigenSystem]

def default_eigensolver(hamiltonian: SparseOperator, metadata: dict) -> EigenSystem:
    return diagonalize(hamiltonian, metadata=metadata)

def quench_bipartitions(basis: Basis) -> dict:
    """
    The cuts recorded as entanglement columns: parallel and perpendicular on the ladder, perpendicular on the chain.

    :rtype: dict
    """
    cuts = {}
    if basis.get_geometry().is_ladder():
        cuts["par"] = build_bipartition(basis, BipartitionKind.PARALLEL)
    cuts["perp"] = build_bipartition(basis, BipartitionKind.PERPENDICULAR)
    return cuts

def run_quench(geometry: Geometry, spec: QuenchSpec, basis: Basis | None = None, system: EigenSystem | None = None,
               eigensolver: Eigensolver | None = None) -> QuenchTrace:
    """
    Build the basis and the Hamiltonian, prepare the initial state and record the observables of the spec
    with the chosen propagator, in the full basis or in a momentum sector of the two-rung translation.

    :param geometry: The lattice; must match the spec.
    :type geometry: Geometry
    :param spec: The quench.
    :type spec: QuenchSpec
    :param basis: A prebuilt basis of the geometry.
    :type basis: Basis | None
    :param system: A prebuilt full eigensystem for the eigenbasis method.
    :type system: EigenSystem | None
    :param eigensolver: Diagonalizer used when the eigenbasis method needs a spectrum.
    :type eigensolver: Eigensolver | None
    :raises ValueError: If the geometry differs from the one of the spec.
    :raises ToleranceError: On norm drift or an initial state outside the requested sector.
    :rtype: QuenchTrace
    """
    if geometry != spec.get_geometry():
        raise ValueError(f"geometry {geometry} does not match the quench geometry {spec.get_geometry()}")
    basis = basis or enumerate_basis(geometry)
    params = ModelParams(spec.get_delta(), spec.get_w())
    hamiltonian = build_hamiltonian(basis, params)
    psi_0 = state_vector(basis, spec.get_initial())
    overlaps = {name: state_vector(basis, name) for name in spec.get_overlaps()}
    bipartitions = quench_bipartitions(basis) if spec.wants_entanglement() else {}
    operators = {kind.value: build_imbalance(basis, kind) for kind in spec.get_imbalances()}
    observables = ObservableSet(basis, psi_0, spec.get_observables(), overlaps, bipartitions, operators)
    initial_energy = hamiltonian.expectation(psi_0)
    logger.info("quench %r on %r, <H>(0) = %.3e", spec, basis, initial_energy)
    eigensolver = eigensolver or default_eigensolver
    metadata = {"L": geometry.get_L(), "legs": geometry.get_legs(), **params.to_dict()}
    k = spec.get_sector_k()
    if k is None:
        matrix, start, sink = hamiltonian.get_matrix(), psi_0, observables
        if spec.get_method() == Method.EIGENBASIS:
            system = system or eigensolver(hamiltonian, metadata)
    else:
        sector = build_sector(basis, k)
        matrix = sector.restrict(hamiltonian.get_matrix())
        start = sector.project(psi_0)
        sink = lambda t, phi: observables(t, sector.embed(phi))
        if spec.get_method() == Method.EIGENBASIS:
            eigenvalues, eigenvectors = scipy.linalg.eigh(matrix.toarray())
            system = EigenSystem(eigenvalues, eigenvectors, metadata={**metadata, "k": k})
        logger.info("evolving in %r", sector)
    if spec.get_method() == Method.EIGENBASIS:
        trace = propagate_eigenbasis(system, start, spec, sink)
    else:
        trace = evolve_rk4(matrix, start, spec, sink)
        probe_time = min(spec.get_t_max(), PROBE_TIME)
        if probe_time > 0:
            trace.set_diagnostic("convergence_error", convergence_probe(matrix, start, probe_time, spec.get_dt()))
    trace.set_diagnostic("initial_energy", float(initial_energy))
    trace.set_diagnostic("dimension", basis.get_dimension() if k is None else int(np.shape(start)[0]))
    if bipartitions:
        trace.set_diagnostic("subsystem_dimensions",
                             {suffix: [cut.dimension_a(), cut.dimension_b()] for suffix, cut in bipartitions.items()})
    return trace
