"""Independent stabilizer-formalism checks for the graph rewrite engine."""

from qlantopo.oracle.certify import (
    Certificate,
    certify_measurement,
    certify_sequence,
    k0_choices_agree,
    local_correction,
)
from qlantopo.oracle.lc import LcOrbit, lc_equivalent, lc_orbit, lc_orbit_size, lc_path
from qlantopo.oracle.pauli import PauliString
from qlantopo.oracle.statevector import apply_pauli, statevector_from_graph
from qlantopo.oracle.tableau import (
    Extraction,
    OutcomeBranch,
    StabilizerTableau,
    apply_gate,
    apply_record,
    discard_qubit,
    extract_graph,
    measure_pauli,
    tableau_from_graph,
)

__all__ = [
    "Certificate",
    "Extraction",
    "LcOrbit",
    "OutcomeBranch",
    "PauliString",
    "StabilizerTableau",
    "apply_gate",
    "apply_pauli",
    "apply_record",
    "certify_measurement",
    "certify_sequence",
    "discard_qubit",
    "extract_graph",
    "k0_choices_agree",
    "lc_equivalent",
    "lc_orbit",
    "lc_orbit_size",
    "lc_path",
    "local_correction",
    "measure_pauli",
    "statevector_from_graph",
    "tableau_from_graph",
]
