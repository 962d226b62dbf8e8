from perfcodes.perfect.types import (
    BadDoubleCoset,
    Certificate,
    ClassifyReport,
    HypothesisInstance,
    Interpretation,
    Policy,
    Provenance,
    Status,
    TraceStep,
    Transversal,
    Verdict,
)
from perfcodes.perfect.oracle import (
    bad_double_cosets,
    build_transversal,
    normal_criterion,
    oracle_double_coset,
    verify_certificate,
    witness_search_2elements,
)
from perfcodes.perfect.cyclic import cyclic_fast_path, sweep_cyclic, two_power_cycle_types
from perfcodes.perfect.hypotheses import hyp_commutative, hyp_extension, hyp_k11, hyp_thm10, quotient_cyclic_check
from perfcodes.perfect.classify import audit_checkers, classify
from perfcodes.perfect.invariance import invariance_suite
