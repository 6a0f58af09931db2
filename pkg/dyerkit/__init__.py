__version__ = "0.1.0"

from dyerkit.graph import DyerGraph, ValidationError, validate_dyer
from dyerkit.classify import (
    abelianization_invariants,
    even_quotient,
    is_quasi_perfect,
    is_virtually_free,
)
from dyerkit.coxeter import recognize_finite_coxeter
from dyerkit.dyg import DygDocument, parse_dyg
from dyerkit.oracle import oracle_quasi_perfect
from dyerkit.report import emit_report
from dyerkit.settings import Settings
