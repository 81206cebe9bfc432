"""Countable example spaces described by finite data, with certificate checks."""
from .base import (
    INF,
    CertificateReport,
    CofiniteNat,
    ErshovSumLazy,
    LazySpace,
    NatChain,
    SubCheck,
    finite_sum_spec,
    format_point,
    lazy_leq,
    parse_point,
    sum_example_space,
    truncate,
)
from .example_l import L, ExampleL, L_certificates, directed_refuter, raw_leq
from .johnstone import (
    J,
    JClosedSet,
    Johnstone,
    greatest_element_refuter,
    j_closed_algebra,
    johnstone_kf_certificate,
    johnstone_not_tapered_certificate,
    sup_of_directed,
)

SPACES = {
    "johnstone": lambda: J,
    "exampleL": lambda: L,
    "cofinite": CofiniteNat,
    "cofinite_nat": CofiniteNat,
    "sumZ": sum_example_space,
    "ershov_sum_lazy": sum_example_space,
}
