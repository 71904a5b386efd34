"""Python interface to the padicdyn core.

Integers are passed as Python ints (any size); structured results come back
as dicts with decimal-string numbers, the same shape the CLI prints.
"""

import json

from . import _core
from ._core import DomainError, InvariantError, ParseError, PreconditionError

__all__ = [
    "DomainError",
    "InvariantError",
    "ParseError",
    "PreconditionError",
    "Polynomial",
    "parse_polynomial",
    "mahler_to_vdp",
    "vdp_to_mahler",
    "mahler_ud1_predicate",
    "series_values",
    "larin_transitive_mod8",
    "deg8_minimal_p3",
    "verify_identity_suite",
    "mu_for_prime",
]


def _dec(values):
    return [str(int(v)) for v in values]


def parse_polynomial(text):
    return [int(c) for c in _core.parse_polynomial(text)]


def mu_for_prime(p):
    return _core.mu_for_prime(p)


class Polynomial:
    """An integer polynomial viewed as a map on Z_p at finite depth."""

    def __init__(self, p, coefficients, depth=None):
        if isinstance(coefficients, str):
            coefficients = parse_polynomial(coefficients)
        self.p = p
        self.depth = depth if depth is not None else (4 if p <= 3 else 3)
        self.coefficients = [int(c) for c in coefficients]
        self._c = _dec(self.coefficients)

    def __repr__(self):
        return f"Polynomial(p={self.p}, {_core.format_polynomial(self._c)!r}, depth={self.depth})"

    def values(self, k=None):
        return _core.values_mod(self.p, self.depth, self._c, self.depth if k is None else k)

    def mahler(self, count=None, k=None):
        return self._expand("mahler", count, k)

    def vdp(self, count=None, k=None):
        return self._expand("vdp", count, k)

    def _expand(self, basis, count, k):
        count = self.p**self.depth if count is None else count
        k = self.depth if k is None else k
        return json.loads(_core.expand(self.p, self.depth, self._c, basis, count, k))

    def lipschitz(self):
        return json.loads(_core.lipschitz_check(self.p, self.depth, self._c))

    def ud1(self):
        return json.loads(_core.ud1_check(self.p, self.depth, self._c))

    def transitive_mod(self, n):
        return json.loads(_core.transitive_mod(self.p, self.depth, self._c, n))

    def ergodic(self, mu_override=None):
        return json.loads(_core.ergodic_ud(self.p, self.depth, self._c, mu_override))

    def oracle(self, n=None):
        return json.loads(_core.ergodic_oracle(self.p, self.depth, self._c, self.depth if n is None else n))

    def mcri(self):
        return json.loads(_core.mcri_conditions(self.p, self.depth, self._c))


def mahler_to_vdp(series, count):
    return json.loads(_core.mahler_to_vdp(json.dumps(series), count))


def vdp_to_mahler(series, count):
    return json.loads(_core.vdp_to_mahler(json.dumps(series), count))


def mahler_ud1_predicate(series):
    return json.loads(_core.mahler_ud1_predicate(json.dumps(series)))


def series_values(series, k):
    return _core.series_values(json.dumps(series), k)


def larin_transitive_mod8(A, B, C, D):
    return json.loads(_core.larin_transitive_mod8(_dec([A, B, C, D])))


def deg8_minimal_p3(alpha):
    return json.loads(_core.deg8_minimal_p3(_dec(alpha)))


def verify_identity_suite(suite, p_max=None, s_max=None):
    return [json.loads(r) for r in _core.verify_identity_suite(suite, p_max, s_max)]
