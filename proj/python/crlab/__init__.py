"""Exact and numerical tools for infinite-type hypersurface germs.

Families, curves, series and models are plain dicts/lists in the JSON
encodings used by the ``crlab`` command-line tool.
"""

import json

from . import _core
from ._core import CrlabError, ParseError, chi, lambda_profile

__all__ = [
    "CrlabError",
    "ParseError",
    "bg_type",
    "check_subharmonic",
    "chi",
    "constant_C",
    "dangelo_bound",
    "eval_f",
    "gen_sequences",
    "lambda_profile",
    "model_from_family",
    "obstruct",
    "obstruct_batch",
    "run_cli",
    "series_compose",
    "series_mul",
    "series_pow",
    "series_valuation",
    "tangency",
    "taylor_extract",
    "verify_spike_conditions",
    "xm_check",
]


def _j(value):
    return json.dumps(value)


def series_mul(a, b):
    return json.loads(_core.series_mul(_j(a), _j(b)))


def series_pow(h, m):
    return json.loads(_core.series_pow(_j(h), m))


def series_compose(a, h):
    """sum_m a[m-1] h^m; `a` holds rationals as strings or ints."""
    return json.loads(_core.series_compose([str(x) for x in a], _j(h)))


def series_valuation(s):
    return json.loads(_core.series_valuation(_j(s)))


def gen_sequences(n, spikes, M_max):
    return json.loads(_core.gen_sequences(n, list(spikes), M_max))


def verify_spike_conditions(family):
    return json.loads(_core.verify_spike_conditions(_j(family)))


def constant_C(safety=2.0):
    return json.loads(_core.constant_C(safety))


def eval_f(family, j, z, M):
    return _core.eval_f(_j(family), j, complex(z), M)


def check_subharmonic(family, M, samples=200, tol=1e-9, seed=0, c_scale=1.0):
    return json.loads(_core.check_subharmonic(_j(family), M, samples, tol, seed, c_scale))


def taylor_extract(family, j, M, m, r=1e-3, nodes=4096):
    return _core.taylor_extract(_j(family), j, M, m, r, nodes)


def tangency(family, curve):
    return json.loads(_core.tangency(_j(family), _j(curve)))


def xm_check(family, m):
    return json.loads(_core.xm_check(_j(family), m))


def obstruct(family, curve):
    return json.loads(_core.obstruct(_j(family), _j(curve)))


def obstruct_batch(family, seed=42, count=100, deg=5, K=36):
    return json.loads(_core.obstruct_batch(_j(family), seed, count, deg, K))


def bg_type(model, K):
    return json.loads(_core.bg_type(_j(model), K))


def dangelo_bound(model, budget, K):
    return json.loads(_core.dangelo_bound(_j(model), budget, K))


def model_from_family(family, K):
    return json.loads(_core.model_from_family(_j(family), K))


def run_cli(*args):
    """Runs one CLI subcommand in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
