"""The shipped verification corpus: functions, intervals, and parameter grids.

Everything the `suite` subcommand sweeps lives here so library tests and the
CLI agree on what "the corpus" means.  Functions are parsed once per process;
the shared domain [0, 3] covers every corpus interval.
"""

from __future__ import annotations

from functools import lru_cache

from .convexity import ConvexityParams
from .expr import FunctionSpec, Interval, parse_function

FUNCTION_TEXTS = ("x^2", "x^4", "exp(x)", "exp(2*x)", "x^2 + 3*x")

DOMAIN = Interval(0.0, 3.0)

INTERVALS = (Interval(0.0, 1.0), Interval(0.0, 2.0), Interval(1.0, 3.0))

PARAM_TRIPLES = (
    ConvexityParams(1.0, 1.0, 1.0, "first"),
    ConvexityParams(0.5, 1.0, 1.0, "first"),
    ConvexityParams(1.0, 0.5, 1.0, "first"),
    ConvexityParams(0.75, 0.5, 1.0, "first"),
)

HOLDER_PS = (1.5, 2.0, 3.0)

ALPHA_S_GRID = tuple(round(0.05 * k, 2) for k in range(1, 21))

# parser-only expressions: exercise the grammar corners (unary minus before a
# power, function calls, nested parentheses) without entering the numeric
# sweeps, where abs/log would break smoothness or positivity assumptions
EXTRA_EXPRESSIONS = (
    "(1 - x)^4",
    "-(x^2)",
    "exp(x) - 1",
    "abs(x)",
    "log(x + 1)",
    "1 - 2*x",
    "x^2^3",
    "2/x/2",
    "-x^2",
    "x * (x + 1) * (x - 1)",
)


@lru_cache(maxsize=1)
def corpus_functions() -> tuple[FunctionSpec, ...]:
    return tuple(parse_function(t, DOMAIN) for t in FUNCTION_TEXTS)
