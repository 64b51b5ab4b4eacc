"""Command tree for the blaschke CLI.

- gen: zero-set constructions (family, thm2, thm5a, thm5b)
- eval: pointwise quantities (logB, HLambda, hQ, kernel)
- majorant: minimal majorant mass sweeps and single LP solves
- verify: property suites with measured-against-bound reports
"""

from .eval import eval_command
from .gen import gen_group
from .majorant import majorant_command
from .verify import verify_command

__all__ = [
    "gen_group",
    "eval_command",
    "majorant_command",
    "verify_command",
]
