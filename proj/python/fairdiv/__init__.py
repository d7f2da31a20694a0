"""Fair allocation of indivisible goods with monetary subsidies.

Thin Python face over the C++ core. All heavy lifting (exact rational
arithmetic, matroid oracles, brute-force audits) happens in `fairdiv._core`;
this package re-exports its functions and adds JSON conveniences.
"""

import json as _json

from fairdiv._core import (
    audit_json,
    evaluate,
    fixtures_json,
    run_cli,
    solve_json,
    validate_json,
)

__all__ = [
    "audit",
    "audit_json",
    "evaluate",
    "fixtures",
    "fixtures_json",
    "run_cli",
    "solve",
    "solve_json",
    "validate",
    "validate_json",
]


def solve(instance: dict | str, mechanism: str, max_enum: int = 0) -> dict:
    """Run one mechanism on an instance (dict or JSON text); returns the report."""
    text = instance if isinstance(instance, str) else _json.dumps(instance)
    return _json.loads(solve_json(text, mechanism, max_enum))


def audit(
    instance: dict | str,
    suite: str,
    max_enum: int = 0,
    jobs: int = 1,
    seed: int = 0,
) -> dict:
    """Run one audit suite on an instance; returns the report with verdicts."""
    text = instance if isinstance(instance, str) else _json.dumps(instance)
    return _json.loads(audit_json(text, suite, max_enum, jobs, seed))


def validate(instance: dict | str) -> dict:
    """Check every valuation against its declared class; returns the report."""
    text = instance if isinstance(instance, str) else _json.dumps(instance)
    return _json.loads(validate_json(text))


def fixtures() -> dict:
    """The built-in instances, parsed: name -> instance document."""
    return {name: _json.loads(text) for name, text in fixtures_json().items()}
