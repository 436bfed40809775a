"""Error diagnosis using pattern matching."""

from topojscc.errors.exceptions import TopoJSCCError
from topojscc.errors.patterns import ERROR_PATTERNS

DETAIL_LIMIT = 2000


def diagnose_error(error_output: str) -> dict:
    """Match error text against the known failure patterns.

    The first matching pattern wins, so more specific patterns come first
    in ``ERROR_PATTERNS``.

    Args:
        error_output: The error text to diagnose

    Returns:
        Dictionary with diagnosis information:
        - matched: bool indicating if a pattern was found
        - id, category: pattern identity (only if matched)
        - message: Human-readable error message
        - diagnosis: Explanation of what went wrong
        - suggestions: List of suggested fixes
        - original: Original error (only if not matched)
    """
    for pattern in ERROR_PATTERNS:
        if pattern.pattern.search(error_output):
            return {
                "matched": True,
                "id": pattern.id,
                "category": pattern.category,
                "message": pattern.message,
                "diagnosis": pattern.diagnosis,
                "suggestions": pattern.suggestions,
            }

    return {
        "matched": False,
        "message": "Command failed",
        "diagnosis": "An unrecognized error occurred",
        "suggestions": [
            "Re-run with --verbose for the full log",
        ],
        "original": error_output,
    }


def diagnose_exception(error: BaseException) -> dict:
    """``diagnose_error`` on the exception text, plus the library error code."""
    diagnosis = diagnose_error(str(error))
    if isinstance(error, TopoJSCCError):
        diagnosis["code"] = error.code
    return diagnosis


def format_diagnosis(diagnosis: dict, detail: str = "") -> str:
    """Format a diagnosis with the raw error detail for display."""
    title = diagnosis["message"]
    if "code" in diagnosis:
        title = f"{title} [{diagnosis['code']}]"
    parts = [
        title,
        "",
        f"Diagnosis: {diagnosis['diagnosis']}",
        "",
        "Suggestions:",
    ]
    parts.extend(f"  - {s}" for s in diagnosis["suggestions"])

    if detail:
        parts.extend(["", "--- error ---", detail[-DETAIL_LIMIT:]])

    return "\n".join(parts)
