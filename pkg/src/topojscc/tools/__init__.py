"""MCP tool definitions."""

from fastmcp.exceptions import ToolError

from topojscc.errors import diagnose_exception, format_diagnosis


def tool_error(error: Exception) -> ToolError:
    """ToolError carrying the diagnosis of ``error``."""
    return ToolError(format_diagnosis(diagnose_exception(error), str(error)))
