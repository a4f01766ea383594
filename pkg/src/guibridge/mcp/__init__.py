"""MCP endpoint: server bridge, transports, and the client-side backend.

The stdio transport lives in ``guibridge.mcp.stdio`` (also runnable as
``python -m guibridge.mcp.stdio``); the HTTP transport in
``guibridge.mcp.http``.
"""

from .client import McpBackend, McpClientSession, McpError, in_process_transport
from .server import (
    EVENTS_URI,
    GuiEvent,
    McpServer,
    SessionRegistry,
    cap_text,
)
