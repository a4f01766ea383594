"""Stdio transport: newline-delimited JSON-RPC messages.

Run the demo application as an MCP server:

    python -m guibridge.mcp.stdio
"""

from __future__ import annotations

import json
import sys
from typing import IO

from .server import McpServer


def serve_stdio(server: McpServer, stdin: IO[str] = None, stdout: IO[str] = None) -> None:
    """Read one JSON message per line, answer, then flush queued notifications."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout

    def write(obj: dict) -> None:
        stdout.write(json.dumps(obj) + "\n")
        stdout.flush()

    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            message = json.loads(line)
        except json.JSONDecodeError as exc:
            write({"jsonrpc": "2.0", "id": None, "error": {"code": -32700, "message": f"parse error: {exc}"}})
            continue
        response = server.handle_message(message)
        if response is not None:
            write(response)
        for notification in server.drain_notifications():
            write(notification)


def main() -> None:
    from ..demo import build_demo_session

    session = build_demo_session()
    serve_stdio(McpServer(session, server_name="guibridge-demo"))


if __name__ == "__main__":
    main()
