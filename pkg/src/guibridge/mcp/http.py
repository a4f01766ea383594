"""Streamable HTTP transport: POST a message, stream notifications via GET.

Single-session, no authentication: this is the local/dev transport. Mount
the router under an app, or use :func:`create_app` for a standalone server.
"""

from __future__ import annotations

import asyncio
import json

from fastapi import APIRouter, FastAPI, Request, Response

from .server import McpServer


def mcp_router(server: McpServer, path: str = "/mcp") -> APIRouter:
    router = APIRouter()

    @router.post(path)
    async def post_message(request: Request) -> Response:
        try:
            message = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            return Response(
                json.dumps({"jsonrpc": "2.0", "id": None,
                            "error": {"code": -32700, "message": f"parse error: {exc}"}}),
                media_type="application/json",
            )
        response = server.handle_message(message)
        if response is None:
            return Response(status_code=202)
        return Response(json.dumps(response), media_type="application/json")

    @router.get(path)
    async def notification_stream(request: Request, limit: int = 0) -> Response:
        from fastapi.responses import StreamingResponse

        async def stream():
            sent = 0
            while not await request.is_disconnected():
                drained = server.drain_notifications()
                for notification in drained:
                    yield f"data: {json.dumps(notification)}\n\n"
                    sent += 1
                    if limit and sent >= limit:
                        return
                if not drained:
                    yield ": ping\n\n"
                    await asyncio.sleep(0.05)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return router


def create_app(server: McpServer) -> FastAPI:
    app = FastAPI(title="guibridge MCP endpoint")
    app.include_router(mcp_router(server))
    return app
