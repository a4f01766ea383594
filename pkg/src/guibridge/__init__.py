"""guibridge: GUI navigation graphs as dynamically scoped assistant tools.

The pieces, bottom up: a documented route tree that generates navigation
tools and dispatches deep links (``routegraph``); per-screen ViewModels that
hold state, order tools, and plan multimodal feedback (``viewmodel``); a
session tying them into one dispatch stream (``session``); regex command
bypass (``fastpath``); schema-aligned repair of model output (``sap``); a
conversation orchestrator (``assistant``); an MCP endpoint (``mcp``); an
evaluation harness (``evalkit``); and a reference app (``demo``).
"""

from .fastpath import CommandMatch, CommandPattern, as_tool, match_user_input
from .routegraph import (
    DeepLink,
    DispatchError,
    DocumentedRoute,
    RouteGraph,
    UnknownRouteError,
    parse_deeplink,
)
from .sap import RepairLog, SynonymTable, levenshtein, repair_call
from .session import AppConfig, GuiSession, SessionTurn, load_app_config
from .tools import ConfigurationError, ParameterSpec, ToolCall, ToolResult, ToolSpec
from .viewmodel import (
    BoundTool,
    FeedbackPlan,
    FeedbackPlanner,
    GuiTransition,
    Provenance,
    ToolOutcome,
    ViewContext,
    ViewModel,
    ViewModelRegistry,
    apply_parameters,
    compose_hierarchy,
    compose_tools,
    screen_text,
)

__version__ = "0.1.0"
