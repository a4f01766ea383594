#!/usr/bin/env python3
"""Walkthrough of the embedded assistant driving the banking demo.

Runs entirely offline against a scripted model, so every step is
reproducible. Shows: navigation with parameter fill, spoken/graphical
feedback, correction vs new-instance repair, fastpath commands, and
clickable-history replay via deep links.

    python3 demos/embedded_banking.py
"""

from guibridge import GuiSession
from guibridge.assistant import Assistant, EmbeddedBackend, ScriptedModelClient
from guibridge.demo import load_demo_config


def show(title, turn, session):
    print(f"\n=== {title}")
    if turn.fastpath:
        print("  (handled by fastpath, zero model calls)")
    if turn.feedback:
        print(f"  speech    : {turn.feedback.speech_text}")
        print(f"  highlights: {turn.feedback.highlight_targets}")
        print(f"  replay    : {turn.feedback.history_entry}")
    print("  screen ----")
    for line in session.screen_text().splitlines():
        print(f"    {line}")


def main():
    session = GuiSession(load_demo_config("banking"))

    # the "model": a script of the tool calls a real LLM would produce
    client = ScriptedModelClient([
        {"tool_call": {"name": "transfer", "arguments": {"destination": "Robert", "amount": 50}}},
        {"tool_call": {"name": "transfer", "arguments": {"amount": 40}}},
        {"tool_call": {"name": "transfer", "arguments": {
            "isNewTransfer": True, "destination": "Mary", "amount": 50}}},
        {"tool_call": {"name": "offices-map", "arguments": {}}},
    ])
    assistant = Assistant(EmbeddedBackend(session), client)

    print("Published tools (current screen first):")
    print(" ", [t.spec.name for t in session.composed_tools()])

    turn = assistant.handle_utterance("Transfer 50 euros to Robert")
    show("'Transfer 50 euros to Robert' (navigate + fill)", turn, session)
    replay_link = turn.feedback.history_entry

    turn = assistant.handle_utterance("No 40")
    show("'No 40' (correction merges over the existing transfer)", turn, session)

    turn = assistant.handle_utterance("Also transfer 50 to Mary")
    show("'Also transfer 50 to Mary' (isNewTransfer=true resets the form)", turn, session)

    turn = assistant.handle_utterance("I want to speak to somebody at the counter")
    show("'I want to speak to somebody at the counter'", turn, session)

    turn = assistant.handle_utterance("go back")
    show("'go back' (regex fastpath, model bypassed)", turn, session)

    print("\n=== replaying the first history entry:", replay_link)
    session.navigate(replay_link, source="ui")
    for line in session.screen_text().splitlines():
        print(f"    {line}")


if __name__ == "__main__":
    main()
