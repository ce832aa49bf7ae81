"""Chat-completion HTTP adapter and the model-backed agent."""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from dataclasses import dataclass, field

import httpx

from ..core.grid import Direction
from ..env.text import PLAIN, WITH_SUMMARY, render_observation
from .knowledge import build_memory_summary
from .policies import Agent
from .prompts import PromptVariant, build_system_prompt

log = logging.getLogger(__name__)

REDACTED = "***"


class AdapterError(RuntimeError):
    """The model endpoint could not produce a usable action."""


class ReplyParseError(ValueError):
    pass


@dataclass(frozen=True)
class ChatAdapterConfig:
    endpoint: str = "http://localhost:8000/v1/chat/completions"
    model: str = "default"
    temperature: float = 0.0
    max_retries: int = 3
    timeout: float = 60.0
    credential_env: str | None = "CHAT_API_KEY"
    # None keeps the full conversation
    history_window: int | None = None
    max_concurrency: int = 4

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")

    def headers(self) -> dict:
        h = {"Content-Type": "application/json"}
        if self.credential_env:
            key = os.environ.get(self.credential_env)
            if key is None:
                raise AdapterError(f"credential variable {self.credential_env} is not set")
            h["Authorization"] = f"Bearer {key}"
        return h


_slots: dict[int, threading.BoundedSemaphore] = {}
_slots_lock = threading.Lock()


def _slot(limit: int) -> threading.BoundedSemaphore:
    with _slots_lock:
        if limit not in _slots:
            _slots[limit] = threading.BoundedSemaphore(limit)
        return _slots[limit]


def extract_action(reply: str) -> Direction:
    """Find the first JSON object with an "action" key and parse its direction."""
    decoder = json.JSONDecoder()
    i = reply.find("{")
    while i != -1:
        try:
            obj, _ = decoder.raw_decode(reply, i)
        except json.JSONDecodeError:
            obj = None
        if isinstance(obj, dict) and "action" in obj:
            try:
                return Direction.parse(str(obj["action"]))
            except ValueError as exc:
                raise ReplyParseError(f"bad action {obj['action']!r}") from exc
        i = reply.find("{", i + 1)
    raise ReplyParseError("no JSON object with an action in reply")


def _reply_text(body: dict) -> str:
    try:
        return body["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ReplyParseError("response has no choices[0].message.content") from exc


def query_chat_model(
    config: ChatAdapterConfig,
    system: str,
    turns: list[dict],
    client: httpx.Client | None = None,
    transcript: list | None = None,
) -> tuple[Direction, str]:
    """Return the parsed direction and the raw reply text.

    Transport failures, HTTP errors and unparseable replies are retried up
    to ``max_retries`` times. Bodies are appended to ``transcript`` without
    credentials.
    """
    payload = {
        "model": config.model,
        "temperature": config.temperature,
        "messages": [{"role": "system", "content": system}, *turns],
    }
    own = client is None
    client = client or httpx.Client(timeout=config.timeout)
    last = "no attempt"
    try:
        for attempt in range(config.max_retries + 1):
            entry = {"attempt": attempt, "request": payload, "headers": _redact(config.headers())}
            try:
                with _slot(config.max_concurrency):
                    resp = client.post(config.endpoint, json=payload, headers=config.headers())
                entry["status"] = resp.status_code
                resp.raise_for_status()
                body = resp.json()
                entry["response"] = body
                text = _reply_text(body)
                return extract_action(text), text
            except (httpx.HTTPError, ValueError) as exc:
                last = f"{type(exc).__name__}: {exc}"
                entry["error"] = last
                log.warning("chat attempt %d failed: %s", attempt, last)
            finally:
                if transcript is not None:
                    transcript.append(entry)
            if attempt < config.max_retries:
                time.sleep(min(0.1 * 2**attempt, 2.0))
    finally:
        if own:
            client.close()
    raise AdapterError(f"gave up after {config.max_retries + 1} attempts: {last}")


def _redact(headers: dict) -> dict:
    return {k: (REDACTED if k.lower() == "authorization" else v) for k, v in headers.items()}


@dataclass
class ChatModelAgent(Agent):
    config: ChatAdapterConfig = field(default_factory=ChatAdapterConfig)
    variant: PromptVariant = field(default_factory=PromptVariant)
    client: httpx.Client | None = None
    messages: list = field(default_factory=list)
    transcript: list = field(default_factory=list)

    kind = "chat"

    def begin(self, env, seed):
        self.messages = []
        self.transcript = []
        self.system = build_system_prompt(self.variant)

    def prompt_text(self, obs, knowledge) -> str:
        if self.variant.harness:
            return render_observation(obs, WITH_SUMMARY, build_memory_summary(knowledge))
        return render_observation(obs, PLAIN)

    def act(self, obs, text, knowledge):
        self.messages.append({"role": "user", "content": text})
        window = self.messages
        if self.config.history_window:
            window = window[-self.config.history_window :]
        action, reply = query_chat_model(self.config, self.system, window, self.client, self.transcript)
        self.messages.append({"role": "assistant", "content": reply})
        return action

    def describe(self):
        return {
            "kind": self.kind,
            "model": self.config.model,
            "temperature": self.config.temperature,
            "variant": self.variant.strategy,
            "harness": self.variant.harness,
            "reasoning": self.variant.reasoning,
        }
