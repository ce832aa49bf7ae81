from __future__ import annotations

import random

from .config import ConfigError

TOKEN_ALPHABET = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"
TOKEN_LENGTH = 4

# Cooking-themed names for the semantic labelling mode, in table order.
SEMANTIC_NAMES = (
    "Pasta",
    "Tomato Sauce",
    "Tomato Pasta",
    "Cheese",
    "Tomato Pasta with Cheese",
    "Basil",
    "Garlic",
    "Olive Oil",
    "Garlic Oil",
    "Boiled Pasta",
    "Pesto",
    "Pesto Pasta",
)


def is_monotone_run(token: str) -> bool:
    """True for tokens like ABCD, 9876 or QQQQ that hint at an ordering."""
    idx = [TOKEN_ALPHABET.index(ch) for ch in token]
    steps = {b - a for a, b in zip(idx, idx[1:])}
    return len(steps) == 1 and steps <= {-1, 0, 1}


def symbolic_token(rng: random.Random) -> str:
    return "".join(rng.choice(TOKEN_ALPHABET) for _ in range(TOKEN_LENGTH))


def generate_labels(count: int, mode: str, rng: random.Random) -> list[str]:
    if count < 1:
        raise ValueError("count must be >= 1")
    if mode == "semantic":
        if count > len(SEMANTIC_NAMES):
            raise ConfigError(f"only {len(SEMANTIC_NAMES)} semantic names are bundled, asked for {count}")
        return list(SEMANTIC_NAMES[:count])
    if mode != "symbolic":
        raise ConfigError(f"unknown label mode {mode!r}")
    if count > len(TOKEN_ALPHABET) ** TOKEN_LENGTH // 2:
        raise ConfigError(f"cannot draw {count} distinct tokens")
    out: list[str] = []
    seen: set[str] = set()
    while len(out) < count:
        tok = symbolic_token(rng)
        if tok in seen or is_monotone_run(tok):
            continue
        seen.add(tok)
        out.append(tok)
    return out
