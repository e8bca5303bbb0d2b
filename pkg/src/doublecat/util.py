"""Shared helpers: ID ordering, union-find, validation reports."""

from __future__ import annotations

from dataclasses import dataclass, field


def idkey(tok):
    """Total order key for cell IDs.

    IDs are opaque tokens: strings, or (nested) tuples of tokens.  Python
    cannot compare str with tuple, so every canonical choice (coend
    representatives, serialization order) goes through this key.
    """
    if isinstance(tok, str):
        return (0, tok)
    if isinstance(tok, tuple):
        return (1, tuple(idkey(t) for t in tok))
    raise TypeError(f"unsupported ID type: {type(tok).__name__} ({tok!r})")


def check_id(tok):
    """Raise if tok is not a legal ID token."""
    idkey(tok)
    return tok


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    message: str = ""

    def __str__(self):
        msg = f": {self.message}" if self.message else ""
        return f"{self.law} at {self.witness}{msg}"


@dataclass
class ValidationReport:
    """A list of witnessed law violations; empty report means the laws hold."""

    subject: str
    violations: list = field(default_factory=list)

    def add(self, law, witness, message=""):
        self.violations.append(Violation(law, tuple(witness), message))

    def merge(self, other):
        self.violations.extend(other.violations)

    @property
    def ok(self):
        return not self.violations

    def laws(self):
        return {v.law for v in self.violations}

    def mentions(self, tok):
        """True if some violation witness contains tok (possibly nested)."""

        def walk(t):
            if t == tok:
                return True
            return isinstance(t, tuple) and any(walk(s) for s in t)

        return any(walk(w) for v in self.violations for w in v.witness)

    def __str__(self):
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines.extend(f"  - {v}" for v in self.violations)
        return "\n".join(lines)


class BudgetExceeded(Exception):
    """A brute-force enumeration outgrew its configured budget."""


class GenerationError(Exception):
    """Random generation bounds too small to close composition."""
