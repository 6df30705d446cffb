"""Line-oriented spec files.

::

    # comment
    outcomes: s1 s2 s3
    event E = s2 s3
    measure: s1=1/2 s2=1/4 s3=1/4     # s2+s3=1/2 declares a two-outcome atom
    possible: s1 s2
    multinomial: m=2 theta=1/2,1/2 k=1000 seed=42
    beliefs: exchangeable possible(a)

Parsing is total: every problem in the file is collected as a
:class:`Diagnostic` before :class:`SpecParseError` is raised.  Only syntax
and references are checked here; whether the weights form a probability
measure is a separate validation step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from possprob.events import OutcomeSpace, SigmaField
from possprob.multinomial import Prop
from possprob.possibility import PossibilitySpace

BLOCKS = ("outcomes", "measure", "possible", "multinomial", "beliefs")

LABEL_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*\Z")
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
FRACTION_RE = re.compile(r"-?\d+(?:/\d+)?\Z")
DECIMAL_RE = re.compile(r"-?\d*\.\d+(?:/\d+)?\Z")
INT_RE = re.compile(r"\d+\Z")
BLOCK_RE = re.compile(r"\s*([A-Za-z_]+)\s*:")
EVENT_RE = re.compile(r"\s*event\s+(\S+)\s*=")


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    column: int
    message: str
    token: str = ""

    def format(self, path: str = "<spec>") -> str:
        text = f"{path}:{self.line}:{self.column}: {self.severity}: {self.message}"
        return text + (f" [{self.token}]" if self.token else "")

    def __str__(self):
        return self.format()


class SpecParseError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class MultinomialBlock:
    m: int
    theta: tuple[Fraction, ...]
    k: int
    seed: Optional[int] = None


@dataclass(frozen=True)
class BeliefsBlock:
    exchangeable: bool
    propositions: tuple[Prop, ...]


@dataclass(frozen=True)
class SpecFile:
    outcomes: Optional[tuple[str, ...]] = None
    events: tuple[tuple[str, tuple[str, ...]], ...] = ()
    measure: Optional[tuple[tuple[tuple[str, ...], Fraction], ...]] = None
    possible: Optional[tuple[str, ...]] = None
    multinomial: Optional[MultinomialBlock] = None
    beliefs: Optional[BeliefsBlock] = None
    warnings: tuple[Diagnostic, ...] = field(default=(), compare=False)

    def space(self) -> OutcomeSpace:
        return OutcomeSpace(self.outcomes)

    def sigma_field(self) -> SigmaField:
        return SigmaField(self.space(), tuple(frozenset(a) for a, _ in self.measure))

    def atom_weights(self, sigma: SigmaField) -> tuple[Fraction, ...]:
        """Weights in the field's atom order."""
        lookup = {frozenset(a): w for a, w in self.measure}
        return tuple(lookup[a] for a in sigma.atoms)

    def possibility_space(self) -> PossibilitySpace:
        return PossibilitySpace(self.space(), frozenset(self.possible))

    def event(self, name: str) -> frozenset:
        for event_name, members in self.events:
            if event_name == name:
                return frozenset(members)
        raise KeyError(name)


def _tokens(text: str, start: int = 0):
    """(token, 1-based column) pairs for whitespace-separated tokens."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)
            if m.start() >= start]


def _fraction(token: str) -> Fraction:
    num, _, den = token.partition("/")
    return Fraction(int(num), int(den) if den else 1)


class _Parser:
    def __init__(self):
        self.diagnostics: list[Diagnostic] = []
        self.block_lines: dict[str, int] = {}
        self.refs: list[tuple[str, int, int]] = []
        self.outcomes = None
        self.events: list[tuple[str, tuple[str, ...]]] = []
        self.event_lines: dict[str, int] = {}
        self.measure = None
        self.measure_line = 0
        self.possible = None
        self.multinomial = None
        self.beliefs = None

    def error(self, line, col, message, token=""):
        self.diagnostics.append(Diagnostic("error", line, col, message, token))

    def warning(self, line, col, message, token=""):
        self.diagnostics.append(Diagnostic("warning", line, col, message, token))

    def labels(self, tokens, line, what):
        out = []
        for tok, col in tokens:
            if not LABEL_RE.match(tok):
                self.error(line, col, f"malformed outcome label in {what}", tok)
                continue
            self.refs.append((tok, line, col))
            out.append(tok)
        return out

    def parse_line(self, lineno: int, text: str):
        m = EVENT_RE.match(text)
        if m:
            return self.event_line(lineno, text, m)
        m = BLOCK_RE.match(text)
        if not m:
            tok, col = _tokens(text)[0]
            if tok in BLOCKS:
                self.error(lineno, col + len(tok), f"missing ':' after '{tok}'", tok)
                return
            self.error(lineno, col, "unrecognized line; expected 'event NAME = ...' "
                       "or one of " + ", ".join(b + ":" for b in BLOCKS), tok)
            return
        kind = m.group(1)
        if kind not in BLOCKS:
            self.error(lineno, m.start(1) + 1, f"unknown block '{kind}'", kind)
            return
        if kind in self.block_lines:
            self.error(lineno, m.start(1) + 1,
                       f"duplicate '{kind}' block (first on line {self.block_lines[kind]})",
                       kind)
            return
        self.block_lines[kind] = lineno
        getattr(self, f"{kind}_block")(lineno, _tokens(text, m.end()))

    def event_line(self, lineno, text, m):
        name = m.group(1)
        if not NAME_RE.match(name):
            self.error(lineno, m.start(1) + 1, "malformed event name", name)
            return
        if name in self.event_lines:
            self.error(lineno, m.start(1) + 1,
                       f"event '{name}' already defined on line {self.event_lines[name]}",
                       name)
            return
        members = self.labels(_tokens(text, m.end()), lineno, f"event '{name}'")
        seen = set()
        for tok, col in _tokens(text, m.end()):
            if tok in seen:
                self.warning(lineno, col, f"outcome listed twice in event '{name}'", tok)
            seen.add(tok)
        self.event_lines[name] = lineno
        self.events.append((name, tuple(dict.fromkeys(members))))

    def outcomes_block(self, lineno, tokens):
        if not tokens:
            self.error(lineno, 1, "outcomes block declares no outcomes")
        out, seen = [], set()
        for tok, col in tokens:
            if not LABEL_RE.match(tok):
                self.error(lineno, col, "malformed outcome label", tok)
            elif tok in seen:
                self.error(lineno, col, "duplicate outcome label", tok)
            else:
                seen.add(tok)
                out.append(tok)
        self.outcomes = tuple(out)

    def measure_block(self, lineno, tokens):
        self.measure_line = lineno
        entries = []
        if not tokens:
            self.error(lineno, 1, "measure block assigns no weights")
        for tok, col in tokens:
            key, eq, value = tok.partition("=")
            if not eq or not key:
                self.error(lineno, col, "expected OUTCOME=FRACTION", tok)
                continue
            atom = key.split("+")
            bad = [a for a in atom if not LABEL_RE.match(a)]
            if bad:
                self.error(lineno, col, "malformed outcome label in measure", tok)
                continue
            weight = self.fraction(lineno, col + len(key) + 1, value)
            for label in atom:
                self.refs.append((label, lineno, col))
            # a bad weight is reported once; its outcomes still count as weighted
            entries.append((tuple(atom), weight, col))
        self.measure = entries

    def fraction(self, lineno, col, token):
        if DECIMAL_RE.match(token):
            self.error(lineno, col, "decimals are not allowed; write a fraction such as 1/4",
                       token)
            return None
        if not FRACTION_RE.match(token):
            self.error(lineno, col, "malformed fraction", token)
            return None
        if re.search(r"/0+\Z", token):
            self.error(lineno, col, "zero denominator", token)
            return None
        return _fraction(token)

    def possible_block(self, lineno, tokens):
        self.possible = tuple(dict.fromkeys(self.labels(tokens, lineno, "possible block")))
        if not tokens:
            self.warning(lineno, 1, "empty possibility space: every event is impossible")

    def multinomial_block(self, lineno, tokens):
        values = {}
        for tok, col in tokens:
            key, eq, value = tok.partition("=")
            if not eq:
                self.error(lineno, col, "expected KEY=VALUE", tok)
                continue
            if key not in ("m", "theta", "k", "seed"):
                self.error(lineno, col, f"unknown multinomial key '{key}'", tok)
                continue
            if key in values:
                self.error(lineno, col, f"duplicate multinomial key '{key}'", tok)
                continue
            vcol = col + len(key) + 1
            if key == "theta":
                parts, pos, ok = [], vcol, True
                for piece in value.split(","):
                    f = self.fraction(lineno, pos, piece)
                    ok = ok and f is not None
                    parts.append(f)
                    pos += len(piece) + 1
                values[key] = (tuple(parts) if ok else None, col)
            elif INT_RE.match(value):
                values[key] = (int(value), col)
            else:
                self.error(lineno, vcol, f"'{key}' needs a non-negative integer", value)
                values[key] = (None, col)
        for key in ("m", "theta", "k"):
            if key not in values:
                self.error(lineno, 1, f"multinomial block is missing '{key}'")
        if any(v is None for v, _ in values.values()) or len(
                set(values) & {"m", "theta", "k"}) < 3:
            return
        m, theta, k = values["m"][0], values["theta"][0], values["k"][0]
        if m < 1:
            self.error(lineno, values["m"][1], "m must be at least 1", f"m={m}")
            return
        if k < 1:
            self.error(lineno, values["k"][1], "k must be at least 1", f"k={k}")
            return
        if len(theta) != m:
            self.error(lineno, values["theta"][1],
                       f"theta has {len(theta)} entries but m={m}")
            return
        seed = values.get("seed", (None, 0))[0]
        self.multinomial = MultinomialBlock(m, theta, k, seed)

    def beliefs_block(self, lineno, tokens):
        exchangeable = False
        props = []
        for tok, col in tokens:
            if tok == "exchangeable":
                exchangeable = True
                continue
            try:
                prop = Prop(tok)
            except ValueError:
                self.error(lineno, col, "unknown proposition; expected exchangeable or "
                           + ", ".join(p.value for p in Prop), tok)
                continue
            if prop not in props:
                props.append(prop)
        self.beliefs = BeliefsBlock(exchangeable, tuple(props))

    def finish(self) -> SpecFile:
        declared = set(self.outcomes or ())
        for label, line, col in self.refs:
            if label not in declared:
                self.error(line, col, f"undeclared outcome '{label}'", label)
        measure = None
        if self.measure is not None:
            owner: dict[str, int] = {}
            for atom, _, col in self.measure:
                for label in atom:
                    if label in owner:
                        self.error(self.measure_line, col,
                                   f"outcome '{label}' is weighted twice", label)
                    owner[label] = col
            if self.outcomes is not None:
                for label in self.outcomes:
                    if label not in owner:
                        self.error(self.measure_line, 1,
                                   f"outcome '{label}' has no weight in the measure", label)
            measure = tuple((atom, w) for atom, w, _ in self.measure)
        self.diagnostics.sort(key=lambda d: (d.line, d.column))
        errors = [d for d in self.diagnostics if d.severity == "error"]
        if errors:
            raise SpecParseError(self.diagnostics)
        return SpecFile(
            outcomes=self.outcomes,
            events=tuple(self.events),
            measure=measure,
            possible=self.possible,
            multinomial=self.multinomial,
            beliefs=self.beliefs,
            warnings=tuple(self.diagnostics),
        )


def parse(text: str) -> SpecFile:
    """Parse spec text; raise :class:`SpecParseError` listing every error."""
    p = _Parser()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            p.parse_line(lineno, body)
    return p.finish()


def serialize(spec: SpecFile) -> str:
    lines = []
    if spec.outcomes is not None:
        lines.append("outcomes: " + " ".join(spec.outcomes))
    for name, members in spec.events:
        lines.append(f"event {name} = " + " ".join(members))
    if spec.measure is not None:
        lines.append("measure: " + " ".join(
            f"{'+'.join(atom)}={w}" for atom, w in spec.measure))
    if spec.possible is not None:
        lines.append("possible: " + " ".join(spec.possible))
    if spec.multinomial is not None:
        mb = spec.multinomial
        text = f"multinomial: m={mb.m} theta={','.join(str(t) for t in mb.theta)} k={mb.k}"
        if mb.seed is not None:
            text += f" seed={mb.seed}"
        lines.append(text)
    if spec.beliefs is not None:
        words = (["exchangeable"] if spec.beliefs.exchangeable else []) + [
            p.value for p in spec.beliefs.propositions]
        lines.append("beliefs: " + " ".join(words))
    return "\n".join(line.rstrip() for line in lines) + "\n"
