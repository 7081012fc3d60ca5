"""Controlled-language command understanding.

A command runs through four steps: tokenize against a closed lexicon, build a
dependency model from a small attachment grammar, canonicalize the tree to a
deterministic string, and match that string against a template registry to
instantiate an ``Instruction`` (verb plus ordered arguments).

The grammar is documented in docs/grammar.md; the lexicon and the template
registry are plain data files (see vgpn/data/) validated at load time with
line-precise errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .errors import (
    AmbiguousRegistry,
    EmptyCommand,
    LexiconError,
    MultipleVerbs,
    NoTemplate,
    NoVerb,
    TemplateRegistryError,
    UngrammaticalCommand,
    UnknownWord,
)

POS_TAGS = frozenset("vnramqpd")
RELATIONS = frozenset({"HED", "VOB", "ATT", "ADV", "CMP"})
DEMONSTRATIVES = frozenset({"that", "this", "there", "here"})

#: parent value marking the dependency root
ROOT = -1

_NUMERAL_RE = re.compile(r"^\d+$")
_MARKER_RE = re.compile(r"^([vnramqpd])__(HED|VOB|ATT|ADV|CMP)__(\d+)$")
_PUNCT = ".,!?;:"


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    index: int


@dataclass(frozen=True)
class DepNode:
    token_index: int
    relation: str
    parent: int  # token index, or ROOT


@dataclass(frozen=True)
class DependencyModel:
    tokens: tuple[Token, ...]
    nodes: tuple[DepNode, ...]


@dataclass(frozen=True)
class InstructionTemplate:
    name: str
    pattern: str
    verb_slot: str
    arg_slots: tuple[str, ...]


@dataclass(frozen=True)
class Instruction:
    """Verb plus ordered argument lemmas; ``tags`` carries the pos tag of each
    argument (parallel to ``args``) so later stages can tell nouns,
    adjectives and demonstratives apart without re-parsing."""

    verb: str
    args: tuple[str, ...] = ()
    tags: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.verb}({', '.join(self.args)})"


@dataclass(frozen=True)
class GestureDecision:
    required: bool
    case: str  # non-spatial | no-demonstrative | unique-object | gesture-required
    reason: str


# --- lexicon -----------------------------------------------------------------

class Lexicon:
    """surface -> (lemma, pos) table for the closed command vocabulary."""

    def __init__(self, entries: dict[str, tuple[str, str]]):
        self.entries = dict(entries)

    def lookup(self, surface: str) -> tuple[str, str] | None:
        return self.entries.get(surface)

    def lemmas_with_pos(self, pos: str) -> frozenset[str]:
        return frozenset(lemma for lemma, p in self.entries.values() if p == pos)

    @property
    def demonstratives(self) -> frozenset[str]:
        return self.lemmas_with_pos("r")

    @property
    def nouns(self) -> frozenset[str]:
        return self.lemmas_with_pos("n")


def _data_text(name: str) -> str:
    return resources.files("vgpn.data").joinpath(name).read_text(encoding="utf-8")


def parse_lexicon(text: str, path: str = "<lexicon>") -> Lexicon:
    entries: dict[str, tuple[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = raw.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise LexiconError(path, lineno,
                               f"expected 3 tab-separated fields, got {len(parts)}")
        surface, lemma, pos = (p.strip() for p in parts)
        if not surface or not lemma:
            raise LexiconError(path, lineno, "empty surface or lemma")
        if pos not in POS_TAGS:
            raise LexiconError(path, lineno, f"unknown pos tag {pos!r}")
        if surface in entries:
            raise LexiconError(path, lineno, f"duplicate surface {surface!r}")
        entries[surface] = (lemma, pos)
    return Lexicon(entries)


def load_lexicon(path: str | None = None) -> Lexicon:
    """Load a lexicon file; with no path, the packaged default."""
    if path is None:
        return parse_lexicon(_data_text("lexicon.tsv"), "vgpn/data/lexicon.tsv")
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read(), path)


# --- tokenizer ---------------------------------------------------------------

def tokenize(text: str, lexicon: Lexicon) -> list[Token]:
    """Split a command into lexicon tokens; bare integers are numerals."""
    if not text or not text.strip():
        raise EmptyCommand("empty command")
    tokens: list[Token] = []
    for word in text.split():
        word = word.strip(_PUNCT).lower()
        if not word:
            continue
        if _NUMERAL_RE.match(word):
            entry = (word, "m")
        else:
            entry = lexicon.lookup(word)
            if entry is None:
                raise UnknownWord(word)
        tokens.append(Token(word, entry[0], entry[1], len(tokens)))
    if not tokens:
        raise EmptyCommand("command contains no words")
    return tokens


# --- attachment grammar ------------------------------------------------------

@dataclass(frozen=True)
class AttachmentRule:
    """One attachment option for a pos tag; ``host`` names where the token
    hangs: root, verb, verb_if_no_object, next_noun, or next_unit."""

    pos: str
    relation: str
    host: str


DEFAULT_GRAMMAR: tuple[AttachmentRule, ...] = (
    AttachmentRule("v", "HED", "root"),
    AttachmentRule("n", "VOB", "verb"),
    AttachmentRule("r", "ATT", "next_noun"),
    AttachmentRule("r", "VOB", "verb_if_no_object"),
    AttachmentRule("a", "ATT", "next_noun"),
    AttachmentRule("m", "ATT", "next_unit"),
    AttachmentRule("q", "CMP", "verb"),
    AttachmentRule("d", "ADV", "verb"),
)


def parse_dependencies(tokens: list[Token],
                       grammar: tuple[AttachmentRule, ...] = DEFAULT_GRAMMAR,
                       ) -> DependencyModel:
    """Attach every non-preposition token under the single verb head.

    Prepositions (pos p) are dropped.  The verb is the HED root; an object
    noun attaches VOB; demonstratives and adjectives attach ATT to the next
    noun (a trailing demonstrative becomes the verb's VOB when the verb has
    no object); numerals attach ATT to the next unit; units attach CMP and
    direction adverbs ADV to the verb.
    """
    verbs = [t for t in tokens if t.pos == "v"]
    if not verbs:
        raise NoVerb("command has no verb")
    if len(verbs) > 1:
        raise MultipleVerbs(f"command has {len(verbs)} verbs")
    verb = verbs[0]

    nouns = [t for t in tokens if t.pos == "n"]
    units = [t for t in tokens if t.pos == "q"]
    rules_by_pos: dict[str, list[AttachmentRule]] = {}
    for rule in grammar:
        rules_by_pos.setdefault(rule.pos, []).append(rule)

    nodes: list[DepNode] = []
    verb_has_object = False

    def next_of(pool: list[Token], index: int) -> Token | None:
        for cand in pool:
            if cand.index > index:
                return cand
        return None

    for tok in tokens:
        if tok.pos == "p":
            continue
        attached = False
        for rule in rules_by_pos.get(tok.pos, []):
            if rule.host == "root":
                nodes.append(DepNode(tok.index, rule.relation, ROOT))
                attached = True
            elif rule.host == "verb":
                if tok.pos == "n":
                    if verb_has_object:
                        break  # a second object noun has no rule
                    verb_has_object = True
                nodes.append(DepNode(tok.index, rule.relation, verb.index))
                attached = True
            elif rule.host == "verb_if_no_object":
                if nouns or verb_has_object:
                    continue
                verb_has_object = True
                nodes.append(DepNode(tok.index, rule.relation, verb.index))
                attached = True
            elif rule.host == "next_noun":
                host = next_of(nouns, tok.index)
                if host is None:
                    continue
                nodes.append(DepNode(tok.index, rule.relation, host.index))
                attached = True
            elif rule.host == "next_unit":
                host = next_of(units, tok.index)
                if host is None:
                    continue
                nodes.append(DepNode(tok.index, rule.relation, host.index))
                attached = True
            if attached:
                break
        if not attached:
            raise UngrammaticalCommand(
                f"no grammar rule covers {tok.surface!r} (pos {tok.pos})")

    model = DependencyModel(tuple(tokens), tuple(nodes))
    validate_model(model)
    return model


def validate_model(model: DependencyModel) -> None:
    """Check the DependencyModel invariants; raises UngrammaticalCommand."""
    heads = [n for n in model.nodes if n.relation == "HED"]
    if len(heads) != 1 or heads[0].parent != ROOT:
        raise UngrammaticalCommand("model must have exactly one HED root")
    roots = [n for n in model.nodes if n.parent == ROOT]
    if len(roots) != 1:
        raise UngrammaticalCommand("model must have a single root")
    seen = [n.token_index for n in model.nodes]
    if len(seen) != len(set(seen)):
        raise UngrammaticalCommand("a token appears twice in the model")
    expected = {t.index for t in model.tokens if t.pos != "p"}
    if set(seen) != expected:
        raise UngrammaticalCommand("model must cover every non-preposition token")
    by_index = {n.token_index: n for n in model.nodes}
    for node in model.nodes:
        if node.parent != ROOT and node.parent not in by_index:
            raise UngrammaticalCommand("node attached to a missing parent")
    # acyclicity: walk each node to the root
    for node in model.nodes:
        hops = 0
        cur = node
        while cur.parent != ROOT:
            cur = by_index[cur.parent]
            hops += 1
            if hops > len(model.nodes):
                raise UngrammaticalCommand("dependency model contains a cycle")


# --- canonical string --------------------------------------------------------

def canonicalize(model: DependencyModel) -> tuple[str, dict[str, int]]:
    """Render the tree as its canonical string and map each marker to the
    token index it names.

    Markers are ``pos__REL__k`` where k counts occurrences of that pos tag in
    depth-first order (children visited in surface order), so equal trees
    always produce byte-identical strings.
    """
    children: dict[int, list[DepNode]] = {}
    root = None
    for node in model.nodes:
        if node.parent == ROOT:
            root = node
        else:
            children.setdefault(node.parent, []).append(node)
    assert root is not None
    for kids in children.values():
        kids.sort(key=lambda n: n.token_index)

    counters: dict[str, int] = {}
    markers: dict[str, int] = {}

    def walk(node: DepNode) -> str:
        tok = model.tokens[node.token_index]
        k = counters.get(tok.pos, 0)
        counters[tok.pos] = k + 1
        marker = f"{tok.pos}__{node.relation}__{k}"
        markers[marker] = node.token_index
        kids = children.get(node.token_index, [])
        if not kids:
            return marker
        return marker + " (" + " ".join(walk(kid) for kid in kids) + ")"

    return walk(root), markers


def canonical_string(model: DependencyModel) -> str:
    return canonicalize(model)[0]


# --- template registry -------------------------------------------------------

def _pattern_markers(pattern: str) -> list[str]:
    return pattern.replace("(", " ").replace(")", " ").split()


class TemplateRegistry:
    def __init__(self, templates: list[InstructionTemplate]):
        self.templates = list(templates)
        self.by_pattern = {t.pattern: t for t in self.templates}

    def match(self, canonical: str) -> InstructionTemplate:
        t = self.by_pattern.get(canonical)
        if t is None:
            raise NoTemplate(canonical)
        return t


def parse_templates(text: str, path: str = "<templates>") -> TemplateRegistry:
    templates: list[InstructionTemplate] = []
    record: dict[str, str] = {}
    record_line = 0
    patterns_seen: dict[str, int] = {}

    def finish(lineno: int) -> None:
        if not record:
            return
        for key in ("template", "pattern", "verb_slot"):
            if key not in record:
                raise TemplateRegistryError(path, record_line,
                                            f"record missing {key!r}")
        name = record["template"]
        pattern = record["pattern"]
        verb_slot = record["verb_slot"]
        arg_slots = tuple(record.get("arg_slots", "").split())
        in_pattern = set(_pattern_markers(pattern))
        for marker in in_pattern:
            if not _MARKER_RE.match(marker):
                raise TemplateRegistryError(path, record_line,
                                            f"bad marker {marker!r} in pattern")
        if pattern.count("(") != pattern.count(")"):
            raise TemplateRegistryError(path, record_line,
                                        "unbalanced parentheses in pattern")
        for marker in (verb_slot, *arg_slots):
            if marker not in in_pattern:
                raise TemplateRegistryError(
                    path, record_line, f"slot {marker!r} not in pattern")
        if not verb_slot.startswith("v__"):
            raise TemplateRegistryError(path, record_line,
                                        "verb_slot must have pos v")
        if pattern in patterns_seen:
            raise AmbiguousRegistry(
                path, record_line,
                f"pattern already defined at line {patterns_seen[pattern]}")
        patterns_seen[pattern] = record_line
        templates.append(InstructionTemplate(name, pattern, verb_slot, arg_slots))
        record.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            finish(lineno)
            continue
        if ":" not in line:
            raise TemplateRegistryError(path, lineno, "expected 'key: value'")
        key, _, value = line.partition(":")
        key = key.strip()
        if key not in ("template", "pattern", "verb_slot", "arg_slots"):
            raise TemplateRegistryError(path, lineno, f"unknown key {key!r}")
        if not record:
            record_line = lineno
        if key in record:
            raise TemplateRegistryError(path, lineno, f"duplicate key {key!r}")
        record[key] = value.strip()
    finish(len(text.splitlines()) + 1)
    if not templates:
        raise TemplateRegistryError(path, 1, "registry defines no templates")
    return TemplateRegistry(templates)


def load_templates(path: str | None = None) -> TemplateRegistry:
    """Load a template registry file; with no path, the packaged default."""
    if path is None:
        return parse_templates(_data_text("templates.txt"),
                               "vgpn/data/templates.txt")
    with open(path, encoding="utf-8") as fh:
        return parse_templates(fh.read(), path)


def match_template(canonical: str, registry: TemplateRegistry) -> InstructionTemplate:
    return registry.match(canonical)


def instantiate(template: InstructionTemplate, model: DependencyModel) -> Instruction:
    """Fill the template's slots with the lemmas at the matched tree positions."""
    canonical, markers = canonicalize(model)
    if canonical != template.pattern:
        raise NoTemplate(canonical)
    verb_tok = model.tokens[markers[template.verb_slot]]
    args = []
    tags = []
    for slot in template.arg_slots:
        tok = model.tokens[markers[slot]]
        args.append(tok.lemma)
        tags.append(tok.pos)
    return Instruction(verb_tok.lemma, tuple(args), tuple(tags))


def parse_command(text: str, lexicon: Lexicon, registry: TemplateRegistry) -> Instruction:
    """Full chain: tokenize, parse, canonicalize, match, instantiate."""
    tokens = tokenize(text, lexicon)
    model = parse_dependencies(tokens)
    canonical = canonical_string(model)
    template = registry.match(canonical)
    return instantiate(template, model)


# --- instruction semantics ---------------------------------------------------

def description_of(instr: Instruction) -> tuple[str, frozenset[str]] | None:
    """The object description carried by an instruction: its noun category
    plus adjective properties, or None when it names no object."""
    category = None
    props = set()
    for arg, tag in zip(instr.args, instr.tags):
        if tag == "n" and category is None:
            category = arg
        elif tag == "a":
            props.add(arg)
    if category is None:
        return None
    return category, frozenset(props)


def instruction_kind(instr: Instruction) -> str:
    """Classify an instruction for execution: navigate, move, turn, or stop.

    ``goto`` with only a direction argument ("go forward") behaves as a
    relative move; every other goto is a navigation command.
    """
    if instr.verb == "stop":
        return "stop"
    if instr.verb == "turn":
        return "turn"
    if instr.verb == "move":
        return "move"
    if instr.verb == "goto":
        if instr.args and all(tag in ("d", "m", "q") for tag in instr.tags):
            return "move"
        return "navigate"
    return "navigate"


def requires_gesture(instr: Instruction, scene,
                     demonstratives: frozenset[str] = DEMONSTRATIVES,
                     ) -> GestureDecision:
    """Decide whether resolving this instruction needs a pointing gesture.

    Only spatial goto commands can need one.  No gesture when the command
    carries no demonstrative (case a, which also covers turn/move/stop:
    their referents are never deictic), or when its object description
    matches exactly one scene object (case b); otherwise the gesture is
    required.
    """
    if instruction_kind(instr) != "navigate":
        return GestureDecision(False, "no-demonstrative",
                               f"{instr.verb} executes without a spatial referent")
    has_dem = any(arg in demonstratives for arg in instr.args)
    if not has_dem:
        return GestureDecision(False, "no-demonstrative",
                               "command contains no demonstrative pronoun")
    desc = description_of(instr)
    if desc is not None:
        from .world import is_unique
        if is_unique(scene, desc[0], desc[1]):
            return GestureDecision(False, "unique-object",
                                   f"described object {desc[0]!r} is unique in the scene")
    return GestureDecision(True, "gesture-required",
                           "demonstrative without a uniquely matching description")
