"""Reading and writing named spaces and maps.

Text syntax::

    # comments run to end of line
    space p { x0: 1/2, x1: 1/2 }
    space q { y0: 3/4, y1: 1/4 }
    map f : p -> q { y0 | x0 = 1, y0 | x1 = 1/2, y1 | x1 = 1/2 }

Map entries are ``target | source = value``; omitted entries are 0. Labels
that are not plain words (for example pair labels ``"(a,b)"``) are written
as JSON string literals. Every map must be measure-preserving between its
declared spaces.

The JSON mirror is an object with ``"spaces"`` and ``"maps"`` keys::

    {"spaces": {"p": {"x0": "1/2", "x1": "1/2"}, ...},
     "maps": {"f": {"src": "p", "tgt": "q",
                    "columns": {"x0": {"y0": "1"}, "x1": {...}}}}}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .core import FinStochError, Morphism, ProbSpace, StochMap, make_map, make_space


class DocumentError(Exception):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


class DocumentSyntaxError(DocumentError):
    pass


class ValidationError(DocumentError):
    pass


class UnresolvedReference(DocumentError):
    pass


@dataclass(frozen=True)
class DocMap:
    src: str
    tgt: str
    morphism: Morphism


@dataclass
class Document:
    spaces: dict[str, ProbSpace] = field(default_factory=dict)
    maps: dict[str, DocMap] = field(default_factory=dict)

    def space(self, name: str) -> ProbSpace:
        try:
            return self.spaces[name]
        except KeyError:
            raise UnresolvedReference(f"no space named {name!r}") from None

    def morphism(self, name: str) -> Morphism:
        try:
            return self.maps[name].morphism
        except KeyError:
            raise UnresolvedReference(f"no map named {name!r}") from None

    @classmethod
    def from_objects(cls, objects: dict) -> Document:
        """Bundle named spaces and morphisms; a morphism ``f`` brings spaces ``f.src``/``f.tgt``."""
        doc = cls()
        for name, obj in objects.items():
            if isinstance(obj, ProbSpace):
                doc.spaces[name] = obj
            elif isinstance(obj, Morphism):
                s, t = f"{name}.src", f"{name}.tgt"
                doc.spaces[s] = obj.src_dist
                doc.spaces[t] = obj.tgt_dist
                doc.maps[name] = DocMap(s, t, obj)
            else:
                raise TypeError(f"cannot store {type(obj).__name__} in a document")
        return doc

    def objects(self) -> dict:
        out: dict = dict(self.spaces)
        out.update({name: dm.morphism for name, dm in self.maps.items()})
        return out


# -- text format -------------------------------------------------------------

_WORD = r"[\w•.']+"
_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<string>\"(?:[^\"\\]|\\.)*\")"
    r"|(?P<number>\d+/\d+)"
    rf"|(?P<word>{_WORD})"
    r"|(?P<arrow>->)"
    r"|(?P<punct>[{}:,|=])"
)
_BARE = re.compile(rf"{_WORD}\Z")


@dataclass
class _Tok:
    kind: str
    text: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise DocumentSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        raw = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "string":
            try:
                value = json.loads(raw)
            except json.JSONDecodeError as e:
                raise DocumentSyntaxError(f"bad string literal: {e.msg}", line, col) from None
            toks.append(_Tok("string", raw, value, line, col))
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind if kind != "punct" else raw, raw, raw, line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _fail(self, what: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise DocumentSyntaxError(f"expected {what}, found {found}", t.line, t.col)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self._fail(repr(kind))
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def name(self, what: str = "a name") -> _Tok:
        # numerals double as labels, e.g. `space b { 0: 1/2, 1: 1/2 }`
        if self.tok.kind not in ("word", "string"):
            self._fail(what)
        t = self.tok
        self.i += 1
        return t

    def rational(self) -> Fraction:
        t = self.tok
        if t.kind == "number" or (t.kind == "word" and t.text.isdigit()):
            self.i += 1
            return Fraction(t.text)
        self._fail("a rational such as 1/2 or 1")

    def document(self) -> Document:
        doc = Document()
        while self.tok.kind != "eof":
            head = self.tok
            if head.kind == "word" and head.text == "space":
                self.i += 1
                self._space(doc, head)
            elif head.kind == "word" and head.text == "map":
                self.i += 1
                self._map(doc, head)
            else:
                self._fail("'space' or 'map'")
        return doc

    def _claim(self, doc: Document, name: _Tok):
        if name.value in doc.spaces or name.value in doc.maps:
            raise ValidationError(f"name {name.value!r} is declared twice", name.line, name.col)

    def _space(self, doc: Document, head: _Tok):
        name = self.name("a space name")
        self._claim(doc, name)
        self.expect("{")
        labels, probs = [], []
        while not self.accept("}"):
            lab = self.name("a label")
            self.expect(":")
            labels.append(lab.value)
            probs.append(self.rational())
            if not self.accept(","):
                self.expect("}")
                break
        try:
            doc.spaces[name.value] = make_space(labels, probs)
        except FinStochError as e:
            raise ValidationError(f"space {name.value!r}: {e}", head.line, head.col) from None

    def _map(self, doc: Document, head: _Tok):
        name = self.name("a map name")
        self._claim(doc, name)
        self.expect(":")
        src = self.name("a source space")
        self.expect("arrow")
        tgt = self.name("a target space")
        entries: dict[tuple[str, str], Fraction] = {}
        self.expect("{")
        while not self.accept("}"):
            y = self.name("a target label")
            self.expect("|")
            x = self.name("a source label")
            self.expect("=")
            v = self.rational()
            if (y.value, x.value) in entries:
                raise ValidationError(f"entry {y.value} | {x.value} given twice", y.line, y.col)
            entries[(y.value, x.value)] = v
            if not self.accept(","):
                self.expect("}")
                break
        for ref in (src, tgt):
            if ref.value not in doc.spaces:
                raise UnresolvedReference(
                    f"map {name.value!r} refers to undeclared space {ref.value!r}",
                    ref.line, ref.col)
        doc.maps[name.value] = _build_map(name.value, doc.spaces, src.value, tgt.value,
                                          entries, head.line, head.col)


def _build_map(name, spaces, src, tgt, entries, line=None, col=None) -> DocMap:
    p, q = spaces[src], spaces[tgt]
    for (y, x) in entries:
        if y not in q.labels or x not in p.labels:
            raise ValidationError(
                f"map {name!r}: entry {y} | {x} uses a label outside {tgt!r} / {src!r}",
                line, col)
    rows = [[entries.get((y, x), Fraction(0)) for x in p.labels] for y in q.labels]
    try:
        return DocMap(src, tgt, Morphism(make_map(p.labels, q.labels, rows), p, q))
    except FinStochError as e:
        raise ValidationError(f"map {name!r}: {e}", line, col) from None


def parse_document(text: str) -> Document:
    """Parse the text syntax, or the JSON mirror if the input starts with ``{``."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return _Parser(text).document()


def _quote(s: str) -> str:
    return s if _BARE.match(s) and s not in ("space", "map") else json.dumps(s, ensure_ascii=False)


def format_map_entries(f: StochMap) -> str:
    return ", ".join(f"{_quote(y)} | {_quote(x)} = {v}"
                     for j, y in enumerate(f.tgt) for i, x in enumerate(f.src)
                     if (v := f.matrix[j][i]) != 0)


def print_document(doc: Document) -> str:
    lines = []
    for name, p in doc.spaces.items():
        body = ", ".join(f"{_quote(lab)}: {v}" for lab, v in p.items())
        lines.append(f"space {_quote(name)} {{ {body} }}")
    for name, dm in doc.maps.items():
        body = format_map_entries(dm.morphism.map)
        lines.append(f"map {_quote(name)} : {_quote(dm.src)} -> {_quote(dm.tgt)} {{ {body} }}")
    return "\n".join(lines) + "\n"


# -- JSON mirror -------------------------------------------------------------


def _json_rational(v, where: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValidationError(f"{where}: expected an integer or \"a/b\" string, got {v!r}")
    try:
        return Fraction(v)
    except ValueError:
        raise ValidationError(f"{where}: {v!r} is not a rational") from None


def document_from_json(data) -> Document:
    if not isinstance(data, dict) or not set(data) <= {"spaces", "maps"}:
        raise ValidationError("top level must be an object with 'spaces' and 'maps' keys")
    doc = Document()
    for name, body in data.get("spaces", {}).items():
        if not isinstance(body, dict):
            raise ValidationError(f"space {name!r} must be an object of label: rational")
        probs = [_json_rational(v, f"space {name!r}") for v in body.values()]
        try:
            doc.spaces[name] = make_space(list(body), probs)
        except FinStochError as e:
            raise ValidationError(f"space {name!r}: {e}") from None
    for name, body in data.get("maps", {}).items():
        if name in doc.spaces:
            raise ValidationError(f"name {name!r} is declared twice")
        if not isinstance(body, dict) or not {"src", "tgt"} <= set(body):
            raise ValidationError(f"map {name!r} needs 'src' and 'tgt'")
        for ref in (body["src"], body["tgt"]):
            if ref not in doc.spaces:
                raise UnresolvedReference(f"map {name!r} refers to undeclared space {ref!r}")
        entries = {}
        for x, col in body.get("columns", {}).items():
            for y, v in col.items():
                entries[(y, x)] = _json_rational(v, f"map {name!r}")
        doc.maps[name] = _build_map(name, doc.spaces, body["src"], body["tgt"], entries)
    return doc


def parse_json(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None
    return document_from_json(data)


def map_columns_json(f: StochMap) -> dict:
    return {x: {y: str(v) for j, y in enumerate(f.tgt) if (v := f.matrix[j][i]) != 0}
            for i, x in enumerate(f.src)}


def document_to_json(doc: Document) -> dict:
    return {
        "spaces": {name: {lab: str(v) for lab, v in p.items()}
                   for name, p in doc.spaces.items()},
        "maps": {name: {"src": dm.src, "tgt": dm.tgt,
                        "columns": map_columns_json(dm.morphism.map)}
                 for name, dm in doc.maps.items()},
    }
