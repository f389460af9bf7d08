"""Plain-text measure specification files.

Grammar (UTF-8, one ``key=value`` per line, ``#`` starts a comment line)::

    file      := block
    block     := line*                      (all lines at one indentation)
    line      := key "=" value
               | ("component" | "base") ":" NEWLINE indented-block

    kind=atomic     points=<t1,t2,...>   weights=<w1,w2,...>
    kind=lebesgue   scale=<c>
    kind=logpower   beta=<b>             density log(2/(1-t))^-b dt
    kind=powerlog   s=<s>  alpha=<a>     density (1-t)^(s-1) log(2/(1-t))^-a dt
    kind=sum        one "component:" block per term, each holding
                    coefficient=<c> plus a nested measure
    kind=logweight  alpha=<a>  and a "base:" block
    kind=restrict   r=<r>      and a "base:" block

Nested blocks are indented deeper than their parent (four spaces when
written by :func:`dumps`).  Numbers are written with ``repr`` so a
dump/load round trip reproduces the measure exactly.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .errors import DomainError
from .measure import (
    Atomic,
    Lebesgue,
    LogPowerDensity,
    LogWeighted,
    Measure,
    PowerLogDensity,
    Restricted,
    WeightedSum,
)

__all__ = ["dumps", "loads", "dump", "load", "spec_key"]

_INDENT = "    "


def _num(x: float) -> str:
    return repr(float(x))


def _lines(mu: Measure, depth: int) -> list[str]:
    pad = _INDENT * depth
    if isinstance(mu, Atomic):
        return [
            f"{pad}kind=atomic",
            f"{pad}points={','.join(_num(t) for t in mu.points)}",
            f"{pad}weights={','.join(_num(w) for w in mu.weights)}",
        ]
    if isinstance(mu, Lebesgue):
        return [f"{pad}kind=lebesgue", f"{pad}scale={_num(mu.scale)}"]
    if isinstance(mu, LogPowerDensity):
        return [f"{pad}kind=logpower", f"{pad}beta={_num(mu.beta)}"]
    if isinstance(mu, PowerLogDensity):
        return [f"{pad}kind=powerlog", f"{pad}s={_num(mu.s)}", f"{pad}alpha={_num(mu.alpha)}"]
    if isinstance(mu, WeightedSum):
        out = [f"{pad}kind=sum"]
        for c, m in mu.components:
            out.append(f"{pad}component:")
            out.append(f"{pad}{_INDENT}coefficient={_num(c)}")
            out.extend(_lines(m, depth + 1))
        return out
    if isinstance(mu, LogWeighted):
        return [f"{pad}kind=logweight", f"{pad}alpha={_num(mu.alpha)}", f"{pad}base:"] + _lines(
            mu.base, depth + 1
        )
    if isinstance(mu, Restricted):
        return [f"{pad}kind=restrict", f"{pad}r={_num(mu.r)}", f"{pad}base:"] + _lines(
            mu.base, depth + 1
        )
    raise DomainError(f"cannot serialise {type(mu).__name__}")


def dumps(mu: Measure) -> str:
    return "\n".join(_lines(mu, 0)) + "\n"


def _tokenise(text: str):
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if "\t" in raw[: len(raw) - len(raw.lstrip())]:
            raise DomainError(f"line {lineno}: tabs are not allowed in indentation")
        indent = len(raw) - len(raw.lstrip(" "))
        out.append((indent, raw.strip(), lineno))
    return out


def _parse_block(tokens, pos, indent):
    """Collect ``key=value`` pairs and nested blocks at exactly ``indent``."""
    fields: dict[str, str] = {}
    children: list[tuple[str, dict, list]] = []
    while pos < len(tokens):
        ind, text, lineno = tokens[pos]
        if ind < indent:
            break
        if ind > indent:
            raise DomainError(f"line {lineno}: unexpected indentation")
        if text.endswith(":"):
            name = text[:-1].strip()
            if name not in ("component", "base"):
                raise DomainError(f"line {lineno}: unknown block {name!r}")
            if pos + 1 >= len(tokens) or tokens[pos + 1][0] <= indent:
                raise DomainError(f"line {lineno}: empty {name!r} block")
            sub_fields, sub_children, pos = _parse_block(tokens, pos + 1, tokens[pos + 1][0])
            children.append((name, sub_fields, sub_children))
            continue
        if "=" not in text:
            raise DomainError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in text.split("=", 1))
        if key in fields:
            raise DomainError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value
        pos += 1
    return fields, children, pos


def _floats(value: str) -> tuple[float, ...]:
    return tuple(float(v) for v in value.split(",") if v.strip())


def _build(fields: dict, children: list) -> Measure:
    kind = fields.get("kind")
    try:
        if kind == "atomic":
            return Atomic(_floats(fields.get("points", "")), _floats(fields.get("weights", "")))
        if kind == "lebesgue":
            return Lebesgue(float(fields.get("scale", 1.0)))
        if kind == "logpower":
            return LogPowerDensity(float(fields["beta"]))
        if kind == "powerlog":
            return PowerLogDensity(float(fields["s"]), float(fields.get("alpha", 0.0)))
        if kind == "sum":
            comps = []
            for name, f, ch in children:
                if name != "component":
                    raise DomainError("sum measures only take component blocks")
                f = dict(f)
                coef = float(f.pop("coefficient", 1.0))
                comps.append((coef, _build(f, ch)))
            return WeightedSum(tuple(comps))
        if kind in ("logweight", "restrict"):
            bases = [(f, ch) for name, f, ch in children if name == "base"]
            if len(bases) != 1:
                raise DomainError(f"{kind} needs exactly one base block")
            base = _build(*bases[0])
            if kind == "logweight":
                return LogWeighted(base, float(fields["alpha"]))
            return Restricted(base, float(fields["r"]))
    except KeyError as exc:
        raise DomainError(f"kind={kind}: missing field {exc.args[0]!r}") from None
    raise DomainError(f"unknown measure kind {kind!r}")


def loads(text: str) -> Measure:
    tokens = _tokenise(text)
    if not tokens:
        raise DomainError("empty measure specification")
    fields, children, pos = _parse_block(tokens, 0, tokens[0][0])
    if pos != len(tokens):
        raise DomainError(f"line {tokens[pos][2]}: trailing content")
    return _build(fields, children)


def dump(mu: Measure, path) -> None:
    Path(path).write_text(dumps(mu), encoding="utf-8")


def load(path) -> Measure:
    return loads(Path(path).read_text(encoding="utf-8"))


def spec_key(mu: Measure) -> str:
    """Stable hash of the serialised measure."""
    return hashlib.sha256(dumps(mu).encode("utf-8")).hexdigest()
