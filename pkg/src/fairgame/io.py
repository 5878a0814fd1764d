"""Economy documents: a small JSON format for finite economies.

A document looks like::

    {
      "name": "example",
      "agents": ["1", "2"],
      "actions": [["a1", "a2"], ["b1", "b2"]],
      "reference": ["a1", "b1"],
      "surplus": [{"profile": {"1": "a1", "2": "b1"}, "value": 0}, ...],
      "scheme": "shapley",
      "costs": {"2": {"b2": 1.5}},
      "payoffs": [{"profile": {...}, "pay": [0, 0]}, ...],
      "expect": {"equilibria": [["a2", "b2"]]}
    }

Every profile needs exactly one surplus entry. ``payoffs`` (a full custom pay
table) is needed only by the ``table`` scheme; ``expect`` holds reference
results that the corpus runner checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .economy import Economy
from .errors import LoadError, SchemeError
from .payschemes import CustomTable, Shapley, parse_scheme


@dataclass
class EconomyDocument:
    economy: Economy
    scheme: object = field(default_factory=Shapley)
    costs: tuple = None
    name: str = ""
    expect: dict = field(default_factory=dict)


def _require(doc, key, kind, where="document"):
    if key not in doc:
        raise LoadError(f"{where}: missing field {key!r}")
    if not isinstance(doc[key], kind):
        raise LoadError(f"{where}: field {key!r} has the wrong type")
    return doc[key]


def _profile(entry, agents, actions, where):
    prof = _require(entry, "profile", dict, where)
    if set(prof) != set(agents):
        raise LoadError(f"{where}: profile must name each agent exactly once, got {sorted(prof)}")
    x = []
    for i, a in enumerate(agents):
        label = str(prof[a])
        if label not in actions[i]:
            raise LoadError(f"{where}: unknown action {label!r} for agent {a}")
        x.append(actions[i].index(label))
    return tuple(x)


def _fill(entries, key, agents, actions, tail, what):
    shape = tuple(len(a) for a in actions)
    table = np.full(shape + tail, np.nan)
    seen = np.zeros(shape, dtype=bool)
    for k, entry in enumerate(entries):
        where = f"{what}[{k}]"
        if not isinstance(entry, dict):
            raise LoadError(f"{where}: entries must be objects")
        x = _profile(entry, agents, actions, where)
        if seen[x]:
            raise LoadError(f"{where}: duplicate entry for {_describe(x, agents, actions)}")
        value = entry.get(key)
        try:
            value = np.array(value, dtype=float)
        except (TypeError, ValueError):
            raise LoadError(f"{where}: {key!r} must be numeric") from None
        if value.shape != tail:
            raise LoadError(f"{where}: {key!r} must have shape {tail or 'scalar'}")
        table[x] = value
        seen[x] = True
    missing = np.argwhere(~seen)
    if len(missing):
        x = tuple(int(k) for k in missing[0])
        raise LoadError(f"{what}: missing entry for profile {_describe(x, agents, actions)}")
    return table


def _describe(x, agents, actions):
    return "(" + ", ".join(f"{a}={actions[i][k]}" for i, (a, k) in enumerate(zip(agents, x))) + ")"


def from_dict(doc: dict) -> EconomyDocument:
    if not isinstance(doc, dict):
        raise LoadError("document must be a JSON object")
    agents = [str(a) for a in _require(doc, "agents", list)]
    actions = [[str(a) for a in acts] for acts in _require(doc, "actions", list)]
    if len(actions) != len(agents):
        raise LoadError("document: one action list per agent is required")
    ref_labels = _require(doc, "reference", list)
    if len(ref_labels) != len(agents):
        raise LoadError("document: reference must list one action per agent")
    reference = []
    for i, r in enumerate(ref_labels):
        if str(r) not in actions[i]:
            raise LoadError(f"document: reference action {r!r} is not an action of agent {agents[i]}")
        reference.append(actions[i].index(str(r)))
    surplus = _fill(_require(doc, "surplus", list), "value", agents, actions, (), "surplus")
    try:
        e = Economy(actions, surplus, reference, agents)
    except ValueError as exc:
        raise LoadError(f"document: {exc}") from None

    payoffs = None
    if "payoffs" in doc:
        payoffs = _fill(_require(doc, "payoffs", list), "pay", agents, actions, (len(agents),), "payoffs")
    try:
        scheme = parse_scheme(str(doc.get("scheme", "shapley")), payoffs)
    except SchemeError as exc:
        raise LoadError(f"document: {exc}") from None

    costs = None
    if "costs" in doc:
        raw = _require(doc, "costs", dict)
        unknown = set(raw) - set(agents)
        if unknown:
            raise LoadError(f"costs: unknown agents {sorted(unknown)}")
        costs = []
        for i, a in enumerate(agents):
            c = raw.get(a, {})
            if not isinstance(c, dict):
                raise LoadError(f"costs: agent {a} must map action labels to costs")
            bad = set(c) - set(actions[i])
            if bad:
                raise LoadError(f"costs: unknown actions {sorted(bad)} for agent {a}")
            vec = [float(c.get(label, 0.0)) for label in actions[i]]
            if vec[reference[i]] != 0:
                raise LoadError(f"costs: agent {a} has nonzero cost at its reference action")
            if any(v < 0 for v in vec):
                raise LoadError(f"costs: agent {a} has a negative cost")
            costs.append(tuple(vec))
        costs = tuple(costs)
    return EconomyDocument(e, scheme, costs, str(doc.get("name", "")), dict(doc.get("expect", {})))


def to_dict(d: EconomyDocument) -> dict:
    e = d.economy

    def prof(x):
        return {a: e.actions[i][k] for i, (a, k) in enumerate(zip(e.agents, x))}

    out = {
        "name": d.name,
        "agents": list(e.agents),
        "actions": [list(a) for a in e.actions],
        "reference": [e.actions[i][r] for i, r in enumerate(e.reference)],
        "surplus": [{"profile": prof(x), "value": float(e.surplus[x])} for x in e.profiles()],
        "scheme": str(d.scheme),
    }
    if isinstance(d.scheme, CustomTable):
        out["payoffs"] = [
            {"profile": prof(x), "pay": [float(v) for v in d.scheme.payoffs[x]]} for x in e.profiles()
        ]
    if d.costs is not None:
        out["costs"] = {
            a: {e.actions[i][k]: float(v) for k, v in enumerate(d.costs[i]) if v != 0}
            for i, a in enumerate(e.agents)
        }
    if d.expect:
        out["expect"] = d.expect
    return out


def loads(text: str) -> EconomyDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def dumps(d: EconomyDocument) -> str:
    """JSON text with one line per top-level field or table entry."""
    parts = []
    for key, value in to_dict(d).items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            rows = ",\n    ".join(json.dumps(v) for v in value)
            parts.append(f'  {json.dumps(key)}: [\n    {rows}\n  ]')
        else:
            parts.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(parts) + "\n}"


def load_economy(path) -> EconomyDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise LoadError(f"{path}: {exc.strerror}") from None
    try:
        return loads(text)
    except LoadError as exc:
        raise LoadError(f"{path}: {exc}") from None


def save_economy(d: EconomyDocument, path) -> None:
    Path(path).write_text(dumps(d) + "\n")


def corpus_names() -> list:
    return sorted(p.name[:-5] for p in resources.files("fairgame").joinpath("corpus").iterdir()
                  if p.name.endswith(".econ"))


def load_corpus(name: str) -> EconomyDocument:
    """Load a bundled document by name (``table1``, ``tax``, ...)."""
    res = resources.files("fairgame").joinpath("corpus").joinpath(f"{name}.econ")
    if not res.is_file():
        raise LoadError(f"no bundled document {name!r}; available: {', '.join(corpus_names())}")
    try:
        return loads(res.read_text())
    except LoadError as exc:
        raise LoadError(f"{name}.econ: {exc}") from None


def resolve(spec: str) -> EconomyDocument:
    """A file path, or the name of a bundled document."""
    p = Path(spec)
    if p.exists():
        return load_economy(p)
    name = p.name[:-5] if p.name.endswith(".econ") else p.name
    return load_corpus(name)
