import json
import logging
from pathlib import Path
from typing import Dict, List, Union

from models.hypergraph import Hypergraph
from models.set_system import SetSystem
from parsers.hypergraph_io import hypergraph_from_json
from solver.families import make_set_system, validate_member
from utils.errors import ParseError, SetSystemError

logger = logging.getLogger(__name__)


def parse_set_system(text: str) -> SetSystem:
    """
    Parse the set-system text format.

    The first non-comment line is `n <int>`; every later non-comment line is one
    member given as space-separated 1-based labels. `#` starts a comment.

    Args:
        text: File contents

    Returns:
        SetSystem: Canonical set system; duplicate lines are collapsed with a warning

    Raises:
        ParseError: Malformed header, non-integer token, empty or out-of-range member,
            always with the offending line number
    """
    n = None
    members: List[tuple] = []
    first_line: Dict[tuple, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise ParseError("expected header `n <int>`", lineno)
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"ground size {tokens[1]!r} is not an integer", lineno)
            if n < 1:
                raise ParseError(f"ground size must be positive, got {n}", lineno)
            continue
        try:
            labels = [int(tok) for tok in tokens]
        except ValueError:
            raise ParseError(f"member {line!r} has a non-integer label", lineno)
        member = validate_member(labels, n, lineno, error=ParseError)
        if member in first_line:
            logger.warning(f"line {lineno}: duplicate of line {first_line[member]} collapsed")
        else:
            first_line[member] = lineno
        members.append(member)
    if n is None:
        raise ParseError("missing header `n <int>`", 1)
    return make_set_system(n, members)


def serialize_set_system(family: SetSystem) -> str:
    """Canonical text form; parse_set_system(serialize_set_system(F)) == F"""
    lines = [f"n {family.ground_size}"]
    lines.extend(" ".join(str(e) for e in member) for member in family.members)
    return "\n".join(lines) + "\n"


def set_system_to_json(family: SetSystem) -> dict:
    return {"n": family.ground_size, "members": [list(m) for m in family.members]}


def set_system_from_json(data: dict) -> SetSystem:
    try:
        n = int(data["n"])
        members = data["members"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"set-system JSON needs integer `n` and list `members`: {exc}")
    try:
        return make_set_system(n, members)
    except SetSystemError as exc:
        raise ParseError(str(exc))


def load_input(path: Union[str, Path]) -> Union[SetSystem, Hypergraph]:
    """
    Read a set system (text or JSON) or a hypergraph JSON, deciding by content.

    A JSON object with `edges` is a hypergraph; one with `members` is a set system.
    Schema-1 documents of kind set_system or hypergraph are unwrapped first.
    """
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno)
        if not isinstance(data, dict):
            raise ParseError("JSON input must be an object", 1)
        # report documents written by `construct`, `filter` and `kneser`
        if data.get("kind") in ("set_system", "hypergraph") and isinstance(data.get("report"), dict):
            data = data["report"]
        if "edges" in data:
            return hypergraph_from_json(data)
        return set_system_from_json(data)
    return parse_set_system(text)
