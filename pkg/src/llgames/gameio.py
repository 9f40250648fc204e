"""Line-oriented text format for game trees.

Grammar (UTF-8, ``#`` starts a comment):

    player <id> <name>
    node <id> parent=<id|-> owner=<r|l|c> infoset=<iid|->
    action <nodeid> <label> child=<id> [prob=<float>]
    leaf <id> parent=<id> ur=<float> ul=<float>
    infoset <iid> owner=<r|l>

Utilities in the file are the raw (un-shifted) payoffs; loading re-applies
the non-negativity shift.  ``node`` lines with ``infoset=-`` get a fresh
singleton information set.
"""
from __future__ import annotations

from .trees import Action, GameTree, InfoSet, Node, validate


class GameParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class GameValidationError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = violations


def save_game(game: GameTree) -> str:
    lines = [f"# {game.name}", "player r rational", "player l limited"]
    for iset in sorted(game.infosets.values(), key=lambda i: i.id):
        lines.append(f"infoset {iset.id} owner={iset.owner}")
    for n in game.nodes:
        parent = "-" if n.parent is None else n.parent
        if n.is_leaf:
            ur = n.u_r + game.util_shift
            ul = n.u_l + game.util_shift
            lines.append(f"leaf {n.id} parent={parent} ur={ur!r} ul={ul!r}")
        else:
            iset = "-" if n.infoset is None else n.infoset
            lines.append(f"node {n.id} parent={parent} owner={n.owner} "
                         f"infoset={iset}")
    for n in game.nodes:
        for a in n.actions:
            line = f"action {n.id} {a.label} child={a.child}"
            if n.owner == "c":
                line += f" prob={a.prob!r}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def _kv(tokens, lineno):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise GameParseError(lineno, f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _int_or_none(value, lineno, what):
    if value == "-":
        return None
    try:
        return int(value)
    except ValueError:
        raise GameParseError(lineno, f"bad {what} id {value!r}") from None


def load_game(text: str, name: str = "game", check: bool = True) -> GameTree:
    nodes: dict[int, Node] = {}
    infosets: dict[int, InfoSet] = {}
    actions: list[tuple[int, int, str, int, float | None]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        try:
            if kind == "player":
                continue
            elif kind == "infoset":
                iid = int(tokens[1])
                kv = _kv(tokens[2:], lineno)
                owner = kv.get("owner")
                if owner not in ("r", "l"):
                    raise GameParseError(lineno, f"bad infoset owner {owner!r}")
                infosets[iid] = InfoSet(iid, owner)
            elif kind == "node":
                nid = int(tokens[1])
                kv = _kv(tokens[2:], lineno)
                owner = kv.get("owner")
                if owner not in ("r", "l", "c"):
                    raise GameParseError(lineno, f"bad owner {owner!r}")
                parent = _int_or_none(kv.get("parent", "-"), lineno, "parent")
                iset = _int_or_none(kv.get("infoset", "-"), lineno, "infoset")
                if nid in nodes:
                    raise GameParseError(lineno, f"duplicate node id {nid}")
                nodes[nid] = Node(nid, parent, owner, iset)
            elif kind == "leaf":
                nid = int(tokens[1])
                kv = _kv(tokens[2:], lineno)
                parent = _int_or_none(kv.get("parent", "-"), lineno, "parent")
                if nid in nodes:
                    raise GameParseError(lineno, f"duplicate node id {nid}")
                nodes[nid] = Node(nid, parent, None,
                                  u_r=float(kv["ur"]), u_l=float(kv["ul"]))
            elif kind == "action":
                nid = int(tokens[1])
                label = tokens[2]
                kv = _kv(tokens[3:], lineno)
                child = int(kv["child"])
                prob = float(kv["prob"]) if "prob" in kv else None
                actions.append((lineno, nid, label, child, prob))
            else:
                raise GameParseError(lineno, f"unknown directive {kind!r}")
        except (KeyError, ValueError, IndexError) as exc:
            if isinstance(exc, GameParseError):
                raise
            raise GameParseError(lineno, f"malformed {kind} line: {exc}") from None

    for lineno, nid, label, child, prob in actions:
        if nid not in nodes:
            raise GameParseError(lineno, f"action references unknown node {nid}")
        if child not in nodes:
            raise GameParseError(lineno, f"action references unknown child {child}")
        node = nodes[nid]
        if node.owner == "c" and prob is None:
            raise GameParseError(lineno, f"chance action at node {nid} needs prob=")
        node.actions.append(Action(label, child, prob))

    if not nodes:
        raise GameParseError(0, "empty game file")
    ids = sorted(nodes)
    if ids != list(range(len(ids))):
        raise GameParseError(0, "node ids must be dense 0..n-1")
    if nodes[0].parent is not None:
        raise GameParseError(0, "node 0 must be the root (parent=-)")
    for nid in ids[1:]:
        parent = nodes[nid].parent
        if parent is None or not 0 <= parent < nid:
            raise GameParseError(0, f"node {nid} must have parent < {nid}")

    # Auto-create singleton infosets for decision nodes declared without one.
    next_iid = max(infosets, default=-1) + 1
    for n in (nodes[i] for i in ids):
        if n.owner in ("r", "l") and n.infoset is None:
            infosets[next_iid] = InfoSet(next_iid, n.owner)
            n.infoset = next_iid
            next_iid += 1
    for n in (nodes[i] for i in ids):
        if n.owner in ("r", "l"):
            if n.infoset not in infosets:
                raise GameParseError(0, f"node {n.id} references unknown "
                                        f"infoset {n.infoset}")
            infosets[n.infoset].nodes.append(n.id)
    for iset in infosets.values():
        if iset.nodes:
            iset.labels = tuple(a.label for a in nodes[iset.nodes[0]].actions)

    game = GameTree([nodes[i] for i in ids],
                    {i: s for i, s in infosets.items() if s.nodes}, name=name)
    if check:
        violations = validate(game)
        if violations:
            raise GameValidationError(violations)
    return game


def games_equal(a: GameTree, b: GameTree) -> bool:
    """Structural equality: same shape, owners, infoset partition, payoffs."""
    if len(a) != len(b):
        return False
    for na, nb in zip(a.nodes, b.nodes):
        if (na.parent, na.owner) != (nb.parent, nb.owner):
            return False
        if [(x.label, x.child, x.prob) for x in na.actions] != \
           [(x.label, x.child, x.prob) for x in nb.actions]:
            return False
        if na.is_leaf and (abs(na.u_r + a.util_shift - nb.u_r - b.util_shift) > 1e-12
                           or abs(na.u_l + a.util_shift - nb.u_l - b.util_shift) > 1e-12):
            return False
    part_a = {tuple(i.nodes) for i in a.infosets.values()}
    part_b = {tuple(i.nodes) for i in b.infosets.values()}
    return part_a == part_b
