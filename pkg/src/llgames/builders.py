"""Built-in poker games: Kuhn and the two-round KJ game.

Both games are zero-sum with antes of 1.  ``rational_player`` selects which
seat (1 or 2) is the rational committing player 'r'; the other seat becomes
the limited-lookahead player 'l'.
"""
from __future__ import annotations

from itertools import permutations

from .trees import Action, GameTree, InfoSet, Node

JACK, QUEEN, KING = 0, 1, 2
CARD_NAMES = {0: "J", 1: "Q", 2: "K"}


class TreeBuilder:
    """Mutable helper for assembling a GameTree with preorder node ids."""

    def __init__(self, rational_player: int = 1):
        if rational_player not in (1, 2):
            raise ValueError("rational_player must be 1 or 2")
        self.rational = rational_player
        self.nodes: list[Node] = []
        self.infosets: dict[int, InfoSet] = {}
        self._infoset_keys: dict[tuple, int] = {}

    def owner_of(self, seat: int) -> str:
        return "r" if seat == self.rational else "l"

    def infoset_for(self, key: tuple, owner: str, labels: tuple[str, ...]) -> int:
        if key not in self._infoset_keys:
            iid = len(self._infoset_keys)
            self._infoset_keys[key] = iid
            self.infosets[iid] = InfoSet(iid, owner, [], labels)
        return self._infoset_keys[key]

    def add_decision(self, parent: int | None, seat: int, infoset_key: tuple,
                     labels: tuple[str, ...]) -> int:
        owner = self.owner_of(seat)
        iid = self.infoset_for(infoset_key, owner, labels)
        nid = len(self.nodes)
        self.nodes.append(Node(nid, parent, owner, iid))
        self.infosets[iid].nodes.append(nid)
        return nid

    def add_chance(self, parent: int | None) -> int:
        nid = len(self.nodes)
        self.nodes.append(Node(nid, parent, "c"))
        return nid

    def add_leaf(self, parent: int, u1: float, u2: float) -> int:
        nid = len(self.nodes)
        if self.rational == 1:
            ur, ul = u1, u2
        else:
            ur, ul = u2, u1
        self.nodes.append(Node(nid, parent, None, u_r=ur, u_l=ul))
        return nid

    def link(self, parent: int, label: str, child: int, prob: float | None = None):
        self.nodes[parent].actions.append(Action(label, child, prob))

    def build(self, name: str) -> GameTree:
        return GameTree(self.nodes, self.infosets, name=name)


def build_kuhn(rational_player: int = 1) -> GameTree:
    """Three-card Kuhn poker (ante 1, one bet of size 1, showdown to high card)."""
    b = TreeBuilder(rational_player)
    root = b.add_chance(None)
    deals = list(permutations((JACK, QUEEN, KING), 2))
    for c1, c2 in deals:
        deal_label = CARD_NAMES[c1] + CARD_NAMES[c2]
        sign = 1 if c1 > c2 else -1  # showdown outcome for P1

        n1 = b.add_decision(root, 1, (1, c1, "start"), ("check", "bet"))
        b.link(root, deal_label, n1, prob=1.0 / len(deals))

        # P1 checks.
        n2 = b.add_decision(n1, 2, (2, c2, "after-check"), ("check", "raise"))
        b.link(n1, "check", n2)
        b.link(n2, "check", b.add_leaf(n2, sign, -sign))
        n3 = b.add_decision(n2, 1, (1, c1, "after-raise"), ("fold", "call"))
        b.link(n2, "raise", n3)
        b.link(n3, "fold", b.add_leaf(n3, -1, 1))
        b.link(n3, "call", b.add_leaf(n3, 2 * sign, -2 * sign))

        # P1 bets.
        n4 = b.add_decision(n1, 2, (2, c2, "after-bet"), ("fold", "call"))
        b.link(n1, "bet", n4)
        b.link(n4, "fold", b.add_leaf(n4, 1, -1))
        b.link(n4, "call", b.add_leaf(n4, 2 * sign, -2 * sign))
    return b.build("kuhn")


def _kj_round(b: TreeBuilder, parent: int, link_label: str, stage: str,
              obs1: tuple, obs2: tuple, bet: int, on_leaf, on_continue):
    """One KJ betting round below ``parent``.

    ``on_leaf(node, label, winner)`` attaches a fold leaf; ``on_continue(node,
    label, round_bet, line)`` extends the tree after the round ends without a
    fold, where ``round_bet`` is each player's wager this round and ``line``
    the public betting line ('cc', 'crc' or 'bc').
    """
    n1 = b.add_decision(parent, 1, (1, stage) + obs1, ("check", "bet"))
    b.link(parent, link_label, n1)

    n2 = b.add_decision(n1, 2, (2, stage, "after-check") + obs2,
                        ("check", "raise"))
    b.link(n1, "check", n2)
    on_continue(n2, "check", 0, "cc")
    n3 = b.add_decision(n2, 1, (1, stage, "after-raise") + obs1,
                        ("fold", "call"))
    b.link(n2, "raise", n3)
    on_leaf(n3, "fold", 2)
    on_continue(n3, "call", bet, "crc")

    n4 = b.add_decision(n1, 2, (2, stage, "after-bet") + obs2, ("fold", "call"))
    b.link(n1, "bet", n4)
    on_leaf(n4, "fold", 1)
    on_continue(n4, "call", bet, "bc")


def build_kj(rational_player: int = 1) -> GameTree:
    """KJ poker: two kings and two jacks, two betting rounds (p=2 then p=4),
    one public card, pair-wins / split-pot showdown."""
    b = TreeBuilder(rational_player)
    root = b.add_chance(None)

    deck = [KING, KING, JACK, JACK]
    deals: dict[tuple[int, int], int] = {}
    for i in range(4):
        for j in range(4):
            if i != j:
                key = (deck[i], deck[j])
                deals[key] = deals.get(key, 0) + 1
    total = sum(deals.values())

    def fold_leaf(node, label, winner, loser_paid):
        u1 = loser_paid if winner == 1 else -loser_paid
        b.link(node, label, b.add_leaf(node, u1, -u1))

    for (c1, c2), count in sorted(deals.items(), reverse=True):
        deal_label = CARD_NAMES[c1] + CARD_NAMES[c2]
        remaining = sorted([KING, KING, JACK, JACK], reverse=True)
        remaining.remove(c1)
        remaining.remove(c2)

        def round1_continue(node, label, bet1, line,
                            c1=c1, c2=c2, remaining=tuple(remaining)):
            ch = b.add_chance(node)
            b.link(node, label, ch)
            counts: dict[int, int] = {}
            for card in remaining:
                counts[card] = counts.get(card, 0) + 1
            for public in sorted(counts, reverse=True):
                stake = 1 + bet1  # per-player pot share entering round 2

                def round2_leaf(n, lab, winner, stake=stake):
                    fold_leaf(n, lab, winner, stake)

                def round2_continue(n, lab, bet2, line2, stake=stake,
                                    c1=c1, c2=c2, public=public):
                    pot_each = stake + bet2
                    if c1 == public and c2 != public:
                        u1 = pot_each
                    elif c2 == public and c1 != public:
                        u1 = -pot_each
                    else:
                        u1 = 0  # equal private cards: split pot
                    b.link(n, lab, b.add_leaf(n, u1, -u1))

                stage2 = f"round2-{line}-{CARD_NAMES[public]}"
                _kj_round(b, ch, CARD_NAMES[public], stage2,
                          (c1, line, public), (c2, line, public), 4,
                          round2_leaf, round2_continue)
                b.nodes[ch].actions[-1] = Action(
                    b.nodes[ch].actions[-1].label,
                    b.nodes[ch].actions[-1].child,
                    counts[public] / len(remaining))

        def round1_leaf(node, label, winner):
            fold_leaf(node, label, winner, 1)

        _kj_round(b, root, deal_label, "round1",
                  (c1,), (c2,), 2, round1_leaf, round1_continue)
        b.nodes[root].actions[-1] = Action(deal_label,
                                           b.nodes[root].actions[-1].child,
                                           count / total)
    return b.build("kj")


def build_game(name: str, rational_player: int = 1) -> GameTree:
    if name == "kuhn":
        return build_kuhn(rational_player)
    if name == "kj":
        return build_kj(rational_player)
    raise ValueError(f"unknown built-in game {name!r}")
