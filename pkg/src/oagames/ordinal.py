"""Symbolic payoff games under ordering constraints.

A constraint set ranks payoff symbols with strict relations, ties and
literal anchors.  Linear extensions of that partial order enumerate every
admissible ranking; each extension has a canonical exact instantiation, so
ordinal claims about a game ("this profile is always a Nash equilibrium")
can be verified universally instead of on one hand-picked assignment.

Nodes of the order are symbol names (identifiers) or rational literals.
Distinct equality classes always receive distinct values, so a non-strict
anchor ``a >= 0`` behaves strictly unless ``a`` is explicitly tied to the
literal with ``=``.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from . import mixed as _mixed
from .errors import (
    CycleDetected,
    DomainError,
    EqualityStrictConflict,
    ExtensionLimitExceeded,
    MissingSymbol,
    ParseError,
    ShapeError,
)
from .game_core import (
    DominanceKind,
    IedsPolicy,
    NormalFormGame,
    Player,
    StrategyProfile,
    VerdictKind,
    as_payoff,
    dominated_strategies,
    ieds,
    make_game,
    pareto_status,
    pure_nash,
)

Node = Union[str, Fraction]
Instantiation = dict[str, Fraction]

DEFAULT_EXTENSION_LIMIT = 200_000


def _node_key(node: Node):
    if isinstance(node, str):
        return (0, node, Fraction(0))
    return (1, "", node)


def _class_key(cls: frozenset[Node]):
    return min(_node_key(n) for n in cls)


def _class_literal(cls: frozenset[Node]) -> Fraction | None:
    for node in cls:
        if isinstance(node, Fraction):
            return node
    return None


def _class_name(cls: frozenset[Node]) -> str:
    return "{" + ", ".join(str(n) for n in sorted(cls, key=_node_key)) + "}"


@dataclass(frozen=True)
class OrderingConstraintSet:
    """Symbols plus strict relations, ties and literal anchors.

    ``strict_relations`` holds pairs ``(a, b)`` meaning a > b.
    ``equalities`` holds unordered tied pairs.  ``anchors`` relate a symbol
    to a literal with one of ``>``, ``>=``, ``=``.  ``literals`` lists every
    literal node, including free ones that no relation mentions; a free
    literal still occupies a slot in each linear extension.
    """

    symbols: frozenset[str]
    strict_relations: frozenset[tuple[str, str]] = frozenset()
    equalities: frozenset[tuple[str, str]] = frozenset()
    anchors: frozenset[tuple[str, str, Fraction]] = frozenset()
    literals: frozenset[Fraction] = frozenset()

    def all_literals(self) -> frozenset[Fraction]:
        return self.literals | frozenset(lit for _, _, lit in self.anchors)


def constraint_set(
    symbols: Iterable[str] = (),
    strict: Iterable[tuple[str, str]] = (),
    equalities: Iterable[tuple[str, str]] = (),
    anchors: Iterable[tuple[str, str, object]] = (),
    literals: Iterable[object] = (),
) -> OrderingConstraintSet:
    """Build a constraint set, inferring symbols mentioned by relations."""
    strict = frozenset((str(a), str(b)) for a, b in strict)
    eqs = frozenset(tuple(sorted((str(a), str(b)))) for a, b in equalities)
    anch = []
    for sym, rel, lit in anchors:
        if rel not in (">", ">=", "="):
            raise DomainError(f"anchor relation {rel!r} not one of >, >=, =")
        anch.append((str(sym), rel, as_payoff(lit)))
    mentioned = {s for pair in strict for s in pair}
    mentioned |= {s for pair in eqs for s in pair}
    mentioned |= {sym for sym, _, _ in anch}
    syms = frozenset(str(s) for s in symbols) | mentioned
    for name in syms:
        if not name.isidentifier():
            raise DomainError(f"symbol {name!r} is not an identifier")
    lits = frozenset(as_payoff(v) for v in literals)
    return OrderingConstraintSet(syms, strict, eqs, frozenset(anch), lits)


class _UnionFind:
    def __init__(self, items):
        self.parent = {item: item for item in items}

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass(frozen=True)
class _ClassStructure:
    classes: tuple[frozenset[Node], ...]
    index_of: dict[Node, int]
    above: tuple[frozenset[int], ...]  # above[i] = classes strictly greater than i


def _class_structure(cs: OrderingConstraintSet) -> _ClassStructure:
    nodes: list[Node] = sorted(cs.symbols, key=_node_key)
    nodes += sorted(cs.all_literals())
    uf = _UnionFind(nodes)
    for a, b in cs.equalities:
        uf.union(a, b)
    for sym, rel, lit in cs.anchors:
        if rel == "=":
            uf.union(sym, lit)

    groups: dict[Node, set[Node]] = {}
    for node in nodes:
        groups.setdefault(uf.find(node), set()).add(node)
    classes = tuple(sorted((frozenset(g) for g in groups.values()), key=_class_key))
    index_of = {node: i for i, cls in enumerate(classes) for node in cls}

    for cls in classes:
        values = {n for n in cls if isinstance(n, Fraction)}
        if len(values) > 1:
            a, b = sorted(values)[:2]
            raise EqualityStrictConflict((a, b))

    greater: list[set[int]] = [set() for _ in classes]

    def add_edge(hi: Node, lo: Node, witness: tuple[Node, Node]):
        ih, il = index_of[hi], index_of[lo]
        if ih == il:
            raise EqualityStrictConflict(witness)
        greater[il].add(ih)

    for a, b in sorted(cs.strict_relations):
        add_edge(a, b, (a, b))
    for sym, rel, lit in sorted(cs.anchors, key=lambda t: (t[0], t[1], t[2])):
        if rel == "=":
            continue
        if rel == ">":
            add_edge(sym, lit, (sym, lit))
        else:  # >= collapses to > across distinct classes
            if index_of[sym] != index_of[lit]:
                greater[index_of[lit]].add(index_of[sym])
    lits = sorted({_class_literal(c) for c in classes if _class_literal(c) is not None})
    for small, big in zip(lits, lits[1:]):
        greater[index_of[small]].add(index_of[big])

    _check_acyclic(classes, greater)
    return _ClassStructure(classes, index_of, tuple(frozenset(g) for g in greater))


def _check_acyclic(classes, greater) -> None:
    color = [0] * len(classes)  # 0 new, 1 on stack, 2 done
    stack_path: list[int] = []

    def visit(i: int):
        color[i] = 1
        stack_path.append(i)
        for j in sorted(greater[i]):
            if color[j] == 1:
                cycle = stack_path[stack_path.index(j):] + [j]
                raise CycleDetected([_class_name(classes[c]) for c in cycle])
            if color[j] == 0:
                visit(j)
        stack_path.pop()
        color[i] = 2

    for i in range(len(classes)):
        if color[i] == 0:
            visit(i)


def validate(constraints: OrderingConstraintSet) -> None:
    """Raise CycleDetected or EqualityStrictConflict on contradiction."""
    _class_structure(constraints)


@dataclass(frozen=True)
class LinearExtension:
    """Total order over equality classes, largest class first."""

    classes: tuple[frozenset[Node], ...]

    def rank(self, node: Node) -> int:
        for i, cls in enumerate(self.classes):
            if node in cls:
                return i
        raise MissingSymbol(str(node))

    def ranks(self) -> dict[Node, int]:
        return {node: i for i, cls in enumerate(self.classes) for node in cls}


def _iter_extensions(cs: OrderingConstraintSet) -> Iterator[LinearExtension]:
    structure = _class_structure(cs)
    n = len(structure.classes)
    order_keys = [_class_key(c) for c in structure.classes]
    remaining = set(range(n))
    acc: list[int] = []

    def rec() -> Iterator[LinearExtension]:
        if not remaining:
            yield LinearExtension(tuple(structure.classes[i] for i in acc))
            return
        for i in sorted(remaining, key=lambda i: order_keys[i]):
            if structure.above[i] & remaining:
                continue
            remaining.discard(i)
            acc.append(i)
            yield from rec()
            acc.pop()
            remaining.add(i)

    return rec()


def linear_extensions(
    constraints: OrderingConstraintSet, limit: int = DEFAULT_EXTENSION_LIMIT
) -> tuple[LinearExtension, ...]:
    """All total orders extending the constraints, deterministically.

    Raises ExtensionLimitExceeded when more than ``limit`` exist.
    """
    out: list[LinearExtension] = []
    for ext in _iter_extensions(constraints):
        out.append(ext)
        if len(out) > limit:
            raise ExtensionLimitExceeded(
                f"more than {limit} linear extensions"
            )
    return tuple(out)


def canonical_instantiation(extension: LinearExtension) -> Instantiation:
    """Deterministic exact witness of one extension.

    Classes get consecutive integers descending by rank (top class gets
    the class count).  Literal classes keep their literal value and the
    neighbouring segments are shifted, or evenly interpolated between two
    literals, so that strictness always holds.
    """
    classes = extension.classes
    k = len(classes)
    defaults = [Fraction(k - i) for i in range(k)]
    values: list[Fraction | None] = [None] * k
    lit_pos = [i for i, cls in enumerate(classes) if _class_literal(cls) is not None]

    if not lit_pos:
        values = list(defaults)
    else:
        for i in lit_pos:
            values[i] = _class_literal(classes[i])
        for i in range(lit_pos[0] - 1, -1, -1):
            below = values[i + 1]
            values[i] = defaults[i] if defaults[i] > below else below + 1
        for i in range(lit_pos[-1] + 1, k):
            above = values[i - 1]
            values[i] = defaults[i] if defaults[i] < above else above - 1
        for hi_pos, lo_pos in zip(lit_pos, lit_pos[1:]):
            span = lo_pos - hi_pos - 1
            if span == 0:
                continue
            hi, lo = values[hi_pos], values[lo_pos]
            segment = defaults[hi_pos + 1 : lo_pos]
            if segment[0] < hi and segment[-1] > lo:
                values[hi_pos + 1 : lo_pos] = segment
            else:
                values[hi_pos + 1 : lo_pos] = [
                    lo + (hi - lo) * Fraction(span + 1 - j, span + 1)
                    for j in range(1, span + 1)
                ]

    return {
        node: values[i]
        for i, cls in enumerate(classes)
        for node in cls
        if isinstance(node, str)
    }


def _random_extension(cs: OrderingConstraintSet, rng: random.Random) -> LinearExtension:
    structure = _class_structure(cs)
    remaining = set(range(len(structure.classes)))
    acc = []
    while remaining:
        ready = sorted(
            (i for i in remaining if not (structure.above[i] & remaining)),
            key=lambda i: _class_key(structure.classes[i]),
        )
        pick = rng.choice(ready)
        acc.append(pick)
        remaining.discard(pick)
    return LinearExtension(tuple(structure.classes[i] for i in acc))


def _sample_values_along(
    extension: LinearExtension, rng: random.Random
) -> Instantiation:
    """Random exact values realising the extension's order."""

    def gap() -> Fraction:
        return Fraction(rng.randint(1, 12), rng.randint(1, 12))

    classes = extension.classes
    k = len(classes)
    values: list[Fraction | None] = [None] * k
    lit_pos = [i for i, cls in enumerate(classes) if _class_literal(cls) is not None]

    if not lit_pos:
        values[k - 1] = Fraction(rng.randint(-6, 6))
        for i in range(k - 2, -1, -1):
            values[i] = values[i + 1] + gap()
    else:
        for i in lit_pos:
            values[i] = _class_literal(classes[i])
        for i in range(lit_pos[0] - 1, -1, -1):
            values[i] = values[i + 1] + gap()
        for i in range(lit_pos[-1] + 1, k):
            values[i] = values[i - 1] - gap()
        for hi_pos, lo_pos in zip(lit_pos, lit_pos[1:]):
            span = lo_pos - hi_pos - 1
            if span == 0:
                continue
            hi, lo = values[hi_pos], values[lo_pos]
            gaps = [gap() for _ in range(span + 1)]
            total = sum(gaps) + gap()
            running = Fraction(0)
            for j in range(1, span + 1):
                running += gaps[j - 1]
                values[lo_pos - j] = lo + (hi - lo) * running / total
    return {
        node: values[i]
        for i, cls in enumerate(classes)
        for node in cls
        if isinstance(node, str)
    }


def sample_instantiation(
    constraints: OrderingConstraintSet, seed: int
) -> Instantiation:
    """Random instantiation along a random linear extension; per-seed stable."""
    rng = random.Random(seed)
    extension = _random_extension(constraints, rng)
    return _sample_values_along(extension, rng)


def satisfies(constraints: OrderingConstraintSet, values: Mapping[str, Fraction]) -> bool:
    """Exact re-verification of an instantiation against the constraints."""

    def resolve(node: Node) -> Fraction:
        if isinstance(node, str):
            if node not in values:
                raise MissingSymbol(node)
            return values[node]
        return node

    for a, b in constraints.strict_relations:
        if not resolve(a) > resolve(b):
            return False
    for a, b in constraints.equalities:
        if resolve(a) != resolve(b):
            return False
    for sym, rel, lit in constraints.anchors:
        v = resolve(sym)
        if rel == ">" and not v > lit:
            return False
        if rel == ">=" and not v >= lit:
            return False
        if rel == "=" and v != lit:
            return False
    return True


def split_equality_variants(
    constraints: OrderingConstraintSet,
) -> tuple[OrderingConstraintSet, ...]:
    """Sensitivity mode: replace each tie by a strict order, both ways.

    Returns the 2**e variants for e equalities, in deterministic order.
    """
    variants = [constraints]
    for a, b in sorted(constraints.equalities):
        next_variants = []
        for cs in variants:
            eqs = frozenset(p for p in cs.equalities if p != (a, b))
            for pair in ((a, b), (b, a)):
                next_variants.append(
                    OrderingConstraintSet(
                        cs.symbols,
                        cs.strict_relations | {pair},
                        eqs,
                        cs.anchors,
                        cs.literals,
                    )
                )
        variants = next_variants
    return tuple(variants)


# ---------------------------------------------------------------------------
# symbolic games


@dataclass(frozen=True)
class SymbolicGame:
    """Game shaped like NormalFormGame whose cells are symbols or literals."""

    row_player_label: str
    col_player_label: str
    row_strategies: tuple[str, ...]
    col_strategies: tuple[str, ...]
    cells: tuple[tuple[tuple[Node, Node], ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_strategies), len(self.col_strategies)

    def symbols_used(self) -> frozenset[str]:
        return frozenset(
            entry
            for row in self.cells
            for cell in row
            for entry in cell
            if isinstance(entry, str)
        )

    def player_nodes(self, player: Player) -> tuple[Node, ...]:
        side = 0 if player is Player.ROW else 1
        nodes = {cell[side] for row in self.cells for cell in row}
        return tuple(sorted(nodes, key=_node_key))


def make_symbolic_game(
    row_label: str,
    col_label: str,
    row_strategies: Sequence[str],
    col_strategies: Sequence[str],
    cells: Sequence[Sequence[tuple]],
) -> SymbolicGame:
    """Shape-check a symbolic game; entries are symbol names or exact literals."""

    def entry(x) -> Node:
        if isinstance(x, str) and x.isidentifier():
            return x
        return as_payoff(x)

    probe = make_game(
        row_label,
        col_label,
        row_strategies,
        col_strategies,
        [[(0, 0) for _ in col_strategies] for _ in row_strategies],
    )
    if len(cells) != len(probe.row_strategies):
        raise ShapeError("cell matrix does not match row strategies")
    out_rows = []
    for row in cells:
        if len(row) != len(probe.col_strategies):
            raise ShapeError("cell matrix does not match column strategies")
        out_rows.append(tuple((entry(a), entry(b)) for a, b in row))
    return SymbolicGame(
        probe.row_player_label,
        probe.col_player_label,
        probe.row_strategies,
        probe.col_strategies,
        tuple(out_rows),
    )


def instantiate(
    symbolic: SymbolicGame, values: Mapping[str, Fraction]
) -> NormalFormGame:
    """Concrete game from a symbol assignment; literals pass through."""

    def resolve(node: Node) -> Fraction:
        if isinstance(node, str):
            if node not in values:
                raise MissingSymbol(node)
            return values[node]
        return node

    matrix = [
        [(resolve(a), resolve(b)) for a, b in row] for row in symbolic.cells
    ]
    return make_game(
        symbolic.row_player_label,
        symbolic.col_player_label,
        symbolic.row_strategies,
        symbolic.col_strategies,
        matrix,
    )


# ---------------------------------------------------------------------------
# ordinal predicates


@dataclass(frozen=True)
class ProfileIsPureNash:
    profile: StrategyProfile

    def evaluate(self, game: NormalFormGame) -> bool:
        r, c = self.profile
        from .game_core import best_responses

        return r in best_responses(game, Player.ROW, c) and c in best_responses(
            game, Player.COL, r
        )

    def order_determined(self, game: NormalFormGame) -> bool:
        return True


@dataclass(frozen=True)
class IedsReducesTo:
    policy: IedsPolicy
    profile: StrategyProfile

    def evaluate(self, game: NormalFormGame) -> bool:
        reduced, _ = ieds(game, self.policy)
        return (
            reduced.shape == (1, 1)
            and reduced.row_strategies[0] == game.row_strategies[self.profile.row_index]
            and reduced.col_strategies[0] == game.col_strategies[self.profile.col_index]
        )

    def order_determined(self, game: NormalFormGame) -> bool:
        return True


@dataclass(frozen=True)
class StrategyDominated:
    player: Player
    strategy: int
    kind: DominanceKind

    def evaluate(self, game: NormalFormGame) -> bool:
        verdicts = dominated_strategies(game, self.player, self.kind)
        return verdicts[self.strategy].kind is not VerdictKind.NOT_DOMINATED

    def order_determined(self, game: NormalFormGame) -> bool:
        return True


@dataclass(frozen=True)
class ProfileParetoOptimal:
    profile: StrategyProfile

    def evaluate(self, game: NormalFormGame) -> bool:
        return pareto_status(game, self.profile).optimal

    def order_determined(self, game: NormalFormGame) -> bool:
        return True


@dataclass(frozen=True)
class Mixed2x2EquilibriumEquals:
    """The 2x2 game's full equilibrium set is exactly {(p, q)}.

    Order-determined only when some player has a weakly dominant strategy;
    otherwise the interior point is cardinal and evaluation falls back to
    sampling, flagged by ``exhaustive=False`` on the verdict.
    """

    p: Fraction
    q: Fraction

    def evaluate(self, game: NormalFormGame) -> bool:
        results = _mixed.mixed_2x2(game)
        want = _mixed.MixedProfile(
            (as_payoff(self.p), 1 - as_payoff(self.p)),
            (as_payoff(self.q), 1 - as_payoff(self.q)),
        )
        return len(results) == 1 and results[0].profile == want

    def order_determined(self, game: NormalFormGame) -> bool:
        for player in (Player.ROW, Player.COL):
            verdicts = dominated_strategies(game, player, DominanceKind.WEAK)
            if any(v.kind is not VerdictKind.NOT_DOMINATED for v in verdicts.values()):
                return True
        return False


Predicate = Union[
    ProfileIsPureNash,
    IedsReducesTo,
    StrategyDominated,
    ProfileParetoOptimal,
    Mixed2x2EquilibriumEquals,
]


@dataclass(frozen=True)
class UniversalVerdict:
    """Outcome of checking a predicate over every linear extension."""

    holds: bool
    counterexample: Instantiation | None
    extensions_checked: int
    exhaustive: bool

    @property
    def holds_for_all(self) -> bool:
        return self.holds


def _order_signature(
    player_nodes: tuple[tuple[Node, ...], tuple[Node, ...]],
    extension: LinearExtension,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-player tie pattern of the game's payoff entries in the extension.

    Listed predicates compare payoffs within one player only, so two
    extensions with equal signatures evaluate identically.
    """
    ranks = extension.ranks()
    signature = []
    for nodes in player_nodes:
        raw = [ranks[n] for n in nodes]
        dense = {r: i for i, r in enumerate(sorted(set(raw)))}
        signature.append(tuple(dense[r] for r in raw))
    return tuple(signature)


def _evaluate_over(
    extensions: Iterable[LinearExtension],
    symbolic: SymbolicGame,
    predicate: Predicate,
    condition: Callable[[LinearExtension], bool] | None = None,
    samples: int = 3,
):
    """Evaluate a predicate per extension with order-signature memoisation.

    Returns (results, first_counterexample, exhaustive) where results is a
    list of (holds, condition_value) per extension in enumeration order.
    """
    player_nodes = (
        symbolic.player_nodes(Player.ROW),
        symbolic.player_nodes(Player.COL),
    )
    memo: dict = {}
    results: list[tuple[bool, bool]] = []
    first_cex: Instantiation | None = None
    exhaustive = True
    for extension in extensions:
        key = _order_signature(player_nodes, extension)
        cached = memo.get(key)
        if cached is None:
            values = canonical_instantiation(extension)
            game = instantiate(symbolic, values)
            ok = predicate.evaluate(game)
            determined = predicate.order_determined(game)
            cex = None if ok else values
            if not determined:
                seed = zlib.crc32(repr(key).encode())
                for s in range(samples):
                    rng = random.Random(seed * 1009 + s)
                    sampled = _sample_values_along(extension, rng)
                    if not predicate.evaluate(instantiate(symbolic, sampled)):
                        ok = False
                        if cex is None:
                            cex = sampled
                        break
            cached = (ok, cex, determined)
            memo[key] = cached
        ok, cex, determined = cached
        if not determined:
            exhaustive = False
        if not ok and first_cex is None:
            first_cex = cex
        results.append((ok, condition(extension) if condition else True))
    return results, first_cex, exhaustive


def holds_for_all(
    symbolic_game: SymbolicGame,
    constraints: OrderingConstraintSet,
    predicate: Predicate,
    limit: int = DEFAULT_EXTENSION_LIMIT,
) -> UniversalVerdict:
    """Check a predicate on the canonical instantiation of every extension.

    For the order-determined predicates this is exhaustive; the mixed
    2x2 predicate additionally samples instantiations when no player has
    a dominant strategy and marks the verdict non-exhaustive.
    """
    missing = symbolic_game.symbols_used() - constraints.symbols
    if missing:
        raise MissingSymbol(sorted(missing)[0])
    validate(constraints)

    def limited() -> Iterator[LinearExtension]:
        count = 0
        for ext in _iter_extensions(constraints):
            count += 1
            if count > limit:
                raise ExtensionLimitExceeded(f"more than {limit} linear extensions")
            yield ext

    results, first_cex, exhaustive = _evaluate_over(limited(), symbolic_game, predicate)
    holds = all(ok for ok, _ in results)
    return UniversalVerdict(holds, first_cex, len(results), exhaustive)


# ---------------------------------------------------------------------------
# constraint text syntax


def parse_constraints(
    text: str, extra_literals: Iterable[object] = ()
) -> OrderingConstraintSet:
    """Parse the one-relation-per-line syntax.

    Tokens: ``>``, ``>=`` and ``~=`` (tie).  Operands are identifiers or
    exact literals (integers or p/q).  Literals may only appear on the
    right-hand side.
    """
    strict: list[tuple[str, str]] = []
    equalities: list[tuple[str, str]] = []
    anchors: list[tuple[str, str, Fraction]] = []
    symbols: set[str] = set()

    def operand(token: str, lineno: int) -> Node:
        if token.isidentifier():
            return token
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad operand {token!r}", lineno) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for op in (">=", "~=", ">"):
            if op in line:
                left, _, right = line.partition(op)
                break
        else:
            raise ParseError(f"no relation in {line!r}", lineno)
        a = operand(left.strip(), lineno)
        b = operand(right.strip(), lineno)
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            raise ParseError("relation between two literals", lineno)
        if isinstance(a, Fraction):
            raise ParseError("literal must be on the right-hand side", lineno)
        symbols.add(a)
        if isinstance(b, Fraction):
            anchors.append((a, "=" if op == "~=" else op, b))
        else:
            symbols.add(b)
            if op == "~=":
                equalities.append((a, b))
            elif op == ">":
                strict.append((a, b))
            else:
                raise ParseError(
                    ">= between symbols is not supported; use > or ~=", lineno
                )
    return constraint_set(symbols, strict, equalities, anchors, extra_literals)


def format_constraints(constraints: OrderingConstraintSet) -> str:
    """Deterministic text form accepted back by parse_constraints."""
    lines = [f"{a} > {b}" for a, b in sorted(constraints.strict_relations)]
    lines += [f"{a} ~= {b}" for a, b in sorted(constraints.equalities)]
    for sym, rel, lit in sorted(
        constraints.anchors, key=lambda t: (t[0], t[1], t[2])
    ):
        token = "~=" if rel == "=" else rel
        lines.append(f"{sym} {token} {lit}")
    return "\n".join(lines)
