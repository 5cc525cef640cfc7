"""Command-line front end: solve, audit, dynamics, model.

Reports come in two renderings of the same structured document: human
text and machine JSON (schema_version 1).  Output is byte-identical for
identical inputs and options.  Exit codes: 0 success, 1 parse or domain
error, 2 extension limit exceeded.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction

from . import audit as audit_mod
from . import dynamics as dyn
from . import mixed as mixed_mod
from . import models, ordinal, scenarios
from .errors import (
    ExtensionLimitExceeded,
    GameError,
    ParseError,
)
from .game_core import (
    DominanceKind,
    NormalFormGame,
    Player,
    StrategyProfile,
    VerdictKind,
    dominated_strategies,
    ieds,
    make_game,
    pareto_status,
    pure_nash,
)

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ParseError (exit code 1)."""

    def error(self, message):
        raise ParseError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact rational: {text!r}") from None


# ---------------------------------------------------------------------------
# report document


class ReportDocument:
    """Structured report with deterministic text and JSON renderings."""

    def __init__(self, command: str, data: dict, text: str):
        self.data = {"schema_version": SCHEMA_VERSION, "command": command, **data}
        self.text = text if text.endswith("\n") else text + "\n"

    def to_machine(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_machine() if fmt == "machine" else self.text


def parse_report(text: str) -> dict:
    """Validate and load a machine-format report."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError("not a schema_version 1 report")
    if "command" not in doc or "sections" not in doc:
        raise ParseError("report is missing command or sections")
    return doc


# ---------------------------------------------------------------------------
# solve


def _matrix_text(game: NormalFormGame) -> list[str]:
    cells = [
        [f"({a}, {b})" for a, b in row]
        for row in game.payoffs
    ]
    label_width = max(len(s) for s in game.row_strategies)
    widths = [
        max(len(game.col_strategies[j]), max(len(row[j]) for row in cells))
        for j in range(len(game.col_strategies))
    ]
    header = " " * (label_width + 4) + "  ".join(
        s.ljust(widths[j]) for j, s in enumerate(game.col_strategies)
    )
    lines = [header.rstrip()]
    for i, row in enumerate(cells):
        lines.append(
            "  "
            + game.row_strategies[i].ljust(label_width)
            + "  "
            + "  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)).rstrip()
        )
    return lines


def _profile_payload(game: NormalFormGame, profile: StrategyProfile) -> dict:
    a, b = game.payoff_pair(*profile)
    return {
        "row_index": profile.row_index,
        "col_index": profile.col_index,
        "label": game.profile_label(profile),
        "payoffs": [str(a), str(b)],
    }


def _dominance_payload(game: NormalFormGame) -> dict:
    payload: dict = {}
    for kind in (DominanceKind.WEAK, DominanceKind.STRICT):
        per_player = {}
        for player in (Player.ROW, Player.COL):
            labels = game.strategies(player)
            entries = []
            for index, verdict in sorted(
                dominated_strategies(game, player, kind).items()
            ):
                if verdict.kind is not VerdictKind.NOT_DOMINATED:
                    entries.append(
                        {
                            "strategy": labels[index],
                            "dominated_by": labels[verdict.dominator],
                        }
                    )
            key = game.row_player_label if player is Player.ROW else game.col_player_label
            per_player[key] = entries
        payload[kind.value] = per_player
    return payload


def _mixed_payload(game: NormalFormGame) -> list[dict]:
    return [
        {
            "kind": result.kind.value,
            "row_distribution": [str(p) for p in result.profile.row_distribution],
            "col_distribution": [str(q) for q in result.profile.col_distribution],
            "row_support": list(result.row_support),
            "col_support": list(result.col_support),
            "note": result.degeneracy_note,
        }
        for result in mixed_mod.support_enumeration(game)
    ]


def _ieds_payload(game: NormalFormGame, policy) -> dict:
    reduced, trace = ieds(game, policy)
    return {
        "kind": policy.kind.value,
        "order": policy.player_order.value,
        "steps": [
            {
                "round": step.round,
                "player": game.row_player_label
                if step.player is Player.ROW
                else game.col_player_label,
                "removed": step.removed,
                "dominated_by": step.dominator,
            }
            for step in trace.steps
        ],
        "terminal_rows": list(reduced.row_strategies),
        "terminal_cols": list(reduced.col_strategies),
    }


def _solve_concrete(game: NormalFormGame, options, include_ieds: bool):
    sections: dict = {
        "game": {
            "row_player": game.row_player_label,
            "col_player": game.col_player_label,
            "row_strategies": list(game.row_strategies),
            "col_strategies": list(game.col_strategies),
            "payoffs": [[[str(a), str(b)] for a, b in row] for row in game.payoffs],
        }
    }
    equilibria = []
    for profile in pure_nash(game):
        status = pareto_status(game, profile)
        equilibria.append(
            {
                **_profile_payload(game, profile),
                "pareto_optimal": status.optimal,
                "pareto_dominated_by": [
                    game.profile_label(p) for p in status.dominated_by
                ],
            }
        )
    sections["pure_nash"] = equilibria
    sections["dominance"] = _dominance_payload(game)
    m, n = game.shape
    if m <= 4 and n <= 4:
        sections["mixed"] = _mixed_payload(game)
    else:
        sections["mixed"] = None
    if include_ieds:
        sections["ieds"] = _ieds_payload(game, options.ieds_policy())

    lines = [f"Players: {game.row_player_label} (rows) vs {game.col_player_label} (cols)"]
    lines += ["", "Payoffs (row, col):"]
    lines += _matrix_text(game)
    lines.append("")
    if equilibria:
        lines.append("Pure Nash equilibria:")
        for entry in equilibria:
            pareto = (
                "Pareto optimal"
                if entry["pareto_optimal"]
                else "Pareto dominated by " + ", ".join(entry["pareto_dominated_by"])
            )
            lines.append(
                f"  {entry['label']}  payoffs ({entry['payoffs'][0]}, "
                f"{entry['payoffs'][1]})  [{pareto}]"
            )
    else:
        lines.append("Pure Nash equilibria: none")
    lines.append("")
    lines.append("Dominated strategies:")
    for kind in ("weak", "strict"):
        for player_label, entries in sections["dominance"][kind].items():
            if entries:
                what = ", ".join(
                    f"{e['strategy']} by {e['dominated_by']}" for e in entries
                )
                lines.append(f"  {player_label} ({kind}): {what}")
    if all(
        not entries
        for kind in ("weak", "strict")
        for entries in sections["dominance"][kind].values()
    ):
        lines.append("  none")
    lines.append("")
    if sections["mixed"] is None:
        lines.append("Mixed equilibria: skipped (game larger than 4x4)")
    else:
        lines.append("Mixed equilibria (support enumeration):")
        if not sections["mixed"]:
            lines.append("  none")
        for entry in sections["mixed"]:
            row = ", ".join(entry["row_distribution"])
            col = ", ".join(entry["col_distribution"])
            note = f"  [{entry['note']}]" if entry["note"] else ""
            lines.append(f"  {entry['kind']}: row=({row}) col=({col}){note}")
    if include_ieds:
        lines.append("")
        trace = sections["ieds"]
        lines.append(
            f"IEDS trace ({trace['kind']} dominance, {trace['order']} order):"
        )
        if not trace["steps"]:
            lines.append("  no eliminations")
        for step in trace["steps"]:
            lines.append(
                f"  step {step['round']}: {step['player']} drops "
                f"{step['removed']} (dominated by {step['dominated_by']})"
            )
        lines.append(
            "  terminal game: rows "
            + ", ".join(trace["terminal_rows"])
            + " x cols "
            + ", ".join(trace["terminal_cols"])
        )
    return sections, lines


def _solve_symbolic(scenario, include_ieds: bool, limit: int):
    symbolic = scenario.symbolic
    constraints = scenario.constraints
    extensions = ordinal.linear_extensions(constraints, limit=limit)
    profiles = []
    m, n = symbolic.shape
    for r in range(m):
        for c in range(n):
            verdict_results, _, _ = ordinal._evaluate_over(
                extensions, symbolic, ordinal.ProfileIsPureNash(StrategyProfile(r, c))
            )
            hold_count = sum(1 for ok, _ in verdict_results if ok)
            status = (
                "always"
                if hold_count == len(extensions)
                else "never"
                if hold_count == 0
                else "sometimes"
            )
            profiles.append(
                {
                    "row_index": r,
                    "col_index": c,
                    "label": f"({symbolic.row_strategies[r]}, {symbolic.col_strategies[c]})",
                    "nash_in_extensions": hold_count,
                    "status": status,
                }
            )
    canonical = ordinal.canonical_instantiation(extensions[0])
    game = ordinal.instantiate(symbolic, canonical)
    concrete_sections, concrete_lines = _solve_concrete(
        game, scenario.options, include_ieds
    )
    sections = {
        "ordinal_summary": {
            "extensions": len(extensions),
            "profiles": profiles,
        },
        "canonical_instantiation": {k: str(v) for k, v in sorted(canonical.items())},
        **concrete_sections,
    }
    lines = [
        f"Symbolic game over {len(extensions)} admissible payoff orderings",
        "",
        "Pure Nash status per profile:",
    ]
    for entry in profiles:
        lines.append(
            f"  {entry['label']}: {entry['status']} "
            f"({entry['nash_in_extensions']}/{len(extensions)} extensions)"
        )
    lines.append("")
    lines.append("Canonical instantiation of the first extension:")
    lines.append(
        "  " + ", ".join(f"{k}={v}" for k, v in sorted(canonical.items()))
    )
    lines.append("")
    lines += concrete_lines
    return sections, lines


def _load_scenario(source: str, stdin) -> scenarios.Scenario:
    if source == "-":
        return scenarios.parse_scenario(stdin.read())
    if source in scenarios.BUILTIN_NAMES:
        return scenarios.builtin_scenario(source)
    try:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read scenario {source!r}: {exc}") from None
    return scenarios.parse_scenario(text)


def cmd_solve(args, stdin) -> ReportDocument:
    scenario = _load_scenario(args.scenario, stdin)
    if scenario.kind == "concrete":
        sections, lines = _solve_concrete(scenario.game, scenario.options, args.ieds)
    else:
        sections, lines = _solve_symbolic(scenario, args.ieds, args.max_extensions)
    title = f"Solve report: {scenario.name or args.scenario}"
    text = "\n".join([title, *lines])
    return ReportDocument(
        "solve",
        {"scenario": scenario.name or args.scenario, "sections": sections},
        text,
    )


# ---------------------------------------------------------------------------
# audit


def cmd_audit(args) -> ReportDocument:
    report = audit_mod.run_audit(
        nonnegativity=args.nonnegativity, extension_limit=args.max_extensions
    )
    rows = []
    for record in report.records:
        rows.append(
            {
                "id": record.id,
                "anchor": record.anchor,
                "quote": record.quote,
                "status": record.status.value,
                "condition": record.condition,
                "explanation": record.explanation,
                "counterexample": None
                if record.counterexample is None
                else {k: str(v) for k, v in sorted(record.counterexample.items())},
            }
        )
    flag = "on" if report.nonnegativity else "off"
    lines = [f"Audit of printed equilibrium claims (nonnegativity {flag})", ""]
    for row in rows:
        status = row["status"].replace("_", " ")
        if row["condition"]:
            status += f" ({row['condition']})"
        lines.append(f"{row['id']}  {status}")
        lines.append(f"    claim: \"{row['quote']}\"  [{row['anchor']}]")
        lines.append(f"    {row['explanation']}")
        if row["counterexample"]:
            witness = ", ".join(f"{k}={v}" for k, v in row["counterexample"].items())
            lines.append(f"    counterexample: {witness}")
        lines.append("")
    return ReportDocument(
        "audit",
        {
            "scenario": "publishing",
            "options": {"nonnegativity": report.nonnegativity},
            "sections": {"audit": rows},
        },
        "\n".join(lines).rstrip() + "\n",
    )


# ---------------------------------------------------------------------------
# dynamics


def _parse_profile(text: str, game: NormalFormGame) -> StrategyProfile:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParseError(f"start must be 'row,col', got {text!r}")
    try:
        row = game.row_strategies.index(parts[0])
        col = game.col_strategies.index(parts[1])
    except ValueError:
        raise ParseError(
            f"start {text!r} does not name strategies of this game"
        ) from None
    return StrategyProfile(row, col)


def cmd_dynamics(args, stdin) -> ReportDocument:
    scenario = _load_scenario(args.scenario, stdin)
    if scenario.kind != "concrete":
        raise ParseError("dynamics needs a concrete scenario")
    game = scenario.game
    name = scenario.name or args.scenario

    if args.mode == "br":
        start = _parse_profile(args.start, game)
        rule = (
            dyn.BrRule.ALTERNATING_ROW_FIRST
            if args.rule == "row_first"
            else dyn.BrRule.ALTERNATING_COL_FIRST
        )
        trace = dyn.br_dynamics(game, start, rule, max_steps=args.steps)
        path_labels = [game.profile_label(p) for p in trace.path]
        terminal = trace.terminal
        if isinstance(terminal, dyn.FixedPoint):
            terminal_data = {
                "kind": "fixed_point",
                "profile": game.profile_label(terminal.profile),
            }
            headline = f"Fixed point at {terminal_data['profile']}"
        elif isinstance(terminal, dyn.Cycle):
            terminal_data = {
                "kind": "cycle",
                "period": terminal.period,
                "first_index": terminal.first_index,
            }
            headline = f"Cycle period {terminal.period}"
        else:
            terminal_data = {"kind": "truncated"}
            headline = f"Truncated after {args.steps} steps"
        text = "\n".join(
            [
                f"Best-response dynamics: {name}",
                f"{headline}: " + " -> ".join(path_labels),
            ]
        )
        return ReportDocument(
            "dynamics",
            {
                "scenario": name,
                "sections": {
                    "br_dynamics": {
                        "start": game.profile_label(start),
                        "rule": args.rule,
                        "path": path_labels,
                        "terminal": terminal_data,
                    }
                },
            },
            text,
        )

    shares = [float(_fraction(p)) for p in args.init.split(",")]
    if len(shares) != 3:
        raise ParseError("init must be three comma-separated shares")
    trajectory = dyn.replicator_simulate(
        game,
        dyn.ShareState(*shares),
        herd_weight=args.herd,
        payoff_shift=args.shift,
        steps=args.steps,
        threshold=args.threshold,
    )
    stats = trajectory.stats
    converged = (
        dyn.MODEL_NAMES[stats.converged_to] if stats.converged_to is not None else None
    )
    out_path = None
    if args.out:
        dyn.write_trajectory(trajectory, args.out)
        out_path = args.out
    final = trajectory.states[-1]
    lines = [
        f"Replicator dynamics: {name}",
        f"steps={args.steps} herd_weight={args.herd:.12g} payoff_shift={args.shift:.12g}",
        f"final shares: OA={final.x_oa:.12g} C={final.x_c:.12g} H={final.x_h:.12g}",
        f"converged_to={converged} time_to_threshold={stats.time_to_threshold} "
        f"max_slope={stats.max_slope:.12g}",
    ]
    if out_path:
        lines.append(f"trajectory written to {out_path}")
    return ReportDocument(
        "dynamics",
        {
            "scenario": name,
            "sections": {
                "share_dynamics": {
                    "steps": args.steps,
                    "herd_weight": args.herd,
                    "payoff_shift": args.shift,
                    "threshold": args.threshold,
                    "converged_to": converged,
                    "time_to_threshold": stats.time_to_threshold,
                    "max_slope": stats.max_slope,
                    "final": [final.x_oa, final.x_c, final.x_h],
                    "trajectory_file": out_path,
                }
            },
        },
        "\n".join(lines),
    )


# ---------------------------------------------------------------------------
# model


def _parse_values(text: str) -> dict[str, Fraction]:
    values = {}
    for item in text.split(","):
        name, _, raw = item.partition("=")
        name = name.strip()
        if not name or not raw.strip():
            raise ParseError(f"bad symbol assignment {item!r}")
        values[name] = _fraction(raw.strip())
    return values


def cmd_model(args) -> str:
    if args.model == "hanauske":
        params = models.HanauskeParams(args.r, args.alpha, args.beta, args.delta)
        game = models.hanauske_game(params)
        scenario = scenarios.Scenario("concrete", "hanauske", game=game)
    elif args.model == "habermann":
        params = models.HabermannParams(
            args.R, args.r, args.I, args.tau, args.L, args.G, args.P
        )
        game = models.habermann_game(params)
        scenario = scenarios.Scenario("concrete", "habermann", game=game)
    elif args.model == "besancenot":
        params = models.BesancenotParams(
            args.mu,
            args.theta_h,
            args.theta_l,
            args.lam,
            args.delta_a,
            args.delta_t,
            args.c,
            args.phi,
            args.belief_a,
            args.belief_t,
        )
        strategies = ("A", "T")
        matrix = [
            [
                (
                    models.besancenot_utility(params, "H", row),
                    models.besancenot_utility(params, "L", col),
                )
                for col in strategies
            ]
            for row in strategies
        ]
        game = make_game("AuthorH", "AuthorL", strategies, strategies, matrix)
        scenario = scenarios.Scenario("concrete", "besancenot", game=game)
    else:  # publishing
        if args.values:
            values = _parse_values(args.values)
        else:
            values = models.canonical_publishing_values()
        game = models.publishing_game_3x3(values)
        scenario = scenarios.Scenario("concrete", "publishing", game=game)
    return scenarios.emit_scenario(scenario)


# ---------------------------------------------------------------------------
# argument parsing and entry point


def _build_parser() -> _Parser:
    parser = _Parser(prog="oagames", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="pure/mixed equilibria and dominance")
    solve.add_argument("scenario", help="path, bundled name, or - for stdin")
    solve.add_argument("--format", choices=("text", "machine"), default="text")
    solve.add_argument("--ieds", action="store_true", help="include the IEDS trace")
    solve.add_argument("--max-extensions", type=int, default=200_000)

    auditp = sub.add_parser("audit", help="check the printed equilibrium claims")
    auditp.add_argument(
        "--nonnegativity",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="anchor every payoff symbol above 0",
    )
    auditp.add_argument("--format", choices=("text", "machine"), default="text")
    auditp.add_argument("--max-extensions", type=int, default=200_000)

    dynp = sub.add_parser("dynamics", help="best-response play or market shares")
    dynp.add_argument("mode", choices=("br", "shares"))
    dynp.add_argument("scenario")
    dynp.add_argument("--format", choices=("text", "machine"), default="text")
    dynp.add_argument("--start", default=None, help="row,col labels (br mode)")
    dynp.add_argument("--rule", choices=("row_first", "col_first"), default="row_first")
    dynp.add_argument("--init", default="1/3,1/3,1/3", help="shares (shares mode)")
    dynp.add_argument("--herd", type=float, default=0.0)
    dynp.add_argument("--shift", type=float, default=0.0)
    dynp.add_argument("--steps", type=int, default=500)
    dynp.add_argument("--threshold", type=float, default=0.99)
    dynp.add_argument("--out", default=None, help="trajectory file (shares mode)")

    model = sub.add_parser("model", help="emit a scenario for a named model")
    modelsub = model.add_subparsers(dest="model", required=True)

    hanauske = modelsub.add_parser("hanauske")
    hanauske.add_argument("--r", type=_fraction, default=Fraction(4))
    hanauske.add_argument("--alpha", type=_fraction, default=Fraction(1))
    hanauske.add_argument("--beta", type=_fraction, default=Fraction(2))
    hanauske.add_argument("--delta", type=_fraction, default=Fraction(1))

    habermann = modelsub.add_parser("habermann")
    habermann.add_argument("--R", type=_fraction, default=Fraction(10))
    habermann.add_argument("--r", type=_fraction, default=Fraction(2))
    habermann.add_argument("--I", type=_fraction, default=Fraction(5))
    habermann.add_argument("--tau", type=_fraction, default=Fraction(1))
    habermann.add_argument("--L", type=_fraction, default=Fraction(2))
    habermann.add_argument("--G", type=_fraction, default=Fraction(3))
    habermann.add_argument("--P", type=_fraction, default=Fraction(4))

    besancenot = modelsub.add_parser("besancenot")
    besancenot.add_argument("--mu", type=_fraction, default=Fraction(3, 10))
    besancenot.add_argument("--theta-h", type=_fraction, default=Fraction(2))
    besancenot.add_argument("--theta-l", type=_fraction, default=Fraction(1))
    besancenot.add_argument("--lam", type=_fraction, default=Fraction(1, 4))
    besancenot.add_argument("--delta-a", type=_fraction, default=Fraction(2))
    besancenot.add_argument("--delta-t", type=_fraction, default=Fraction(1))
    besancenot.add_argument("--c", type=_fraction, default=Fraction(7, 4))
    besancenot.add_argument("--phi", type=_fraction, default=Fraction(3, 10))
    besancenot.add_argument("--belief-a", type=_fraction, default=Fraction(2))
    besancenot.add_argument("--belief-t", type=_fraction, default=Fraction(1))

    publishing = modelsub.add_parser("publishing")
    publishing.add_argument("--canonical", action="store_true", default=True)
    publishing.add_argument(
        "--values", default=None, help="comma list of symbol=rational"
    )
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            stdout.write(cmd_solve(args, stdin).render(args.format))
        elif args.command == "audit":
            stdout.write(cmd_audit(args).render(args.format))
        elif args.command == "dynamics":
            if args.mode == "br" and args.start is None:
                raise ParseError("br mode needs --start row,col")
            stdout.write(cmd_dynamics(args, stdin).render(args.format))
        elif args.command == "model":
            stdout.write(cmd_model(args))
        return 0
    except ExtensionLimitExceeded as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (GameError, ZeroDivisionError, TypeError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
