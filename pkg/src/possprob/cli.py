"""Command-line front end.

    possprob SUBCOMMAND SPECFILE [ARGS] [--machine] [--seed N] [--trials N]
             [--max-atoms N]

Exit status: 0 pass/consistent, 1 violation/contradiction, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import re
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from possprob import campaign
from possprob.correspondence import (
    bucket_decomposition,
    check_correspondence,
    desideratum1_demo,
    refine_to_correspondence,
    theorem3_oracle,
)
from possprob.events import DEFAULT_MAX_ATOMS, EnumerationCapError
from possprob.measure import (
    ProbabilityMeasure,
    check_axioms,
    classify,
    condition,
    is_reduction,
    theorem1_oracle,
)
from possprob.multinomial import BeliefState, belief_closure, simulate, Prop
from possprob.possibility import classify_modal, hacking_mismatch, possibility
from possprob.speclang import SpecFile, SpecParseError, parse

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Section:
    title: str
    items: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    def add(self, key, value):
        self.items.append((key, value))
        return self


@dataclass
class Report:
    command: str
    sections: list = field(default_factory=list)
    status: int = EXIT_OK

    def section(self, title) -> Section:
        s = Section(title)
        self.sections.append(s)
        return s

    def render(self, machine: bool = False) -> str:
        out = []
        for s in self.sections:
            if machine:
                prefix = _slug(s.title)
                out.extend(f"{prefix}.{_slug(k)}={v}" for k, v in s.items)
                out.extend(f"{prefix}.row={r}" for r in s.rows)
            else:
                out.append(f"[{s.title}]")
                out.extend(f"{k}: {v}" for k, v in s.items)
                out.extend(s.rows)
                out.append("")
        if machine:
            out.append(f"exit={self.status}")
        else:
            out.append(f"exit status: {self.status}")
        return "\n".join(out) + "\n"


def _slug(text: str) -> str:
    text = text.replace("⇔", " iff ").replace("=>", " implies ")
    return re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_")


def verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- loading ------------------------------------------------------------------

def load_measure(spec: SpecFile, report: Report) -> ProbabilityMeasure | None:
    """Measure from the spec, or None after recording the axiom failures."""
    if spec.measure is None:
        raise UsageError("spec has no measure block")
    sigma = spec.sigma_field()
    weights = spec.atom_weights(sigma)
    violations = check_axioms(sigma, weights)
    if violations:
        s = report.section("axioms")
        for v in violations:
            s.add(v.axiom, f"FAIL {v.detail}")
        report.status = EXIT_VIOLATION
        return None
    return ProbabilityMeasure(sigma, weights)


def load_possibility(spec: SpecFile):
    if spec.possible is None:
        raise UsageError("spec has no possible block")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return spec.possibility_space()


def named_event(spec: SpecFile, name: str):
    try:
        return spec.event(name)
    except KeyError:
        known = ", ".join(n for n, _ in spec.events) or "none"
        raise UsageError(f"unknown event '{name}'; defined events: {known}") from None


def fmt_weights(measure: ProbabilityMeasure, section: Section):
    space = measure.space
    for atom, w in zip(measure.field.atoms, measure.weights):
        section.add(space.format(atom), str(w))


# -- subcommands --------------------------------------------------------------

def cmd_validate(spec, args, report):
    if spec.measure is None:
        raise UsageError("spec has no measure block")
    sigma = spec.sigma_field()
    weights = spec.atom_weights(sigma)
    space = sigma.space
    report.section("space").add("outcomes", " ".join(space.outcomes)).add(
        "atoms", " ".join(space.format(a) for a in sigma.atoms))
    s = report.section("measure")
    for atom, w in zip(sigma.atoms, weights):
        s.add(space.format(atom), str(w))
    s.add("total", str(sum(weights, Fraction(0))))
    violations = {v.axiom: v for v in check_axioms(sigma, weights)}
    a = report.section("axioms")
    for axiom in ("Non-negativity", "Norming"):
        v = violations.get(axiom)
        a.add(axiom, "PASS" if v is None else f"FAIL {v.detail}")
    a.add("Additivity", "PASS (event probabilities are sums over atoms)")
    report.status = EXIT_VIOLATION if violations else EXIT_OK
    report.section("result").add("measure", "invalid" if violations else "valid")


def cmd_classify(spec, args, report):
    e = named_event(spec, args.event)
    w = load_possibility(spec)
    measure = load_measure(spec, report)
    if measure is None:
        return
    space = measure.space
    report.section("event").add("name", args.event).add("members", space.format(e))
    p = report.section("probability")
    modal = classify_modal(w, e)
    if measure.field.contains(e):
        cls = classify(measure, e)
        p.add("measurable", "yes").add("probability", str(measure.prob(e)))
        p.add("class", cls.value)
        p.add("significant", "yes" if cls.significant else "no")
        p.add("almost sure", "yes" if cls.almost_sure else "no")
        sig_word = cls.value
    else:
        p.add("measurable", "no").add("class", "undefined (not a union of atoms)")
        sig_word = "not measurable"
        report.status = EXIT_VIOLATION
    m = report.section("possibility")
    m.add("possibility", possibility(w, e))
    m.add("possible", "yes" if modal.possible else "no")
    m.add("certain", "yes" if modal.certain else "no")
    report.section("result").add(
        "summary", f"{'possible' if modal.possible else 'impossible'}, {sig_word}")


def cmd_condition(spec, args, report):
    e = named_event(spec, args.event)
    measure = load_measure(spec, report)
    if measure is None:
        return
    space = measure.space
    s = report.section("conditioning event").add("name", args.event).add(
        "members", space.format(e))
    if not measure.field.contains(e):
        s.add("error", "event is not a union of atoms")
        report.status = EXIT_VIOLATION
        return
    p = measure.prob(e)
    s.add("probability", str(p))
    if p == 0:
        s.add("error", "event is insignificant; conditioning is undefined")
        report.status = EXIT_VIOLATION
        return
    sub = condition(measure, e)
    c = report.section("conditional measure")
    c.add("outcomes", " ".join(sub.space.outcomes))
    fmt_weights(sub, c)
    r = report.section("reduction")
    check = is_reduction(sub, measure, args.max_atoms)
    r.add("almost sure", "yes" if p == 1 else "no")
    r.add("reduction of original", "yes" if check else "no")
    if not check:
        r.add("witness", f"{space.format(check.witness)} {check.sub_prob} vs {check.full_prob}")


def correspondence_section(report, w, measure, max_atoms):
    space = measure.space
    corr = check_correspondence(w, measure, max_atoms)
    s = report.section("correspondence")
    s.add("possible", space.format(w.possible))
    s.add("form", corr.form_used)
    if corr.prob_w is not None:
        s.add("P(W)", str(corr.prob_w))
    s.add("axiom", "holds" if corr.holds else "fails")
    s.add("witnesses", corr.total_witnesses)
    for e in corr.witnesses:
        s.rows.append(f"  impossible but significant: {space.format(e)} "
                      f"P={measure.prob(e)}")
    if corr.total_witnesses > len(corr.witnesses):
        s.rows.append(f"  ... {corr.total_witnesses - len(corr.witnesses)} more")
    return corr


def cmd_correspondence(spec, args, report):
    w = load_possibility(spec)
    measure = load_measure(spec, report)
    if measure is None:
        return
    corr = correspondence_section(report, w, measure, args.max_atoms)
    h = report.section("conditional possibility")
    witness = hacking_mismatch(w, measure, args.max_atoms)
    if witness is None:
        h.add("mismatch", "none")
    else:
        space = measure.space
        h.add("mismatch", f"E={space.format(witness.event)} C={space.format(witness.condition)} "
                          f"possibility(E|C)=0 P(E)={witness.probability}")
    report.status = EXIT_OK if corr.holds else EXIT_VIOLATION


def cmd_theorems(spec, args, report):
    w = load_possibility(spec)
    measure = load_measure(spec, report)
    if measure is None:
        return
    cap = args.max_atoms
    space = measure.space
    events = measure.field.enumerate_events(cap)
    failed = False
    s = report.section("instance")

    t1 = [theorem1_oracle(measure, e, cap) for e in events if measure.prob(e) > 0]
    ok1 = all(r.consistent for r in t1)
    s.add("theorem 1", f"{verdict(ok1)} ({len(t1)} significant conditioning events)")

    ok2 = True
    for e in events:
        modal = classify_modal(w, e)
        rest = space.complement(e)
        ok2 &= modal.possible == bool(e & w.possible)
        ok2 &= modal.certain == (w.possible <= e)
        ok2 &= modal.certain == classify_modal(w, rest).impossible
    s.add("theorem 2", f"{verdict(ok2)} ({len(events)} events)")
    failed |= not (ok1 and ok2)

    t3 = theorem3_oracle(w, measure, cap)
    if t3.applicable:
        s.add("theorem 3", f"{verdict(t3.passed)} (certain => almost sure: "
                           f"{verdict(t3.certain_are_almost_sure)}, significant => possible: "
                           f"{verdict(t3.significant_are_possible)})")
        failed |= not t3.passed
    else:
        s.add("theorem 3", f"N/A ({t3.note})")

    buckets = bucket_decomposition(measure, measure.field.atoms)
    s.add("bucket bound", f"{verdict(buckets.bound_holds())} (" + ", ".join(
        f"k={k}:{len(v)}" for k, v in buckets.buckets.items())
        + f"; {len(buckets.zero_cells)} null atoms)")

    if t3.applicable and measure.field.contains(w.possible):
        refined = refine_to_correspondence(w, measure, cap)
        ok5 = refined.reduction.holds and campaign.refined_dichotomies_agree(refined)
        s.add("theorem 5", f"{verdict(ok5)} (refined space {space.format(refined.measure.space)})")
        d1 = desideratum1_demo(w, measure, max_atoms=cap)
        s.add("desideratum 1", f"{verdict(d1.holds)} ({len(d1.checks)} exclusions)")
        failed |= not (ok5 and d1.holds)
    else:
        s.add("theorem 5", "N/A (needs the axiom and W a union of atoms)")

    seed = args.seed if args.seed is not None else (
        spec.multinomial.seed if spec.multinomial and spec.multinomial.seed is not None else 0)
    config = campaign.CampaignConfig(trials=args.trials, seed=seed,
                                     enumeration_cap=cap)
    result = campaign.run_campaign(config)
    c = report.section("campaign")
    c.add("trials", config.trials).add("seed", config.seed)
    for name, r in result.results.items():
        line = f"{verdict(r.passed)} ({r.instances} instances"
        line += f", {r.skipped} not applicable)" if r.skipped else ")"
        if not r.passed:
            line += f" first failure: {r.first_failure}"
        c.add(name, line)
    failed |= not result.passed
    report.status = EXIT_VIOLATION if failed else EXIT_OK


def cmd_reduce(spec, args, report):
    w = load_possibility(spec)
    measure = load_measure(spec, report)
    if measure is None:
        return
    space = measure.space
    if not measure.field.contains(w.possible):
        report.section("refinement").add("refused", "W is not a union of atoms")
        report.status = EXIT_VIOLATION
        return
    corr = check_correspondence(w, measure, args.max_atoms)
    if not corr.holds:
        correspondence_section(report, w, measure, args.max_atoms)
        report.section("refinement").add("refused", "correspondence axiom fails")
        report.status = EXIT_VIOLATION
        return
    refined = refine_to_correspondence(w, measure, args.max_atoms)
    r = report.section("refined space")
    r.add("outcomes", " ".join(refined.measure.space.outcomes))
    r.add("removed", space.format(refined.removed))
    r.add("possible", space.format(refined.possibility.possible))
    fmt_weights(refined.measure, report.section("refined measure"))
    agree_sig, agree_sure = True, True
    m, rw = refined.measure, refined.possibility
    for e in m.field.iter_events(args.max_atoms):
        sig, modal = classify(m, e), classify_modal(rw, e)
        agree_sig &= sig.significant == modal.possible
        agree_sure &= sig.almost_sure == modal.certain
    p = report.section("post-check")
    p.add("possible ⇔ significant", verdict(agree_sig))
    p.add("almost sure ⇔ certain", verdict(agree_sure))
    p.add("reduction of original", verdict(refined.reduction.holds))
    report.status = EXIT_OK if agree_sig and agree_sure and refined.reduction else EXIT_VIOLATION


def cmd_simulate(spec, args, report):
    mb = spec.multinomial
    if mb is None:
        raise UsageError("spec has no multinomial block")
    seed = args.seed if args.seed is not None else mb.seed
    if seed is None:
        raise UsageError("no seed: give seed= in the multinomial block or --seed")
    if any(t < 0 for t in mb.theta) or sum(mb.theta) != 1:
        report.section("multinomial").add(
            "theta", f"FAIL {','.join(map(str, mb.theta))} is not a probability vector")
        report.status = EXIT_VIOLATION
        return
    result = simulate(mb.theta, mb.k, seed)
    s = report.section("simulation")
    s.add("seed", seed).add("m", mb.m).add("k", mb.k)
    s.add("theta", ",".join(str(t) for t in mb.theta))
    final = result.final_estimate
    s.add("final estimate", ",".join(f"{e:.6f}" for e in final))
    s.add("max deviation", f"{max(abs(e - float(t)) for e, t in zip(final, mb.theta)):.6f}")
    table = result.table_text()
    report.section("convergence").rows.extend(table.splitlines())
    if args.table:
        with open(args.table, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(table)


def cmd_beliefs(spec, args, report):
    if spec.beliefs is None:
        raise UsageError("spec has no beliefs block")
    state = BeliefState(frozenset(spec.beliefs.propositions), spec.beliefs.exchangeable)
    closure = belief_closure(state)
    s = report.section("beliefs")
    s.add("exchangeable", "yes" if state.exchangeable else "no")
    s.add("given", " ".join(str(p) for p in spec.beliefs.propositions) or "(none)")
    s.add("closure", " ".join(str(p) for p in Prop if p in closure.state.propositions)
          or "(none)")
    t = report.section("derivations")
    t.rows.extend(str(d) for d in closure.trace)
    r = report.section("result")
    for p, q in closure.contradictions:
        r.add("contradiction", f"{p} and {q}")
    r.add("status", "consistent" if closure.consistent else "contradiction")
    report.status = EXIT_OK if closure.consistent else EXIT_VIOLATION


COMMANDS = {
    "validate": (cmd_validate, "check the probability axioms"),
    "classify": (cmd_classify, "significance and modal class of a named event"),
    "condition": (cmd_condition, "condition the measure on a named event"),
    "correspondence": (cmd_correspondence, "check the correspondence axiom"),
    "theorems": (cmd_theorems, "run the theorem oracles and a randomized campaign"),
    "reduce": (cmd_reduce, "refine so that possibility and significance coincide"),
    "simulate": (cmd_simulate, "simulate the multinomial block"),
    "beliefs": (cmd_beliefs, "close the beliefs block under the implication rules"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true",
                        help="emit key=value records instead of text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS)
    def formatter(prog):
        return argparse.HelpFormatter(prog, width=80)

    parser = argparse.ArgumentParser(prog="possprob", formatter_class=formatter,
                                     description="Finite possibility/probability workbench")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text,
                           formatter_class=formatter)
        p.add_argument("specfile")
        if name in ("classify", "condition"):
            p.add_argument("event")
        if name == "simulate":
            p.add_argument("--table", help="also write the convergence table here")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out, err = sys.stdout, sys.stderr
    try:
        with open(args.specfile, "rb") as fh:
            text = fh.read().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{args.specfile}: error: cannot read spec file: {exc}", file=err)
        return EXIT_USAGE
    try:
        spec = parse(text)
    except SpecParseError as exc:
        for d in exc.diagnostics:
            print(d.format(args.specfile), file=err)
        return EXIT_USAGE
    for d in spec.warnings:
        print(d.format(args.specfile), file=err)
    report = Report(args.command)
    handler = COMMANDS[args.command][0]
    try:
        handler(spec, args, report)
    except UsageError as exc:
        print(f"possprob {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except EnumerationCapError as exc:
        print(f"possprob {args.command}: error: {exc}; raise --max-atoms", file=err)
        return EXIT_USAGE
    out.write(report.render(args.machine))
    return report.status


def capture(argv) -> tuple[str, str, int]:
    """Run in-process and return (stdout, stderr, exit status)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return out.getvalue(), err.getvalue(), code


def entry():
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    sys.exit(main())


if __name__ == "__main__":
    entry()
