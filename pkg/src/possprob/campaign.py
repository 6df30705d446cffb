"""Seeded randomized campaigns over the theorem oracles.

Each trial draws its own ``random.Random`` from ``(seed, trial)`` so results
do not depend on the order trials run in.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

from possprob.correspondence import (
    bucket_decomposition,
    check_correspondence,
    refine_to_correspondence,
    theorem3_oracle,
)
from possprob.measure import classify, theorem1_oracle
from possprob.possibility import classify_modal
from possprob import sampling


@dataclass
class CampaignConfig:
    trials: int = 1000
    seed: int = 0
    min_atoms: int = 1
    max_atoms: int = 6
    enumeration_cap: int = 20


@dataclass
class CampaignResult:
    name: str
    instances: int = 0
    failures: int = 0
    skipped: int = 0
    first_failure: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, detail: str):
        self.failures += 1
        if not self.first_failure:
            self.first_failure = detail


@dataclass
class CampaignReport:
    config: CampaignConfig
    results: dict[str, CampaignResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def refined_dichotomies_agree(refined) -> bool:
    """significant <=> possible and almost sure <=> certain on every event."""
    m, w = refined.measure, refined.possibility
    for e in m.field.iter_events():
        sig, modal = classify(m, e), classify_modal(w, e)
        if sig.significant != modal.possible or sig.almost_sure != modal.certain:
            return False
    return True


def run_campaign(config: CampaignConfig) -> CampaignReport:
    names = ("theorem1", "theorem3", "axiom-witnesses", "bucket-bound", "theorem5")
    report = CampaignReport(config, {n: CampaignResult(n) for n in names})
    r = report.results
    cap = config.enumeration_cap
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for trial in range(config.trials):
            rng = trial_rng(config.seed, trial)
            measure = sampling.random_measure(
                rng, rng.randint(config.min_atoms, config.max_atoms))
            space = measure.space

            events = measure.field.enumerate_events(cap)
            s0 = rng.choice([e for e in events if measure.prob(e) > 0])
            t1 = theorem1_oracle(measure, s0, cap)
            r["theorem1"].instances += 1
            if not t1.consistent:
                r["theorem1"].fail(f"trial {trial}: S0={space.format(s0)}")

            w = (sampling.correspondent_possibility(rng, measure)
                 if rng.random() < 0.5 else sampling.random_possibility(rng, measure))
            corr = check_correspondence(w, measure, cap)
            if corr.holds:
                t3 = theorem3_oracle(w, measure, cap)
                r["theorem3"].instances += 1
                if not t3.passed:
                    r["theorem3"].fail(f"trial {trial}: W={space.format(w.possible)}")
            else:
                r["theorem3"].skipped += 1
                r["axiom-witnesses"].instances += 1
                if not corr.witnesses:
                    r["axiom-witnesses"].fail(
                        f"trial {trial}: violation without witnesses")

            cells = sampling.random_coarsening(rng, measure.field)
            decomposition = bucket_decomposition(measure, cells)
            binned = sum(len(v) for v in decomposition.buckets.values())
            significant = sum(1 for c in cells if measure.prob(c) > 0)
            r["bucket-bound"].instances += 1
            if not decomposition.bound_holds() or binned != significant:
                r["bucket-bound"].fail(f"trial {trial}")

            if corr.holds and measure.field.contains(w.possible):
                refined = refine_to_correspondence(w, measure, cap)
                r["theorem5"].instances += 1
                if not (refined.reduction.holds and refined_dichotomies_agree(refined)):
                    r["theorem5"].fail(f"trial {trial}: W={space.format(w.possible)}")
            else:
                r["theorem5"].skipped += 1
    return report
