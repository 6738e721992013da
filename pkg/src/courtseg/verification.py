"""Sampling-based quality audit: sample-size planning, seeded drawing,
judgment recording, and confidence-interval reporting.

The planned sample size follows Cochran's formula n0 = Z^2 p (1-p) / e^2
with the finite population correction n = n0 / (1 + (n0 - 1) / N), rounded
up. The reported interval is the normal approximation with the FPC factor
sqrt((N - n) / (N - 1)), clipped to [0, 1].
"""

import json
import math
import os
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from statistics import NormalDist

VERDICTS = ("correct", "incorrect")

# Conventional table values at the standard levels, so published numbers
# (Z=1.96 -> n0=384.16) reproduce digit for digit.
_CONVENTIONAL_Z = ((0.90, 1.645), (0.95, 1.96), (0.99, 2.576))

_COMPACT_EVERY = 200  # journal entries folded into the main file after this many appends


class IncompleteReviewError(Exception):
    """Raised when a report is requested before every sampled case is judged."""

    def __init__(self, missing_ids: Sequence[int]):
        self.missing_ids = list(missing_ids)
        super().__init__(f"incomplete review: {len(self.missing_ids)} judgments missing")


def critical_value(confidence: float) -> float:
    """Two-sided standard-normal critical value for the given confidence level."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    for level, z in _CONVENTIONAL_Z:
        if math.isclose(confidence, level, rel_tol=0.0, abs_tol=1e-9):
            return z
    return NormalDist().inv_cdf((1.0 + confidence) / 2.0)


def cochran_n0(z: float, p: float, e: float) -> float:
    """Infinite-population sample size Z^2 p (1-p) / e^2."""
    if z <= 0.0:
        raise ValueError(f"z must be positive, got {z}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if not 0.0 < e < 1.0:
        raise ValueError(f"e must be in (0, 1), got {e}")
    return z * z * p * (1.0 - p) / (e * e)


def fpc_sample_size(n0: float, population_n: int) -> float:
    """Finite population correction n0 / (1 + (n0 - 1) / N)."""
    if population_n < 1:
        raise ValueError(f"population_n must be >= 1, got {population_n}")
    if n0 < 0.0:
        raise ValueError(f"n0 must be non-negative, got {n0}")
    if n0 == 0.0:  # degenerate zero-variance plan; also avoids 0/0 at N=1
        return 0.0
    return n0 / (1.0 + (n0 - 1.0) / population_n)


@dataclass(frozen=True)
class SamplingPlan:
    population_n: int
    confidence: float
    margin_e: float
    assumed_p: float
    z: float
    n0: float
    n_real: float
    n: int


def plan(population_n: int, confidence: float, margin: float, assumed_p: float = 0.5) -> SamplingPlan:
    """Compose critical value, Cochran's formula and the FPC; round up.

    assumed_p defaults to 0.5, which maximizes the variance and yields the
    most conservative (largest) sample size.
    """
    z = critical_value(confidence)
    n0 = cochran_n0(z, assumed_p, margin)
    n_real = fpc_sample_size(n0, population_n)
    n = math.ceil(n_real)
    if n > population_n:
        raise ValueError(f"sample size {n} exceeds population {population_n}")
    return SamplingPlan(population_n, confidence, margin, assumed_p, z, n0, n_real, n)


def draw_sample(ids: Iterable[int], n: int, seed: int) -> list[int]:
    """Uniform sample without replacement, deterministic for a fixed seed.

    Implemented as a seeded shuffle of the sorted id list, taking the first
    n entries; the result is in draw order.
    """
    pool = sorted(ids)
    if len(pool) != len(set(pool)):
        raise ValueError("ids must be distinct")
    if n > len(pool):
        raise ValueError(f"cannot draw {n} from {len(pool)} ids")
    random.Random(seed).shuffle(pool)
    return pool[:n]


def proportion_ci(
    k_correct: int, n: int, population_n: int, confidence: float
) -> tuple[float, float]:
    """Normal-approximation interval for k/n with FPC, clipped to [0, 1]."""
    if n == 0:
        raise ValueError("n must be positive")
    if not 0 <= k_correct <= n <= population_n:
        raise ValueError(f"need 0 <= k <= n <= N, got k={k_correct}, n={n}, N={population_n}")
    z = critical_value(confidence)
    p_hat = k_correct / n
    fpc = math.sqrt((population_n - n) / (population_n - 1)) if population_n > 1 else 0.0
    half_width = z * math.sqrt(p_hat * (1.0 - p_hat) / n) * fpc
    return max(0.0, p_hat - half_width), min(1.0, p_hat + half_width)


@dataclass(frozen=True)
class Judgment:
    verdict: str
    note: str = ""
    timestamp: str = ""


@dataclass(frozen=True)
class VerificationReport:
    n: int
    k_correct: int
    p_hat: float
    ci_low: float
    ci_high: float
    confidence: float


def plan_to_dict(p: SamplingPlan) -> dict:
    return {
        "population_n": p.population_n,
        "confidence": p.confidence,
        "margin_e": p.margin_e,
        "assumed_p": p.assumed_p,
        "z": p.z,
        "n0": p.n0,
        "n_real": p.n_real,
        "n": p.n,
    }


def plan_from_dict(obj: dict) -> SamplingPlan:
    return SamplingPlan(
        population_n=int(obj["population_n"]),
        confidence=float(obj["confidence"]),
        margin_e=float(obj["margin_e"]),
        assumed_p=float(obj["assumed_p"]),
        z=float(obj["z"]),
        n0=float(obj["n0"]),
        n_real=float(obj["n_real"]),
        n=int(obj["n"]),
    )


def report_to_dict(r: VerificationReport) -> dict:
    return {
        "n": r.n,
        "k_correct": r.k_correct,
        "p_hat": r.p_hat,
        "ci_low": r.ci_low,
        "ci_high": r.ci_high,
        "confidence": r.confidence,
    }


class VerificationSession:
    """A drawn sample under review, persisted as a JSON file plus journal.

    Judgments are appended to ``<path>.journal`` before the in-memory state
    changes, then periodically compacted into the main file; a crashed
    session replays the journal on load. Single writer at a time.
    """

    def __init__(
        self,
        plan: SamplingPlan,
        seed: int,
        sampled_ids: Sequence[int],
        path: str | Path,
        judgments: dict[int, Judgment] | None = None,
    ):
        if len(set(sampled_ids)) != len(sampled_ids):
            raise ValueError("sampled_ids must be distinct")
        if len(sampled_ids) != plan.n:
            raise ValueError(f"expected {plan.n} sampled ids, got {len(sampled_ids)}")
        self.plan = plan
        self.seed = seed
        self.sampled_ids = list(sampled_ids)
        self.path = Path(path)
        self.judgments: dict[int, Judgment] = dict(judgments or {})
        self._id_set = set(self.sampled_ids)
        self._appends_since_compact = 0

    @property
    def journal_path(self) -> Path:
        return self.path.with_name(self.path.name + ".journal")

    @classmethod
    def create(
        cls, plan: SamplingPlan, corpus_ids: Iterable[int], seed: int, path: str | Path
    ) -> "VerificationSession":
        """Draw the sample from the corpus ids and persist a fresh session."""
        session = cls(plan, seed, draw_sample(corpus_ids, plan.n, seed), path)
        session.save()
        return session

    @classmethod
    def load(cls, path: str | Path) -> "VerificationSession":
        """Read the session file and replay any journal left by a crash."""
        path = Path(path)
        obj = json.loads(path.read_text(encoding="utf-8"))
        judgments = {
            int(case_id): Judgment(j["verdict"], j.get("note", ""), j.get("timestamp", ""))
            for case_id, j in (obj.get("judgments") or {}).items()
        }
        session = cls(
            plan_from_dict(obj["plan"]),
            int(obj["seed"]),
            [int(i) for i in obj["sampled_ids"]],
            path,
            judgments,
        )
        journal = session.journal_path
        if journal.exists():
            for line in journal.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                try:
                    entry = json.loads(line)
                    session.judgments[int(entry["id"])] = Judgment(
                        entry["verdict"], entry.get("note", ""), entry.get("timestamp", "")
                    )
                except (json.JSONDecodeError, KeyError, ValueError):
                    continue  # torn tail write from a crash
        return session

    def to_dict(self) -> dict:
        return {
            "plan": plan_to_dict(self.plan),
            "seed": self.seed,
            "sampled_ids": self.sampled_ids,
            "judgments": {
                str(case_id): {"verdict": j.verdict, "note": j.note, "timestamp": j.timestamp}
                for case_id, j in sorted(self.judgments.items())
            },
        }

    def save(self) -> None:
        """Atomically rewrite the main file and drop the folded-in journal."""
        tmp = self.path.with_name(self.path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, ensure_ascii=False, indent=2)
            fh.write("\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.path)
        self.journal_path.unlink(missing_ok=True)
        self._appends_since_compact = 0

    def record_judgment(self, case_id: int, verdict: str, note: str = "") -> "VerificationSession":
        """Upsert one judgment, persisted (journal append) before returning."""
        if case_id not in self._id_set:
            raise ValueError(f"id {case_id} is not part of the sample")
        if verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}, got {verdict!r}")
        entry = {
            "id": case_id,
            "verdict": verdict,
            "note": note,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        with open(self.journal_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        self.judgments[case_id] = Judgment(entry["verdict"], entry["note"], entry["timestamp"])
        self._appends_since_compact += 1
        if self._appends_since_compact >= _COMPACT_EVERY:
            self.save()
        return self

    def is_sampled(self, case_id: int) -> bool:
        return case_id in self._id_set

    def missing_ids(self) -> list[int]:
        return [i for i in self.sampled_ids if i not in self.judgments]

    def judged_count(self) -> int:
        return len(self.judgments)

    def correct_count(self) -> int:
        # snapshot: readers may run concurrently with the single writer
        return sum(1 for j in list(self.judgments.values()) if j.verdict == "correct")


def report(session: VerificationSession) -> VerificationReport:
    """Aggregate a fully judged session into the point estimate and interval."""
    missing = session.missing_ids()
    if missing:
        raise IncompleteReviewError(missing)
    n = session.plan.n
    k = session.correct_count()
    ci_low, ci_high = proportion_ci(k, n, session.plan.population_n, session.plan.confidence)
    return VerificationReport(
        n=n,
        k_correct=k,
        p_hat=k / n,
        ci_low=ci_low,
        ci_high=ci_high,
        confidence=session.plan.confidence,
    )
