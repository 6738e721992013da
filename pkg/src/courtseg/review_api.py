"""HTTP API backing the manual review UI.

Serves the sampled cases of one verification session and records judgments.
Judgment writes are serialized through a lock (single-writer session);
reads are safe alongside. All statistics shown by the UI come from here.
"""

import threading
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, HTTPException
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .records import SegmentedDecision, reference_to_dict
from .verification import (
    IncompleteReviewError,
    VerificationSession,
    plan_to_dict,
    proportion_ci,
    report,
    report_to_dict,
)

_PLACEHOLDER = """<!doctype html>
<html><head><meta charset="utf-8"><title>Review API</title></head>
<body><h1>Review API running</h1>
<p>No UI assets found. Build the frontend (see README) or point --ui-dir at the built assets.
The JSON API lives under <code>/api/</code>.</p></body></html>"""


class JudgmentIn(BaseModel):
    verdict: Literal["correct", "incorrect"]
    note: str = ""


def create_app(
    session: VerificationSession,
    corpus: dict[int, SegmentedDecision],
    ui_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="courtseg review", docs_url=None, redoc_url=None)
    write_lock = threading.Lock()

    def progress() -> dict:
        return {
            "judged": session.judged_count(),
            "total": session.plan.n,
            "correct": session.correct_count(),
        }

    def interim() -> dict | None:
        judged = session.judged_count()
        if judged == 0:
            return None
        correct = session.correct_count()
        ci_low, ci_high = proportion_ci(
            correct, judged, session.plan.population_n, session.plan.confidence
        )
        return {
            "n_judged": judged,
            "p_hat": correct / judged,
            "ci_low": ci_low,
            "ci_high": ci_high,
            "confidence": session.plan.confidence,
        }

    @app.get("/api/session")
    def get_session():
        return {
            "plan": plan_to_dict(session.plan),
            "seed": session.seed,
            "progress": progress(),
            "cases": [
                {
                    "id": case_id,
                    "verdict": session.judgments[case_id].verdict
                    if case_id in session.judgments
                    else None,
                }
                for case_id in session.sampled_ids
            ],
            "interim": interim(),
        }

    @app.get("/api/cases/{case_id}")
    def get_case(case_id: int):
        if not session.is_sampled(case_id):
            raise HTTPException(status_code=404, detail=f"id {case_id} is not part of the sample")
        rec = corpus.get(case_id)
        if rec is None:
            raise HTTPException(status_code=404, detail=f"id {case_id} missing from the corpus")
        judgment = session.judgments.get(case_id)
        return {
            "id": rec.id,
            "file_number": rec.file_number,
            "date": rec.date,
            "type": rec.decision_type,
            "ecli": rec.ecli,
            "court": {"name": rec.court.name, "state": rec.court.state, "city": rec.court.city},
            "sections": {
                "tenor": rec.tenor,
                "tatbestand": rec.tatbestand,
                "entscheidungsgruende": rec.entscheidungsgruende,
                "rechtsmittelbelehrung": rec.rechtsmittelbelehrung,
            },
            "references": [reference_to_dict(r) for r in rec.references],
            "verdict": judgment.verdict if judgment else None,
            "note": judgment.note if judgment else "",
        }

    @app.post("/api/cases/{case_id}/judgment")
    def post_judgment(case_id: int, body: JudgmentIn):
        with write_lock:
            try:
                session.record_judgment(case_id, body.verdict, body.note)
            except ValueError as exc:
                raise HTTPException(status_code=404, detail=str(exc)) from exc
        return {
            "id": case_id,
            "verdict": body.verdict,
            "note": body.note,
            "progress": progress(),
            "interim": interim(),
        }

    @app.get("/api/report")
    def get_report():
        try:
            return report_to_dict(report(session))
        except IncompleteReviewError as exc:
            raise HTTPException(
                status_code=400, detail={"missing": len(exc.missing_ids)}
            ) from exc

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path and (ui_path / "index.html").is_file():
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def placeholder():
            return _PLACEHOLDER

    return app
