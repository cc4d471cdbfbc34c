"""Attribute exploration: pose implication questions, accept answers or
validated counterexamples, stop anytime, export the grown context and base.

One session is a strictly serialized state machine; callers must not run two
mutations concurrently.  Question premises are recomputed against the current
working context on every step, so a counterexample can retire the pending
question.  Counterexamples only ever add object rows; accepted implications
therefore stay valid (their premise closures are unchanged by any row that
respects them).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from lattice_tax import kernels
from lattice_tax.context import FormalContext
from lattice_tax.implications import (
    Implication,
    ImplicationBase,
    Provenance,
    implication_to_dict,
    render_implication,
)
from lattice_tax.kernels.bitops import close_under_implications, indices_of, mask_of

SESSION_FORMAT_VERSION = 1


class Status(enum.Enum):
    IDLE = "idle"
    AWAITING_ANSWER = "awaiting-answer"
    FINISHED = "finished"
    STOPPED = "stopped"


class ExplorationError(RuntimeError):
    """Operation invalid in the session's current status."""


class CounterexampleError(ValueError):
    """An invalid counterexample; the session is left untouched."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class SessionLoadError(ValueError):
    pass


@dataclass(frozen=True)
class Counterexample:
    object_name: str
    attributes: frozenset[int]


@dataclass(frozen=True)
class LogEvent:
    ts: str
    event: str  # question-posed | accepted | counterexample-added | stopped
    detail: dict


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def question_text(imp: Implication, attributes: tuple[str, ...], *,
                  subject: str = "an object") -> str:
    """Render a question in the interview phrasing the UI and CLI share."""
    concl = ", ".join(f'"{attributes[i]}"' for i in sorted(imp.conclusion))
    if not imp.premise:
        return f"Is it true, that every {subject.split(' ', 1)[-1]} has attribute {concl}?"
    prem = ", ".join(f'"{attributes[i]}"' for i in sorted(imp.premise))
    return (f"Is it true, that when {subject} has attribute {prem}, "
            f"that it also has attribute {concl}?")


@dataclass
class ExplorationSession:
    working_context: FormalContext
    accepted: ImplicationBase
    cursor: frozenset[int]
    status: Status
    log: list[LogEvent] = field(default_factory=list)
    pending: Optional[Implication] = None
    seq: int = 0  # sequence number of the latest posed question

    def accepted_masks(self) -> list[tuple[int, int]]:
        return [(mask_of(i.premise), mask_of(i.full_conclusion)) for i in self.accepted]


def start_session(ctx: FormalContext) -> ExplorationSession:
    """Fresh session: cursor at the lectic minimum, nothing accepted.

    A context without attributes has nothing to ask and starts finished.
    """
    base = ImplicationBase(ctx.attributes, (), Provenance.EXPLORATION_ACCEPTED)
    status = Status.FINISHED if ctx.n_attributes == 0 else Status.IDLE
    return ExplorationSession(ctx, base, frozenset(), status)


def _next_closed_under(imps: list[tuple[int, int]], a: int, n: int) -> Optional[int]:
    """Lectically next set closed under the accepted implications, or None past M."""
    full = (1 << n) - 1
    if a == full:
        return None
    for i in range(n - 1, -1, -1):
        bit = 1 << i
        if a & bit:
            continue
        prefix = bit - 1
        b = close_under_implications(imps, (a & prefix) | bit)
        if b & prefix == a & prefix:
            return b
    return None  # unreachable: M is always closed


def _find_question(session: ExplorationSession) -> Optional[tuple[int, int]]:
    ctx = session.working_context
    n = ctx.n_attributes
    imps = session.accepted_masks()
    p: Optional[int] = mask_of(session.cursor)
    if close_under_implications(imps, p) != p:
        p = _next_closed_under(imps, p, n)
    while p is not None:
        c = kernels.close_intent(ctx.row_masks, n, p)
        if c != p:
            return p, c
        p = _next_closed_under(imps, p, n)
    return None


def next_question(session: ExplorationSession) -> Optional[Implication]:
    """Pose the lectically least open implication, or finish the session.

    The premise is the least attribute set closed under the accepted base
    whose context closure adds something; the question is premise -> closure
    minus premise.
    """
    if session.status is not Status.IDLE:
        raise ExplorationError(f"cannot ask a question while {session.status.value}")
    found = _find_question(session)
    if found is None:
        session.status = Status.FINISHED
        return None
    p, c = found
    session.cursor = frozenset(indices_of(p))
    session.pending = Implication(session.cursor, frozenset(indices_of(c & ~p)))
    session.seq += 1
    session.status = Status.AWAITING_ANSWER
    session.log.append(LogEvent(_now(), "question-posed", {
        "seq": session.seq,
        "premise": session.working_context.attribute_names(session.pending.premise),
        "conclusion": session.working_context.attribute_names(session.pending.conclusion),
    }))
    return session.pending


def accept(session: ExplorationSession) -> ExplorationSession:
    """Confirm the pending implication; it joins the accepted base."""
    if session.status is not Status.AWAITING_ANSWER or session.pending is None:
        raise ExplorationError("no pending question to accept")
    session.accepted = ImplicationBase(
        session.accepted.attributes,
        (*session.accepted.implications, session.pending),
        Provenance.EXPLORATION_ACCEPTED,
    )
    session.log.append(LogEvent(_now(), "accepted", {"seq": session.seq}))
    session.pending = None
    session.status = Status.IDLE
    return session


def _validate_counterexample(session: ExplorationSession, ce: Counterexample) -> frozenset[int]:
    ctx = session.working_context
    if ce.object_name in ctx.objects:
        raise CounterexampleError(
            "name-collision", f"object {ce.object_name!r} already exists in the context")
    attrs = ctx.attribute_set(ce.attributes)
    x = mask_of(attrs)
    assert session.pending is not None
    p = mask_of(session.pending.premise)
    c_full = mask_of(session.pending.full_conclusion)
    if x & p != p:
        missing = ctx.attribute_names(indices_of(p & ~x))
        raise CounterexampleError(
            "counterexample-not-violating",
            f"counterexample does not violate the pending implication: "
            f"it lacks premise attribute(s) {missing}")
    if x & c_full == c_full:
        raise CounterexampleError(
            "counterexample-not-violating",
            "counterexample does not violate the pending implication: "
            "it carries every conclusion attribute")
    for imp in session.accepted:
        ip = mask_of(imp.premise)
        ic = mask_of(imp.full_conclusion)
        if x & ip == ip and x & ic != ic:
            raise CounterexampleError(
                "counterexample-contradicts-accepted",
                f"counterexample contradicts the previously accepted implication "
                f"{render_implication(imp, ctx.attributes)}")
    return attrs


def reject(session: ExplorationSession, counterexample: Counterexample) -> ExplorationSession:
    """Refute the pending question with a new object.

    The object must violate the pending implication and satisfy every
    accepted one; otherwise the session is left byte-identical and a
    :class:`CounterexampleError` names the failed rule.  The cursor stays:
    the same premise is re-examined against the grown context.
    """
    if session.status is not Status.AWAITING_ANSWER or session.pending is None:
        raise ExplorationError("no pending question to refute")
    attrs = _validate_counterexample(session, counterexample)
    ctx = session.working_context
    row = mask_of(attrs)
    session.working_context = FormalContext(
        ctx.name,
        (*ctx.objects, counterexample.object_name),
        ctx.attributes,
        (*ctx.row_masks, row),
    )
    session.log.append(LogEvent(_now(), "counterexample-added", {
        "seq": session.seq,
        "object": counterexample.object_name,
        "attributes": ctx.attribute_names(attrs),
    }))
    session.pending = None
    session.status = Status.IDLE
    return session


def stop(session: ExplorationSession) -> ExplorationSession:
    """Terminal stop; the partial base and grown context remain exportable."""
    if session.status is Status.FINISHED:
        raise ExplorationError("session already finished")
    if session.status is Status.STOPPED:
        return session
    session.status = Status.STOPPED
    session.pending = None
    session.log.append(LogEvent(_now(), "stopped", {"after-question": session.seq}))
    return session


def run_with_oracle(ctx: FormalContext, hidden_ctx: FormalContext) -> ExplorationSession:
    """Drive a session with a simulated expert that consults ``hidden_ctx``.

    Questions holding in the hidden context are accepted; failing ones are
    refuted with the first hidden object that violates them.  Terminates with
    a base sound and complete for the hidden context.
    """
    if ctx.attributes != hidden_ctx.attributes:
        raise ValueError("hidden context has a different attribute universe")
    hidden_rows = {name: hidden_ctx.row_masks[i] for i, name in enumerate(hidden_ctx.objects)}
    for i, name in enumerate(ctx.objects):
        if name not in hidden_rows:
            raise ValueError(f"object {name!r} missing from the hidden context")
        if hidden_rows[name] != ctx.row_masks[i]:
            raise ValueError(f"object {name!r} has inconsistent rows")

    session = start_session(ctx)
    while session.status is Status.IDLE:
        q = next_question(session)
        if q is None:
            break
        p = mask_of(q.premise)
        c_full = mask_of(q.full_conclusion)
        violator = None
        for name, row in hidden_rows.items():
            if row & p == p and row & c_full != c_full:
                violator = (name, row)
                break
        if violator is None:
            accept(session)
        else:
            name, row = violator
            reject(session, Counterexample(name, frozenset(indices_of(row))))
    return session


# -- serialization -----------------------------------------------------------

_STATUS_BY_VALUE = {s.value: s for s in Status}


def session_to_dict(session: ExplorationSession) -> dict:
    ctx = session.working_context
    return {
        "version": SESSION_FORMAT_VERSION,
        "context": {
            "name": ctx.name,
            "objects": list(ctx.objects),
            "attributes": list(ctx.attributes),
            "incidence": [ctx.row_string(g) for g in range(ctx.n_objects)],
        },
        "accepted": [implication_to_dict(i, ctx.attributes) for i in session.accepted],
        "cursor": ctx.attribute_names(session.cursor),
        "status": session.status.value,
        "log": [{"ts": e.ts, "event": e.event, "detail": e.detail} for e in session.log],
    }


def save_session(session: ExplorationSession) -> str:
    return json.dumps(session_to_dict(session), indent=2) + "\n"


def load_session(text: str) -> ExplorationSession:
    """Rebuild a session; the pending question, if any, is recomputed (it is
    a deterministic function of the cursor and working context)."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionLoadError(f"malformed session payload: {exc}") from None
    if not isinstance(payload, dict):
        raise SessionLoadError("malformed session payload: not an object")
    version = payload.get("version")
    if version != SESSION_FORMAT_VERSION:
        raise SessionLoadError(f"unsupported session version {version!r}")
    try:
        c = payload["context"]
        ctx = FormalContext(c["name"], c["objects"], c["attributes"], c["incidence"])
        attr_index = {a: i for i, a in enumerate(ctx.attributes)}
        imps = []
        for entry in payload["accepted"]:
            imps.append(Implication(
                frozenset(attr_index[a] for a in entry["premise"]),
                frozenset(attr_index[a] for a in entry["conclusion"]),
                entry.get("support"),
            ))
        cursor = frozenset(attr_index[a] for a in payload["cursor"])
        status = _STATUS_BY_VALUE[payload["status"]]
        log = [LogEvent(e["ts"], e["event"], e["detail"]) for e in payload["log"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SessionLoadError(f"malformed session payload: {exc!r}") from None

    session = ExplorationSession(
        ctx,
        ImplicationBase(ctx.attributes, tuple(imps), Provenance.EXPLORATION_ACCEPTED),
        cursor,
        status,
        log=log,
        seq=sum(1 for e in log if e.event == "question-posed"),
    )
    if status is Status.AWAITING_ANSWER:
        p = mask_of(cursor)
        c_mask = kernels.close_intent(ctx.row_masks, ctx.n_attributes, p)
        if c_mask == p:
            raise SessionLoadError("awaiting-answer status but the cursor poses no question")
        session.pending = Implication(cursor, frozenset(indices_of(c_mask & ~p)))
    return session
