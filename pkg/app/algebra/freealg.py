"""Free noncommutative polynomials, truncated two-sided completion and normal forms.

Words are tuples of generator indices; the empty tuple is 1. A polynomial
is a plain ``dict[Word, Scalar]`` with no zero coefficients.

Order: weighted degree first, then lexicographic with generator precedence
equal to declaration order, so generator 0 is the greatest letter. Every
generator has weight ≥ 1, so two distinct words of equal weight always
differ at some position inside both of them.
"""

from __future__ import annotations

import heapq
import logging
import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from app.algebra.errors import BoundExceededError, CompletionError, InputError
from app.algebra.exactnum import QQ, FieldSpec, Scalar

log = logging.getLogger(__name__)

Word = tuple[int, ...]
NcPoly = dict[Word, Scalar]

DEFAULT_BOUND = 8
DEFAULT_RULE_CAP = 10000


# ── polynomial arithmetic ────────────────────────────────────────────────


def nc_const(c: Any, field: FieldSpec = QQ) -> NcPoly:
    s = field(c)
    return {(): s} if s else {}


def nc_gen(g: int, field: FieldSpec = QQ) -> NcPoly:
    return {(g,): field.one}


def nc_add_into(target: dict[Any, Scalar], poly: dict[Any, Scalar], scale: Any = None) -> None:
    for w, c in poly.items():
        v = c if scale is None else scale * c
        old = target.get(w)
        if old is not None:
            v = old + v
        if v:
            target[w] = v
        else:
            target.pop(w, None)


def nc_add(p: NcPoly, q: NcPoly) -> NcPoly:
    out = dict(p)
    nc_add_into(out, q)
    return out


def nc_sub(p: NcPoly, q: NcPoly) -> NcPoly:
    out = dict(p)
    for w, c in q.items():
        v = out.get(w)
        v = -c if v is None else v - c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def nc_scale(c: Any, p: NcPoly) -> NcPoly:
    if not c:
        return {}
    return {w: c * v for w, v in p.items()}


def nc_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    out: NcPoly = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = w1 + w2
            v = c1 * c2
            old = out.get(w)
            if old is not None:
                v = old + v
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def nc_product(polys: Iterable[NcPoly], field: FieldSpec = QQ) -> NcPoly:
    out = nc_const(1, field)
    for p in polys:
        out = nc_mul(out, p)
    return out


def nc_substitute(p: NcPoly, images: Sequence[NcPoly], field: FieldSpec = QQ) -> NcPoly:
    """Replace generator g by images[g] throughout p."""
    out: NcPoly = {}
    for w, c in p.items():
        nc_add_into(out, nc_product((images[g] for g in w), field), c)
    return out


def contains_factor(word: Word, factor: Word) -> bool:
    n, k = len(word), len(factor)
    if k > n:
        return False
    return any(word[i:i + k] == factor for i in range(n - k + 1))


# ── order ────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class MonomialOrder:
    weights: tuple[int, ...]

    def weight(self, w: Word) -> int:
        ws = self.weights
        return sum(ws[g] for g in w)

    def key(self, w: Word) -> tuple[int, tuple[int, ...]]:
        """Larger key = larger word."""
        return self.weight(w), tuple(-g for g in w)

    def heap_key(self, w: Word) -> tuple[int, Word]:
        """Smaller heap key = larger word."""
        return -self.weight(w), w

    def leading(self, p: dict[Word, Any]) -> Word:
        return max(p, key=self.key)

    def degree(self, p: dict[Word, Any]) -> int:
        return max((self.weight(w) for w in p), default=0)


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: NcPoly

    def as_poly(self, field: FieldSpec) -> NcPoly:
        out = nc_scale(-1, self.rhs) if self.rhs else {}
        out[self.lhs] = field.one
        return out


# ── rewriting system ─────────────────────────────────────────────────────


class RewritingSystem:
    """Degree-truncated rule set. Normal forms are certified up to ``complete_up_to``."""

    def __init__(
        self,
        labels: Sequence[str],
        weights: Sequence[int] | None = None,
        field: FieldSpec = QQ,
        bound: int = DEFAULT_BOUND,
        rules: Iterable[Rule] = (),
        complete_up_to: int | None = None,
    ) -> None:
        self.labels = tuple(labels)
        ws = tuple(weights) if weights is not None else (1,) * len(self.labels)
        if len(ws) != len(self.labels) or any(w < 1 for w in ws):
            raise InputError("every generator needs a weight >= 1")
        self.order = MonomialOrder(ws)
        self.field = field
        self.bound = bound
        self.complete_up_to = bound if complete_up_to is None else complete_up_to
        self.collapsed = False
        self._rules: dict[int, Rule] = {}
        self._by_first: dict[int, list[int]] = {}
        self._next_id = 0
        for r in rules:
            self._insert(r)

    # ── bookkeeping ──
    @property
    def ngens(self) -> int:
        return len(self.labels)

    @property
    def rules(self) -> tuple[Rule, ...]:
        return tuple(self._rules[i] for i in sorted(self._rules))

    def _insert(self, rule: Rule) -> int:
        if not rule.lhs:
            self.collapsed = True
        rid = self._next_id
        self._next_id += 1
        self._rules[rid] = rule
        if rule.lhs:
            self._by_first.setdefault(rule.lhs[0], []).append(rid)
        return rid

    def _remove(self, rid: int) -> Rule:
        rule = self._rules.pop(rid)
        if rule.lhs:
            self._by_first[rule.lhs[0]].remove(rid)
        return rule

    # ── reduction ──
    def find_reducer(self, w: Word) -> tuple[int, Rule] | None:
        """Leftmost occurrence, lowest-index rule."""
        rules = self._rules
        for pos in range(len(w)):
            ids = self._by_first.get(w[pos])
            if not ids:
                continue
            for rid in ids:
                lhs = rules[rid].lhs
                if w[pos:pos + len(lhs)] == lhs:
                    return pos, rules[rid]
        return None

    def is_normal(self, w: Word) -> bool:
        return not self.collapsed and self.find_reducer(w) is None

    def check_degree(self, p: dict[Word, Any]) -> None:
        top = self.order.degree(p)
        if top > self.complete_up_to:
            raise BoundExceededError(top, self.complete_up_to)

    def normal_form(self, p: NcPoly, strict: bool = True) -> NcPoly:
        if not p:
            return {}
        if strict:
            self.check_degree(p)
        if self.collapsed:
            return {}
        hk = self.order.heap_key
        work = {w: c for w, c in p.items() if c}
        heap = [hk(w) for w in work]
        heapq.heapify(heap)
        out: NcPoly = {}
        while heap:
            w = heapq.heappop(heap)[1]
            c = work.pop(w, None)
            if c is None:
                continue
            hit = self.find_reducer(w)
            if hit is None:
                out[w] = c
                continue
            pos, rule = hit
            left, right = w[:pos], w[pos + len(rule.lhs):]
            for rw, rc in rule.rhs.items():
                nw = left + rw + right
                val = rc * c
                old = work.get(nw)
                if old is None:
                    work[nw] = val
                    heapq.heappush(heap, hk(nw))
                else:
                    val = old + val
                    if val:
                        work[nw] = val
                    else:
                        del work[nw]
        return out

    def reduces_to_zero(self, p: NcPoly) -> bool:
        return not self.normal_form(p)

    # ── bases ──
    def _ends_with_lhs(self, w: Word, lhs_set: set[Word], lengths: Sequence[int]) -> bool:
        return any(k <= len(w) and w[len(w) - k:] in lhs_set for k in lengths)

    def monomial_basis(self, d: int) -> list[Word]:
        """Normal words of weight exactly d, largest first."""
        if d > self.complete_up_to:
            raise BoundExceededError(d, self.complete_up_to)
        if self.collapsed:
            return []
        lhs_set = {r.lhs for r in self._rules.values()}
        lengths = sorted({len(w) for w in lhs_set})
        ws = self.order.weights
        out: list[Word] = []

        def extend(prefix: Word, remaining: int) -> None:
            if remaining == 0:
                out.append(prefix)
                return
            for g in range(self.ngens):
                if ws[g] > remaining:
                    continue
                cand = prefix + (g,)
                if self._ends_with_lhs(cand, lhs_set, lengths):
                    continue
                extend(cand, remaining - ws[g])

        extend((), d)
        out.sort(key=self.order.heap_key)
        return out

    def dimension_sequence(self, dmax: int) -> list[int]:
        return [len(self.monomial_basis(d)) for d in range(dmax + 1)]

    # ── text ──
    def word_str(self, w: Word) -> str:
        return ".".join(self.labels[g] for g in w) if w else "1"

    def format(self, p: NcPoly) -> str:
        return format_terms(
            [(self.word_str(w), p[w]) for w in sorted(p, key=self.order.heap_key)]
        )

    def rule_strings(self) -> list[str]:
        return [f"{self.word_str(r.lhs)} -> {self.format(r.rhs)}" for r in self.rules]

    def to_dict(self) -> dict[str, Any]:
        return {
            "generators": list(self.labels),
            "weights": list(self.order.weights),
            "bound": self.bound,
            "complete_up_to": self.complete_up_to,
            "rules": self.rule_strings(),
        }


def format_terms(terms: Sequence[tuple[str, Scalar]]) -> str:
    """``3/2*f0.f1 - f1 + 1`` from (monomial text, coefficient) pairs."""
    if not terms:
        return "0"
    parts: list[str] = []
    for mono, c in terms:
        neg = c.is_rational() and c.as_fraction() < 0
        mag = -c if neg else c
        coeff = str(mag) if mag.is_rational() else f"({mag})"
        if mono == "1":
            body = coeff
        elif mag == 1:
            body = mono
        else:
            body = f"{coeff}*{mono}"
        parts.append(("- " if neg else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ── completion ───────────────────────────────────────────────────────────


def overlaps(u: Word, v: Word) -> list[int]:
    """k with 1 ≤ k < min(|u|,|v|) and suffix_k(u) = prefix_k(v)."""
    return [k for k in range(1, min(len(u), len(v))) if u[-k:] == v[:k]]


class _Completion:
    def __init__(
        self,
        system: RewritingSystem,
        rule_cap: int,
        schedule: random.Random | None,
    ) -> None:
        self.system = system
        self.order = system.order
        self.rule_cap = rule_cap
        self.schedule = schedule
        self.pairs: list[tuple[Any, ...]] = []
        self.processed = 0

    def push_pairs(self, rid: int) -> None:
        sysm = self.system
        new = sysm._rules[rid]
        for oid, other in list(sysm._rules.items()):
            combos = [(rid, new, oid, other)]
            if oid != rid:
                combos.append((oid, other, rid, new))
            for aid, a, bid, b in combos:
                for k in overlaps(a.lhs, b.lhs):
                    W = a.lhs + b.lhs[k:]
                    wt = self.order.weight(W)
                    if wt > sysm.bound:
                        continue
                    item = (wt, W, a.lhs, b.lhs, k, aid, bid)
                    if self.schedule is None:
                        heapq.heappush(self.pairs, item)
                    else:
                        self.pairs.append(item)

    def pop_pair(self) -> tuple[Any, ...]:
        if self.schedule is None:
            return heapq.heappop(self.pairs)
        idx = self.schedule.randrange(len(self.pairs))
        self.pairs[idx], self.pairs[-1] = self.pairs[-1], self.pairs[idx]
        return self.pairs.pop()

    def add(self, poly: NcPoly, ambiguity: Any = None) -> None:
        sysm = self.system
        field = sysm.field
        stack = [poly]
        while stack:
            r = sysm.normal_form(stack.pop())
            if not r:
                continue
            lead = self.order.leading(r)
            inv = r[lead].inverse()
            rhs = {w: -(c * inv) for w, c in r.items() if w != lead}
            for rid, rule in list(sysm._rules.items()):
                if contains_factor(rule.lhs, lead):
                    sysm._remove(rid)
                    stack.append(rule.as_poly(field))
            rid = sysm._insert(Rule(lead, rhs))
            if sysm.collapsed:
                log.info("ideal contains 1: quotient collapses")
                self.pairs.clear()
                return
            if len(sysm._rules) > self.rule_cap:
                log.warning("rule cap %d exceeded at ambiguity %s", self.rule_cap, ambiguity)
                raise CompletionError(
                    f"rule cap {self.rule_cap} exceeded", partial=sysm, ambiguity=ambiguity
                )
            self.push_pairs(rid)

    def run(self) -> None:
        sysm = self.system
        while self.pairs:
            wt, W, u, v, k, aid, bid = self.pop_pair()
            a = sysm._rules.get(aid)
            b = sysm._rules.get(bid)
            if a is None or b is None:
                continue
            self.processed += 1
            via_a = {w + v[k:]: c for w, c in a.rhs.items()}
            via_b = {u[:len(u) - k] + w: c for w, c in b.rhs.items()}
            self.add(nc_sub(via_a, via_b), ambiguity=(sysm.word_str(u), sysm.word_str(v), k))


def complete(
    relations: Iterable[NcPoly],
    labels: Sequence[str],
    weights: Sequence[int] | None = None,
    bound: int = DEFAULT_BOUND,
    field: FieldSpec = QQ,
    rule_cap: int = DEFAULT_RULE_CAP,
    schedule: random.Random | None = None,
) -> RewritingSystem:
    """Truncated noncommutative Buchberger completion.

    Ambiguities of weight ≤ bound are resolved in sorted order (weight, then
    word). Passing ``schedule`` processes them in a shuffled order instead;
    the inter-reduced result is the same.
    """
    system = RewritingSystem(labels, weights, field, bound)
    rels = [r for r in relations if r]
    for r in rels:
        system.check_degree(r)
    job = _Completion(system, rule_cap, schedule)
    for r in rels:
        job.add(r)
    job.run()
    final = _interreduce(system)
    log.debug(
        "completed %d generators to %d rules at bound %d (%d ambiguities)",
        final.ngens, len(final._rules), bound, job.processed,
    )
    return final


def _interreduce(system: RewritingSystem) -> RewritingSystem:
    order = system.order
    ordered = sorted(system._rules.values(), key=lambda r: order.key(r.lhs))
    scratch = RewritingSystem(system.labels, order.weights, system.field, system.bound, ordered)
    reduced = [Rule(r.lhs, scratch.normal_form(r.rhs, strict=False)) for r in ordered]
    return RewritingSystem(system.labels, order.weights, system.field, system.bound, reduced)


def free_system(labels: Sequence[str], weights: Sequence[int] | None = None, bound: int = DEFAULT_BOUND,
                field: FieldSpec = QQ) -> RewritingSystem:
    return RewritingSystem(labels, weights, field, bound)
