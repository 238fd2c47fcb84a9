"""Left modules over a completed rewriting system: module rules and normal forms.

A module element is a ``dict[(Word, gen), Scalar]``: the term (w, g) stands
for w·e_g with e_g a free module generator. Terms are ordered
position-over-term: the generator index first (higher index is larger),
then the algebra order on the word. Module rules rewrite a term whose word
ends with the rule's word; algebra rules rewrite anywhere in the word.
"""

from __future__ import annotations

import heapq
import logging
import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from app.algebra.errors import BoundExceededError, CompletionError
from app.algebra.exactnum import Scalar
from app.algebra.freealg import (
    DEFAULT_RULE_CAP,
    NcPoly,
    RewritingSystem,
    Word,
    format_terms,
    nc_add_into,
)

log = logging.getLogger(__name__)

Term = tuple[Word, int]
ModElem = dict[Term, Scalar]


def act(poly: NcPoly, v: ModElem) -> ModElem:
    """poly · v in the free module (no reduction)."""
    out: ModElem = {}
    for w, c in poly.items():
        nc_add_into(out, {(w + t[0], t[1]): c * x for t, x in v.items()})
    return out


def generator(g: int, one: Scalar) -> ModElem:
    return {((), g): one}


@dataclass(frozen=True)
class ModuleRule:
    lhs: Term
    rhs: ModElem

    def as_elem(self, one: Scalar) -> ModElem:
        out = {t: -c for t, c in self.rhs.items()}
        out[self.lhs] = one
        return out


class ModuleSystem:
    def __init__(
        self,
        algebra: RewritingSystem,
        gen_labels: Sequence[str],
        bound: int | None = None,
        rules: Iterable[ModuleRule] = (),
    ) -> None:
        self.algebra = algebra
        self.gen_labels = tuple(gen_labels)
        self.bound = algebra.complete_up_to if bound is None else min(bound, algebra.complete_up_to)
        self._rules: dict[int, ModuleRule] = {}
        self._by_gen: dict[int, list[int]] = {}
        self._next_id = 0
        for r in rules:
            self._insert(r)

    @property
    def ngens(self) -> int:
        return len(self.gen_labels)

    @property
    def rules(self) -> tuple[ModuleRule, ...]:
        return tuple(self._rules[i] for i in sorted(self._rules))

    def _insert(self, rule: ModuleRule) -> int:
        rid = self._next_id
        self._next_id += 1
        self._rules[rid] = rule
        self._by_gen.setdefault(rule.lhs[1], []).append(rid)
        return rid

    def _remove(self, rid: int) -> ModuleRule:
        rule = self._rules.pop(rid)
        self._by_gen[rule.lhs[1]].remove(rid)
        return rule

    # ── order ──
    def key(self, t: Term) -> tuple[Any, ...]:
        return (t[1],) + self.algebra.order.key(t[0])

    def heap_key(self, t: Term) -> tuple[Any, ...]:
        return (-t[1],) + self.algebra.order.heap_key(t[0]) + (t,)

    def leading(self, v: ModElem) -> Term:
        return max(v, key=self.key)

    def degree(self, v: ModElem) -> int:
        wt = self.algebra.order.weight
        return max((wt(t[0]) for t in v), default=0)

    # ── reduction ──
    def _module_reducer(self, t: Term) -> tuple[Word, ModuleRule] | None:
        w, g = t
        for rid in self._by_gen.get(g, ()):
            rule = self._rules[rid]
            lw = rule.lhs[0]
            k = len(lw)
            if k <= len(w) and w[len(w) - k:] == lw:
                return w[:len(w) - k], rule
        return None

    def is_normal(self, t: Term) -> bool:
        return self.algebra.is_normal(t[0]) and self._module_reducer(t) is None

    def normal_form(self, v: ModElem, strict: bool = True) -> ModElem:
        if not v:
            return {}
        if strict:
            top = self.degree(v)
            if top > self.bound:
                raise BoundExceededError(top, self.bound)
        if self.algebra.collapsed:
            return {}
        hk = self.heap_key
        work = {t: c for t, c in v.items() if c}
        heap = [hk(t) for t in work]
        heapq.heapify(heap)
        out: ModElem = {}
        while heap:
            t = heapq.heappop(heap)[-1]
            c = work.pop(t, None)
            if c is None:
                continue
            w, g = t
            replacement: list[tuple[Term, Scalar]]
            hit = self.algebra.find_reducer(w)
            if hit is not None:
                pos, rule = hit
                left, right = w[:pos], w[pos + len(rule.lhs):]
                replacement = [((left + rw + right, g), rc) for rw, rc in rule.rhs.items()]
            else:
                mhit = self._module_reducer(t)
                if mhit is None:
                    out[t] = c
                    continue
                prefix, mrule = mhit
                replacement = [((prefix + rt[0], rt[1]), rc) for rt, rc in mrule.rhs.items()]
            for nt, rc in replacement:
                val = rc * c
                old = work.get(nt)
                if old is None:
                    work[nt] = val
                    heapq.heappush(heap, hk(nt))
                else:
                    val = old + val
                    if val:
                        work[nt] = val
                    else:
                        del work[nt]
        return out

    # ── bases ──
    def module_basis(self, d: int) -> list[Term]:
        """Normal terms w·e_g with weight(w) = d, largest first."""
        if d > self.bound:
            raise BoundExceededError(d, self.bound)
        words = self.algebra.monomial_basis(d)
        out = [(w, g) for g in range(self.ngens) for w in words if self._module_reducer((w, g)) is None]
        out.sort(key=self.heap_key)
        return out

    def dimension_sequence(self, dmax: int) -> list[int]:
        return [len(self.module_basis(d)) for d in range(dmax + 1)]

    # ── text ──
    def term_str(self, t: Term) -> str:
        gen = self.gen_labels[t[1]]
        return gen if not t[0] else f"{self.algebra.word_str(t[0])}.{gen}"

    def format(self, v: ModElem) -> str:
        return format_terms([(self.term_str(t), v[t]) for t in sorted(v, key=self.heap_key)])

    def rule_strings(self) -> list[str]:
        return [f"{self.term_str(r.lhs)} -> {self.format(r.rhs)}" for r in self.rules]

    def to_dict(self) -> dict[str, Any]:
        return {
            "module_generators": list(self.gen_labels),
            "bound": self.bound,
            "rules": self.rule_strings(),
        }


# ── completion ───────────────────────────────────────────────────────────


class _ModuleCompletion:
    def __init__(self, system: ModuleSystem, rule_cap: int, schedule: random.Random | None) -> None:
        self.system = system
        self.rule_cap = rule_cap
        self.schedule = schedule
        self.pairs: list[tuple[Any, ...]] = []
        self.processed = 0

    def push_pairs(self, rid: int) -> None:
        sysm = self.system
        alg = sysm.algebra
        weight = alg.order.weight
        w = sysm._rules[rid].lhs[0]
        for arule in alg.rules:
            u = arule.lhs
            # module word is a proper suffix of an algebra leading word
            if len(w) < len(u) and u[len(u) - len(w):] == w:
                if weight(u) <= sysm.bound:
                    self._push((weight(u), u, w, len(w), rid, arule))
            # proper overlap u = s·t, w = t·z
            for k in range(1, min(len(u), len(w))):
                if u[-k:] == w[:k]:
                    W = u + w[k:]
                    if weight(W) <= sysm.bound:
                        self._push((weight(W), W, w, k, rid, arule))

    def _push(self, item: tuple[Any, ...]) -> None:
        wt, W, w, k, rid, arule = item
        entry = (wt, W, w, k, rid, arule.lhs, arule)
        if self.schedule is None:
            heapq.heappush(self.pairs, entry)
        else:
            self.pairs.append(entry)

    def pop_pair(self) -> tuple[Any, ...]:
        if self.schedule is None:
            return heapq.heappop(self.pairs)
        idx = self.schedule.randrange(len(self.pairs))
        self.pairs[idx], self.pairs[-1] = self.pairs[-1], self.pairs[idx]
        return self.pairs.pop()

    def add(self, v: ModElem, ambiguity: Any = None) -> None:
        sysm = self.system
        one = sysm.algebra.field.one
        stack = [v]
        while stack:
            r = sysm.normal_form(stack.pop())
            if not r:
                continue
            lead = sysm.leading(r)
            inv = r[lead].inverse()
            rhs = {t: -(c * inv) for t, c in r.items() if t != lead}
            lw, lg = lead
            for rid, rule in list(sysm._rules.items()):
                rw, rg = rule.lhs
                if rg == lg and len(lw) <= len(rw) and rw[len(rw) - len(lw):] == lw:
                    sysm._remove(rid)
                    stack.append(rule.as_elem(one))
            rid = sysm._insert(ModuleRule(lead, rhs))
            if len(sysm._rules) > self.rule_cap:
                log.warning("module rule cap %d exceeded at %s", self.rule_cap, ambiguity)
                raise CompletionError(
                    f"module rule cap {self.rule_cap} exceeded", partial=sysm, ambiguity=ambiguity
                )
            self.push_pairs(rid)

    def run(self) -> None:
        sysm = self.system
        while self.pairs:
            _, W, w, k, rid, _, arule = self.pop_pair()
            mrule = sysm._rules.get(rid)
            if mrule is None or mrule.lhs[0] != w:
                continue
            self.processed += 1
            u = arule.lhs
            g = mrule.lhs[1]
            z = w[k:]
            s = u[:len(u) - k]
            via_alg = {(rw + z, g): c for rw, c in arule.rhs.items()}
            via_mod = {(s + rt[0], rt[1]): c for rt, c in mrule.rhs.items()}
            diff: ModElem = dict(via_alg)
            nc_add_into(diff, via_mod, -1)
            self.add(diff, ambiguity=(sysm.algebra.word_str(u), sysm.term_str(mrule.lhs), k))


def complete_module(
    relations: Iterable[ModElem],
    algebra: RewritingSystem,
    gen_labels: Sequence[str],
    bound: int | None = None,
    rule_cap: int = DEFAULT_RULE_CAP,
    schedule: random.Random | None = None,
) -> ModuleSystem:
    """Module completion over an already completed algebra system."""
    system = ModuleSystem(algebra, gen_labels, bound)
    rels = [r for r in relations if r]
    for r in rels:
        top = system.degree(r)
        if top > system.bound:
            raise BoundExceededError(top, system.bound)
    job = _ModuleCompletion(system, rule_cap, schedule)
    for r in rels:
        job.add(r)
    job.run()
    ordered = sorted(system._rules.values(), key=lambda r: system.key(r.lhs))
    scratch = ModuleSystem(algebra, gen_labels, system.bound, ordered)
    reduced = [ModuleRule(r.lhs, scratch.normal_form(r.rhs, strict=False)) for r in ordered]
    final = ModuleSystem(algebra, gen_labels, system.bound, reduced)
    log.debug("module completion: %d rules (%d ambiguities)", len(reduced), job.processed)
    return final
