"""Tensorial logic: formulas, the bilateral sequent calculus, and its game model.

A proof is checked top-down against a goal sequent; each node only records
what cannot be recovered from its conclusion (the cut formula, context
splits, positions and permutations).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .arena import POINTED_UNIT, Coalesced, dual
from .errors import ContextSplitError, ContractionOnNonBang, RuleMismatch, UnboundAtom
from .fam import (
    BOTTOM,
    EMPTY,
    UNIT,
    FamMorphism,
    FamObject,
    fam_affine,
    fam_bang,
    fam_compose,
    fam_coproduct,
    fam_curry,
    fam_evaluation,
    fam_identity,
    fam_negation,
    fam_tensor,
    fam_tensor_maps,
    injection,
    singleton,
    singleton_fixpoint,
)
from .pointed import (
    ScriptedCopycat,
    _first,
    coalesced_structural,
    pointed_contraction,
    pointed_dereliction,
    pointed_promotion,
    pointed_weakening,
)
from .strategy import Iso, _leaves, arrow, arrow_iso, iso_strategy, transport

DISCIPLINES = ("linear", "affine", "exponential")


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Formula:
    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class One(Formula):
    pass


@dataclass(frozen=True)
class Zero(Formula):
    pass


@dataclass(frozen=True)
class Tens(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Plus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True)
class Aff(Formula):
    """The affine modality."""

    body: Formula


@dataclass(frozen=True)
class Exp(Formula):
    """The exponential modality."""

    body: Formula


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Bool(Formula):
    """The boolean abbreviation, expanded according to a discipline."""


ONE_F, ZERO_F, BOOL = One(), Zero(), Bool()


def boolean(discipline: str = "linear") -> Formula:
    inner = Neg(Plus(ONE_F, ONE_F))
    if discipline == "linear":
        return Neg(inner)
    if discipline == "affine":
        return Neg(Aff(inner))
    if discipline == "exponential":
        return Neg(Exp(inner))
    raise ValueError(f"unknown discipline {discipline!r}")


def expand(f: Formula, discipline: str = "linear") -> Formula:
    """Replace every boolean abbreviation by its definition."""
    if isinstance(f, Bool):
        return boolean(discipline)
    if isinstance(f, (Tens, Plus)):
        return type(f)(expand(f.left, discipline), expand(f.right, discipline))
    if isinstance(f, (Neg, Aff, Exp)):
        return type(f)(expand(f.body, discipline))
    return f


_PREFIX = {Neg: "¬", Aff: "¡", Exp: "!"}
_SHAPES = {Neg: "¬A", Aff: "¡A", Exp: "!A", One: "1", Plus: "A ⊕ B"}


def show(f: Formula) -> str:
    if isinstance(f, One):
        return "1"
    if isinstance(f, Zero):
        return "0"
    if isinstance(f, Bool):
        return "B"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Tens):
        return f"({show(f.left)} ⊗ {show(f.right)})"
    if isinstance(f, Plus):
        return f"({show(f.left)} ⊕ {show(f.right)})"
    return _PREFIX[type(f)] + show(f.body)


@dataclass(frozen=True)
class Sequent:
    context: tuple = ()
    conclusion: Optional[Formula] = None

    def __str__(self) -> str:
        ctx = ", ".join(show(f) for f in self.context)
        rhs = show(self.conclusion) if self.conclusion is not None else ""
        return f"{ctx} ⊢ {rhs}".strip()

    def expanded(self, discipline: str) -> "Sequent":
        c = self.conclusion
        return Sequent(tuple(expand(f, discipline) for f in self.context),
                       None if c is None else expand(c, discipline))


def sequent(context=(), conclusion=None) -> Sequent:
    return Sequent(tuple(context), conclusion)


# ---------------------------------------------------------------------------
# proof trees

RULES = {
    "axiom": 0, "cut": 2,
    "tensor-right": 2, "tensor-left": 1,
    "unit-right": 0, "unit-left": 1,
    "neg-right": 1, "neg-left": 1,
    "oplus-right-1": 1, "oplus-right-2": 1, "oplus-left": 2, "zero-left": 0,
    "bang-strengthening": 1, "bang-dereliction": 1, "bang-weakening": 1, "bang-contraction": 1,
    "affine-strengthening": 1, "affine-dereliction": 1, "affine-weakening": 1,
    "permute": 1,
}
ALIASES = {"contraction": "bang-contraction", "dereliction": "bang-dereliction",
           "weakening": "bang-weakening", "strengthening": "bang-strengthening",
           "promotion": "bang-strengthening"}
# extension used by the PCF front end: fixpoint of a closed !T |- T
EXTENSIONS = {"fix": 1}


@dataclass(frozen=True)
class ProofTree:
    """One rule application.

    ``formula`` is the cut formula, ``split`` the length of the left part of
    the context, ``index`` the position of the decomposed hypothesis and
    ``perm`` the permutation of a ``permute`` node: the conclusion's
    hypothesis ``k`` is the premise's hypothesis ``perm[k]``.
    """

    rule: str
    premises: tuple = ()
    formula: Optional[Formula] = None
    split: Optional[int] = None
    index: Optional[int] = None
    perm: Optional[tuple] = None


def node(rule, *premises, **data) -> ProofTree:
    if "perm" in data and data["perm"] is not None:
        data["perm"] = tuple(data["perm"])
    return ProofTree(rule, tuple(premises), **data)


@dataclass(frozen=True)
class CheckedProof:
    rule: str
    sequent: Sequent
    premises: tuple = ()
    data: ProofTree = field(default=None, compare=False)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


# ---------------------------------------------------------------------------
# checking


def check_proof(tree: ProofTree, goal: Sequent, *, discipline: str = "linear",
                extensions: bool = False) -> CheckedProof:
    """Check ``tree`` against ``goal``; booleans are expanded per ``discipline``."""
    return _check(tree, goal.expanded(discipline), (), discipline, extensions)


def _mismatch(path, expected):
    raise RuleMismatch(path, expected)


def _need(cond, path, expected):
    if not cond:
        _mismatch(path, expected)


def _split_at(ctx, n, path):
    if n is None:
        raise ContextSplitError(f"{'/'.join(map(str, path)) or 'root'}: the rule needs a (split n)")
    if not 0 <= n <= len(ctx):
        raise ContextSplitError(f"split {n} outside a context of length {len(ctx)}")
    return ctx[:n], ctx[n:]


def _check(t: ProofTree, goal: Sequent, path, discipline, extensions) -> CheckedProof:
    rule = ALIASES.get(t.rule, t.rule)
    arity = RULES.get(rule)
    if arity is None and extensions:
        arity = EXTENSIONS.get(rule)
    if arity is None:
        _mismatch(path, f"no rule named {t.rule!r}")
    _need(len(t.premises) == arity, path, f"{rule} has {arity} premise(s)")
    ctx, concl = goal.context, goal.conclusion

    def sub(k, s):
        return _check(t.premises[k], s, path + (k,), discipline, extensions)

    def last(cls):
        _need(ctx and isinstance(ctx[-1], cls), path, f"{rule}: Γ, {_SHAPES[cls]} ⊢ [C]")
        return ctx[:-1], ctx[-1]

    subs: tuple
    if rule == "axiom":
        _need(len(ctx) == 1 and concl == ctx[0], path, "A ⊢ A")
        subs = ()
    elif rule == "cut":
        _need(t.formula is not None, path, "cut needs its cut formula")
        a = expand(t.formula, discipline)
        g, d = _split_at(ctx, t.split, path)
        subs = (sub(0, Sequent(g, a)), sub(1, Sequent((a,) + d, concl)))
    elif rule == "tensor-right":
        _need(isinstance(concl, Tens), path, "Γ, Δ ⊢ A ⊗ B")
        g, d = _split_at(ctx, t.split, path)
        subs = (sub(0, Sequent(g, concl.left)), sub(1, Sequent(d, concl.right)))
    elif rule == "tensor-left":
        i = t.index
        if i is None:
            hits = [k for k, f in enumerate(ctx) if isinstance(f, Tens)]
            i = hits[-1] if hits else None
        _need(i is not None and 0 <= i < len(ctx) and isinstance(ctx[i], Tens), path,
              "Γ1, A ⊗ B, Γ2 ⊢ [C]")
        f = ctx[i]
        subs = (sub(0, Sequent(ctx[:i] + (f.left, f.right) + ctx[i + 1 :], concl)),)
        t = ProofTree(t.rule, t.premises, t.formula, t.split, i, t.perm)
    elif rule == "unit-right":
        _need(not ctx and isinstance(concl, One), path, "⊢ 1")
        subs = ()
    elif rule == "unit-left":
        g, _ = last(One)
        subs = (sub(0, Sequent(g, concl)),)
    elif rule == "neg-right":
        _need(isinstance(concl, Neg), path, "Γ ⊢ ¬A")
        subs = (sub(0, Sequent(ctx + (concl.body,), None)),)
    elif rule == "neg-left":
        _need(concl is None, path, "Γ, ¬A ⊢")
        g, f = last(Neg)
        subs = (sub(0, Sequent(g, f.body)),)
    elif rule in ("oplus-right-1", "oplus-right-2"):
        _need(isinstance(concl, Plus), path, "Γ ⊢ A ⊕ B")
        part = concl.left if rule.endswith("1") else concl.right
        subs = (sub(0, Sequent(ctx, part)),)
    elif rule == "oplus-left":
        _need(concl is not None, path, "Γ, A ⊕ B ⊢ C")
        g, f = last(Plus)
        subs = (sub(0, Sequent(g + (f.left,), concl)), sub(1, Sequent(g + (f.right,), concl)))
    elif rule == "zero-left":
        _need(concl is not None and ctx and isinstance(ctx[-1], Zero), path, "Γ, 0 ⊢ A")
        subs = ()
    elif rule.endswith("-strengthening"):
        cls = Exp if rule.startswith("bang") else Aff
        sym = _PREFIX[cls]
        _need(isinstance(concl, cls) and all(isinstance(f, cls) for f in ctx), path,
              f"{sym}Γ ⊢ {sym}A")
        subs = (sub(0, Sequent(ctx, concl.body)),)
    elif rule.endswith("-dereliction"):
        g, f = last(Exp if rule.startswith("bang") else Aff)
        subs = (sub(0, Sequent(g + (f.body,), concl)),)
    elif rule.endswith("-weakening"):
        g, _ = last(Exp if rule.startswith("bang") else Aff)
        subs = (sub(0, Sequent(g, concl)),)
    elif rule == "bang-contraction":
        if not ctx:
            _mismatch(path, "Γ, !A ⊢ [B]")
        if not isinstance(ctx[-1], Exp):
            raise ContractionOnNonBang(f"contraction on {show(ctx[-1])}, which is not of the form !A")
        subs = (sub(0, Sequent(ctx + (ctx[-1],), concl)),)
    elif rule == "permute":
        p = t.perm
        _need(p is not None and sorted(p) == list(range(len(ctx))), path,
              f"a permutation of {len(ctx)} hypotheses")
        premise = [None] * len(ctx)
        for k, j in enumerate(p):
            premise[j] = ctx[k]
        subs = (sub(0, Sequent(tuple(premise), concl)),)
    elif rule == "fix":
        _need(not ctx and concl is not None, path, "⊢ T from !T ⊢ T")
        subs = (sub(0, Sequent((Exp(concl),), concl)),)
    else:  # pragma: no cover - RULES and the branches above agree
        _mismatch(path, f"unhandled rule {rule!r}")
    return CheckedProof(rule, goal, subs, t)


# ---------------------------------------------------------------------------
# the model in families of pointed games

def interpret_formula(f: Formula, discipline: str = "linear", atoms=None) -> FamObject:
    """The family of pointed games denoted by ``f``.

    ``atoms`` maps atom names to families or single games.
    """
    return _Model(discipline, atoms).formula(f)


def interpret_context(context, discipline: str = "linear", atoms=None) -> FamObject:
    return _Model(discipline, atoms).context(context)


def interpret_proof(proof: CheckedProof, discipline: str = "linear", atoms=None) -> FamMorphism:
    """``[[Γ]] -> [[A]]``, or ``[[Γ]] -> bottom`` when the conclusion is empty."""
    return _Model(discipline, atoms).proof(proof)


def _label(m):
    return m.label


def _nleaves(game) -> int:
    return len(_leaves(game, Coalesced))


class _Model:
    def __init__(self, discipline, atoms):
        if discipline not in DISCIPLINES:
            raise ValueError(f"unknown discipline {discipline!r}")
        self.discipline = discipline
        self.atoms = dict(atoms or {})
        self._formulas = {}

    # objects ---------------------------------------------------------------

    def formula(self, f: Formula) -> FamObject:
        hit = self._formulas.get(f)
        if hit is None:
            hit = self._formulas[f] = self._formula(f)
        return hit

    def _formula(self, f):
        if isinstance(f, One):
            return UNIT
        if isinstance(f, Zero):
            return EMPTY
        if isinstance(f, Bool):
            return self.formula(boolean(self.discipline))
        if isinstance(f, Atom):
            if f.name not in self.atoms:
                raise UnboundAtom(f"atom {f.name!r} has no interpretation")
            v = self.atoms[f.name]
            return v if isinstance(v, FamObject) else singleton(v)
        if isinstance(f, Tens):
            return fam_tensor(self.formula(f.left), self.formula(f.right))
        if isinstance(f, Plus):
            return fam_coproduct(self.formula(f.left), self.formula(f.right))
        if isinstance(f, Neg):
            return fam_negation(self.formula(f.body))
        if isinstance(f, Aff):
            return fam_affine(self.formula(f.body))
        if isinstance(f, Exp):
            return fam_bang(self.formula(f.body))
        raise TypeError(f"not a formula: {f!r}")

    def context(self, fs) -> FamObject:
        return fam_tensor(*(self.formula(f) for f in fs))

    def target(self, s: Sequent) -> FamObject:
        return BOTTOM if s.conclusion is None else self.formula(s.conclusion)

    # structural maps -----------------------------------------------------

    def reshape(self, src: FamObject, dst: FamObject, index_map, perm=None, name="iso"):
        reindex = {i: index_map(i) for i in src.indices}
        comps = {i: coalesced_structural(src[i], dst[reindex[i]], perm(i) if perm else None, name)
                 for i in src.indices}
        return FamMorphism(src, dst, reindex, comps, name)

    def split(self, left, right):
        """``[[left, right]] -> [[left]] (x) [[right]]``."""
        n = len(left)
        return self.reshape(self.context(tuple(left) + tuple(right)),
                            fam_tensor(self.context(left), self.context(right)),
                            lambda t: (t[:n], t[n:]))

    def join(self, left, right):
        return self.reshape(fam_tensor(self.context(left), self.context(right)),
                            self.context(tuple(left) + tuple(right)),
                            lambda t: t[0] + t[1])

    def local(self, gamma, src, dst, f: FamMorphism):
        """``[[gamma, src]] -> [[gamma, dst]]`` acting as ``f`` on the last hypotheses."""
        g = fam_identity(self.context(gamma))
        return _chain(self.split(gamma, src), fam_tensor_maps(g, f), self.join(gamma, dst))

    def hyp(self, f: Formula, m: FamMorphism, out=None) -> FamMorphism:
        """Wrap ``m`` out of ``[[f]]`` as a map out of the one-hypothesis context."""
        src = self.context((f,))
        pre = self.reshape(src, m.src, lambda t: t[0])
        if out is None:
            return fam_compose(pre, m)
        post = self.reshape(m.dst, self.context(out), lambda i: i if out == () else (i,))
        return _chain(pre, m, post)

    def permutation(self, concl_ctx, prem_ctx, perm):
        inv = [0] * len(perm)
        for k, j in enumerate(perm):
            inv[j] = k
        src = self.context(concl_ctx)
        objs = [self.formula(f) for f in concl_ctx]

        def index_map(t):
            return tuple(t[inv[j]] for j in range(len(perm)))

        def leaf_perm(t):
            sizes = [_nleaves(o[i]) for o, i in zip(objs, t)]
            offsets = [sum(sizes[:k]) for k in range(len(sizes))]
            out = []
            for j in range(len(perm)):
                k = inv[j]
                out.extend(range(offsets[k], offsets[k] + sizes[k]))
            return out

        return self.reshape(src, self.context(prem_ctx), index_map, leaf_perm, "perm")

    # proofs ----------------------------------------------------------------

    def proof(self, p: CheckedProof) -> FamMorphism:
        out = getattr(self, "_" + p.rule.replace("-", "_"))(p, p.sequent, p.premises)
        out.name = p.rule
        return out

    def _axiom(self, p, s, subs):
        return self.reshape(self.context(s.context), self.formula(s.conclusion), lambda t: t[0])

    def _unit_right(self, p, s, subs):
        return self.reshape(self.context(()), UNIT, lambda t: "*")

    def _unit_left(self, p, s, subs):
        g = s.context[:-1]
        pre = self.reshape(self.context(s.context), self.context(g), lambda t: t[:-1])
        return fam_compose(pre, self.proof(subs[0]))

    def _tensor_left(self, p, s, subs):
        i = p.data.index
        pre = self.reshape(self.context(s.context), self.context(subs[0].sequent.context),
                           lambda t: t[:i] + t[i] + t[i + 1 :])
        return fam_compose(pre, self.proof(subs[0]))

    def _tensor_right(self, p, s, subs):
        n = p.data.split
        left, right = s.context[:n], s.context[n:]
        both = fam_tensor_maps(self.proof(subs[0]), self.proof(subs[1]))
        return fam_compose(self.split(left, right), both)

    def _neg_right(self, p, s, subs):
        a = s.conclusion.body
        gamma = self.context(s.context)
        pre = self.reshape(fam_tensor(gamma, self.formula(a)), self.context(s.context + (a,)),
                           lambda t: t[0] + (t[1],))
        return fam_curry(fam_compose(pre, self.proof(subs[0])), gamma, self.formula(a))

    def _neg_left(self, p, s, subs):
        g, na = s.context[:-1], s.context[-1]
        mid = fam_tensor_maps(self.proof(subs[0]), fam_identity(self.formula(na)))
        pre = self.reshape(self.context(s.context), fam_tensor(self.context(g), self.formula(na)),
                           lambda t: (t[:-1], t[-1]))
        return _chain(pre, mid, fam_evaluation(self.formula(na.body)))

    def _cut(self, p, s, subs):
        n = p.data.split
        g, d = s.context[:n], s.context[n:]
        a = subs[0].sequent.conclusion
        mid = fam_tensor_maps(self.proof(subs[0]), fam_identity(self.context(d)))
        post = self.reshape(mid.dst, self.context((a,) + d), lambda t: (t[0],) + t[1])
        return _chain(self.split(g, d), mid, post, self.proof(subs[1]))

    def _oplus_right(self, p, s, subs, k):
        c = s.conclusion
        inj = injection([self.formula(c.left), self.formula(c.right)], k)
        return fam_compose(self.proof(subs[0]), inj)

    def _oplus_right_1(self, p, s, subs):
        return self._oplus_right(p, s, subs, 0)

    def _oplus_right_2(self, p, s, subs):
        return self._oplus_right(p, s, subs, 1)

    def _oplus_left(self, p, s, subs):
        branches = (self.proof(subs[0]), self.proof(subs[1]))
        src = self.context(s.context)
        reindex, comps = {}, {}
        for t in src.indices:
            k, i = t[-1]
            m, u = branches[k], t[:-1] + (i,)
            reindex[t], comps[t] = m.reindex[u], m[u]
        return FamMorphism(src, self.target(s), reindex, comps)

    def _zero_left(self, p, s, subs):
        return FamMorphism(self.context(s.context), self.target(s), {}, {})

    def _bang_dereliction(self, p, s, subs):
        g, f = s.context[:-1], s.context[-1]
        a = self.formula(f.body)
        der = FamMorphism(self.formula(f), a, {"*": a.indices[0]},
                          {"*": pointed_dereliction(a.only())}, "der")
        step = self.local(g, (f,), (f.body,), self.hyp(f, der, (f.body,)))
        return fam_compose(step, self.proof(subs[0]))

    def _bang_weakening(self, p, s, subs):
        g, f = s.context[:-1], s.context[-1]
        a = self.formula(f.body)
        weak = FamMorphism(self.formula(f), self.context(()), {"*": ()},
                           {"*": pointed_weakening(a.only())}, "weak")
        step = self.local(g, (f,), (), self.hyp(f, weak))
        return fam_compose(step, self.proof(subs[0]))

    def _bang_contraction(self, p, s, subs):
        g, f = s.context[:-1], s.context[-1]
        a = self.formula(f.body)
        contr = FamMorphism(self.formula(f), self.context((f, f)), {"*": ("*", "*")},
                            {"*": pointed_contraction(a.only())}, "contr")
        step = self.local(g, (f,), (f, f), self.hyp(f, contr))
        return fam_compose(step, self.proof(subs[0]))

    def _bang_strengthening(self, p, s, subs):
        sigma = self.proof(subs[0])
        (idx,) = sigma.src.indices
        return FamMorphism(sigma.src, self.target(s), {idx: "*"},
                           {idx: pointed_promotion(sigma[idx])}, "prom")

    def _affine_dereliction(self, p, s, subs):
        g, f = s.context[:-1], s.context[-1]
        a, st = self.formula(f.body).only(), self.formula(f).only()
        der = FamMorphism(self.formula(f), self.formula(f.body), {"*": "*"},
                          {"*": iso_strategy(Iso(st, a, _label, _label), "der¡")}, "der¡")
        step = self.local(g, (f,), (f.body,), self.hyp(f, der, (f.body,)))
        return fam_compose(step, self.proof(subs[0]))

    def _affine_weakening(self, p, s, subs):
        g, f = s.context[:-1], s.context[-1]
        st = self.formula(f).only()
        w = ScriptedCopycat(arrow(st, POINTED_UNIT), [((0, _first(st)), (1, ("sync", ())))], [],
                            "weak¡")
        weak = FamMorphism(self.formula(f), self.context(()), {"*": ()}, {"*": w}, "weak¡")
        step = self.local(g, (f,), (), self.hyp(f, weak))
        return fam_compose(step, self.proof(subs[0]))

    def _affine_strengthening(self, p, s, subs):
        sigma = self.proof(subs[0])
        (idx,) = sigma.src.indices
        a, st = sigma.dst.only(), self.target(s).only()
        src = sigma[idx].game.parts[0]
        iso = arrow_iso(Iso.identity(dual(src)), Iso(a, st, _label, _label))
        return FamMorphism(sigma.src, self.target(s), {idx: "*"},
                           {idx: transport(sigma[idx], iso, "prom¡")}, "prom¡")

    def _permute(self, p, s, subs):
        pre = self.permutation(s.context, subs[0].sequent.context, p.data.perm)
        return fam_compose(pre, self.proof(subs[0]))

    def _fix(self, p, s, subs):
        f = subs[0].sequent.context[0]
        body = fam_compose(self.reshape(self.formula(f), self.context((f,)), lambda i: (i,)),
                           self.proof(subs[0]))
        fix = singleton_fixpoint(body)
        return fam_compose(self.reshape(self.context(()), UNIT, lambda t: "*"), fix)


def _chain(*maps: FamMorphism) -> FamMorphism:
    out = maps[0]
    for m in maps[1:]:
        out = fam_compose(out, m)
    return out
