"""A linear PCF over booleans, compiled to sequent proofs and run as strategies.

Types are ``bool``, ``T -o U``, ``!T`` and ``¡T``.  Plain variables are used
exactly once, ``¡`` variables at most once and ``!`` variables freely; a
modal variable is opened with ``derelict``.  Function types are encoded as
``T -o not Y = not (T (x) Y)``, so results of functions must be negations
(every non-modal type is).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .arena import OPPONENT
from .errors import LinearityViolation, ParseError, PcfTypeError
from .formats import dump_sexpr, head, parse_sexpr
from .logic import (
    Aff,
    Exp,
    Neg,
    Sequent,
    Tens,
    boolean,
    check_proof,
    interpret_proof,
    node,
)
from .strategy import DEFAULT_DEPTH

# ---------------------------------------------------------------------------
# types and terms


@dataclass(frozen=True)
class PcfType:
    pass


@dataclass(frozen=True)
class TBool(PcfType):
    def __str__(self):
        return "bool"


@dataclass(frozen=True)
class TLolli(PcfType):
    arg: PcfType
    res: PcfType

    def __str__(self):
        return f"({self.arg} -o {self.res})"


@dataclass(frozen=True)
class TBang(PcfType):
    body: PcfType

    def __str__(self):
        return f"!{self.body}"


@dataclass(frozen=True)
class TAff(PcfType):
    body: PcfType

    def __str__(self):
        return f"¡{self.body}"


BOOL_T = TBool()


def _modal(t) -> bool:
    return isinstance(t, (TBang, TAff))


@dataclass(frozen=True)
class PcfTerm:
    pass


@dataclass(frozen=True)
class Var(PcfTerm):
    name: str


@dataclass(frozen=True)
class Const(PcfTerm):
    value: bool


@dataclass(frozen=True)
class Lam(PcfTerm):
    var: str
    type: PcfType
    body: PcfTerm


@dataclass(frozen=True)
class App(PcfTerm):
    fun: PcfTerm
    arg: PcfTerm


@dataclass(frozen=True)
class If(PcfTerm):
    cond: PcfTerm
    then: PcfTerm
    other: PcfTerm


@dataclass(frozen=True)
class Fix(PcfTerm):
    body: PcfTerm


@dataclass(frozen=True)
class Derelict(PcfTerm):
    var: str


@dataclass(frozen=True)
class Promote(PcfTerm):
    body: PcfTerm
    affine: bool = False


TT, FF = Const(True), Const(False)


# ---------------------------------------------------------------------------
# typing


def pcf_typecheck(term: PcfTerm) -> PcfType:
    """The type of a closed term."""
    t, used = _infer(term, {})
    if used:
        raise PcfTypeError(f"free variables {sorted(k[1] for k in used)}")
    return t


def _lookup(env, name):
    if name not in env:
        raise PcfTypeError(f"unbound variable {name!r}")
    return env[name]


def _infer(term, env, depth=0):
    """``(type, usage)`` where ``usage`` counts occurrences of each bound variable."""
    if isinstance(term, Const):
        return BOOL_T, Counter()
    if isinstance(term, Var):
        key, t = _lookup(env, term.name)
        return t, Counter({key: 1})
    if isinstance(term, Derelict):
        key, t = _lookup(env, term.var)
        if not _modal(t):
            raise PcfTypeError(f"derelict needs a modal variable, {term.var} : {t}")
        return t.body, Counter({key: 1})
    if isinstance(term, Lam):
        key = (depth, term.var)
        inner = dict(env)
        inner[term.var] = (key, term.type)
        t, used = _infer(term.body, inner, depth + 1)
        _check_use(term.var, term.type, used.pop(key, 0))
        if _modal(t):
            raise PcfTypeError(f"a function cannot return the modal type {t}")
        return TLolli(term.type, t), used
    if isinstance(term, App):
        tf, uf = _infer(term.fun, env, depth)
        ta, ua = _infer(term.arg, env, depth)
        if not isinstance(tf, TLolli):
            raise PcfTypeError(f"applying a non-function of type {tf}")
        if tf.arg != ta:
            raise PcfTypeError(f"argument of type {ta} where {tf.arg} is expected")
        return tf.res, uf + ua
    if isinstance(term, If):
        tc, uc = _infer(term.cond, env, depth)
        if tc != BOOL_T:
            raise PcfTypeError(f"condition of type {tc}")
        tt_, ut = _infer(term.then, env, depth)
        te, ue = _infer(term.other, env, depth)
        if tt_ != te:
            raise PcfTypeError(f"branches of types {tt_} and {te}")
        if _modal(tt_):
            raise PcfTypeError("branches cannot have a modal type")
        types = {key: t for key, t in env.values()}
        both = Counter()
        for key in set(ut) | set(ue):
            if not isinstance(types[key], TBang) and ut[key] != ue[key]:
                raise LinearityViolation(f"{key[1]} is not used alike in both branches")
            both[key] = max(ut[key], ue[key])
        return tt_, uc + both
    if isinstance(term, Fix):
        body = term.body
        if not (isinstance(body, Lam) and isinstance(body.type, TBang)):
            raise PcfTypeError("fix applies to a literal abstraction over a !-variable")
        t, used = _infer(body, env, depth)
        if used:
            raise PcfTypeError("fix applies to closed abstractions only")
        if t.arg.body != t.res:
            raise PcfTypeError(f"fix needs !T -o T, got {t}")
        return t.res, used
    if isinstance(term, Promote):
        t, used = _infer(term.body, env, depth)
        types = {key: ty for key, ty in env.values()}
        want = TAff if term.affine else TBang
        for key in used:
            if not isinstance(types[key], want):
                raise PcfTypeError(f"promotion with the non-modal variable {key[1]} free")
        return (TAff if term.affine else TBang)(t), used
    raise PcfTypeError(f"not a term: {term!r}")


def _check_use(name, t, n):
    if isinstance(t, TBang):
        return
    if isinstance(t, TAff):
        if n > 1:
            raise LinearityViolation(f"affine variable {name} used {n} times")
        return
    if n != 1:
        raise LinearityViolation(f"linear variable {name} used {n} times")


# ---------------------------------------------------------------------------
# types as formulas


def type_formula(t: PcfType, discipline: str = "linear"):
    if isinstance(t, TBool):
        return boolean(discipline)
    if isinstance(t, TLolli):
        res = type_formula(t.res, discipline)
        if not isinstance(res, Neg):
            raise PcfTypeError(f"result type {t.res} is not a negation")
        return Neg(Tens(type_formula(t.arg, discipline), res.body))
    if isinstance(t, TBang):
        return Exp(type_formula(t.body, discipline))
    if isinstance(t, TAff):
        return Aff(type_formula(t.body, discipline))
    raise PcfTypeError(f"not a type: {t!r}")


# ---------------------------------------------------------------------------
# elaboration into sequent proofs


def _perm_node(tree, cur, new):
    """Reorder the hypotheses of ``tree`` (listed as ``cur``) into ``new``."""
    if list(cur) == list(new):
        return tree
    return node("permute", tree, perm=[cur.index(k) for k in new])


class _Elaborator:
    def __init__(self, discipline):
        self.d = discipline

    def formula(self, t):
        return type_formula(t, self.d)

    def weaken(self, tree, keys, key, t):
        rule = "bang-weakening" if isinstance(t, TBang) else "affine-weakening"
        return node(rule, tree), list(keys) + [key]

    def merge(self, tree, keys, types):
        """Contract repeated ``!`` hypotheses and sort the context."""
        keys = list(keys)
        while len(set(keys)) < len(keys):
            dup = next(k for k in keys if keys.count(k) > 1)
            if not isinstance(types[dup], TBang):
                raise LinearityViolation(f"{dup[1]} is used twice")
            i = keys.index(dup)
            j = keys.index(dup, i + 1)
            rest = [k for n, k in enumerate(keys) if n not in (i, j)]
            idx = [n for n in range(len(keys)) if n not in (i, j)] + [i, j]
            tree = node("contraction", node("permute", tree, perm=idx))
            keys = rest + [dup]
        canon = sorted(keys)
        return _perm_node(tree, keys, canon), canon

    def run(self, term, env, depth):
        """``(tree, keys, type)``: a proof of ``[[keys]] |- [[type]]``, keys sorted."""
        types = {key: t for key, t in env.values()}
        if isinstance(term, Const):
            return self.constant(term.value), [], BOOL_T
        if isinstance(term, Var):
            key, t = env[term.name]
            return node("axiom"), [key], t
        if isinstance(term, Derelict):
            key, t = env[term.var]
            rule = "bang-dereliction" if isinstance(t, TBang) else "affine-dereliction"
            return node(rule, node("axiom")), [key], t.body
        if isinstance(term, Lam):
            return self.lam(term, env, depth)
        if isinstance(term, App):
            tf, kf, ty_f = self.run(term.fun, env, depth)
            ta, ka, _ = self.run(term.arg, env, depth)
            y = self.formula(ty_f.res).body
            arg_y = node("tensor-right", ta, node("axiom"), split=len(ka))
            n = len(ka) + 1
            right = node("permute", node("neg-left", arg_y), perm=[n] + list(range(n)))
            tree = node("neg-right", node("cut", tf, right, formula=self.formula(ty_f), split=len(kf)))
            tree, keys = self.merge(tree, kf + ka, types)
            return tree, keys, ty_f.res
        if isinstance(term, If):
            return self.branch(term, env, depth, types)
        if isinstance(term, Promote):
            tb, kb, t = self.run(term.body, env, depth)
            rule = "affine-strengthening" if term.affine else "bang-strengthening"
            return node(rule, tb), kb, (TAff if term.affine else TBang)(t)
        if isinstance(term, Fix):
            lam = term.body
            key = (depth, lam.var)
            inner = dict(env)
            inner[lam.var] = (key, lam.type)
            tb, kb, t = self.run(lam.body, inner, depth + 1)
            if key not in kb:
                tb, kb = self.weaken(tb, kb, key, lam.type)
            return node("fix", tb), [], t
        raise PcfTypeError(f"not a term: {term!r}")

    def constant(self, value: bool):
        inner = node("neg-left", node("oplus-right-1" if value else "oplus-right-2", node("unit-right")))
        if self.d == "affine":
            inner = node("affine-dereliction", inner)
        elif self.d == "exponential":
            inner = node("bang-dereliction", inner)
        return node("neg-right", inner)

    def lam(self, term, env, depth):
        key = (depth, term.var)
        inner = dict(env)
        inner[term.var] = (key, term.type)
        tb, kb, t = self.run(term.body, inner, depth + 1)
        if key not in kb:
            tb, kb = self.weaken(tb, kb, key, term.type)
        rest = [k for k in kb if k != key]
        tb = _perm_node(tb, kb, rest + [key])
        y = self.formula(t).body
        swap = node("permute", node("neg-left", node("axiom")), perm=[1, 0])
        tree = node("cut", tb, swap, formula=Neg(y), split=len(rest) + 1)
        tree = node("neg-right", node("tensor-left", tree, index=len(rest)))
        return tree, rest, TLolli(term.type, t)

    def branch(self, term, env, depth, types):
        if self.d != "linear":
            raise PcfTypeError("case analysis needs the linear boolean")
        tc, kc, _ = self.run(term.cond, env, depth)
        tt_, kt, t = self.run(term.then, env, depth)
        te, ke, _ = self.run(term.other, env, depth)
        for k in sorted(set(kt) - set(ke)):
            te, ke = self.weaken(te, ke, k, types[k])
        for k in sorted(set(ke) - set(kt)):
            tt_, kt = self.weaken(tt_, kt, k, types[k])
        delta = sorted(kt)
        tt_, te = _perm_node(tt_, kt, delta), _perm_node(te, ke, delta)
        n = len(delta)
        y = self.formula(t).body
        cases = node("oplus-left", node("unit-left", tt_), node("unit-left", te))
        swap = node("permute", node("neg-left", node("axiom")), perm=[1, 0])
        body = node("cut", cases, swap, formula=Neg(y), split=n + 1)
        body = node("permute", body, perm=list(range(n)) + [n + 1, n])
        body = node("neg-left", node("neg-right", body))
        body = node("permute", body, perm=[n + 1] + list(range(n + 1)))
        tree = node("neg-right", node("cut", tc, body, formula=self.formula(BOOL_T), split=len(kc)))
        tree, keys = self.merge(tree, kc + delta, types)
        return tree, keys, t


def pcf_proof(term: PcfTerm, discipline: str = "linear"):
    """A sequent proof of ``|- [[T]]`` for a closed term of type ``T``, with its goal."""
    t = pcf_typecheck(term)
    tree, keys, _ = _Elaborator(discipline).run(term, {}, 0)
    assert not keys
    return Sequent((), type_formula(t, discipline)), tree


def pcf_elaborate(term: PcfTerm, discipline: str = "linear"):
    """The denotation of a closed term, as a map out of the empty context."""
    goal, tree = pcf_proof(term, discipline)
    checked = check_proof(tree, goal, discipline=discipline, extensions=True)
    return interpret_proof(checked, discipline)


def denotation(term: PcfTerm, discipline: str = "linear"):
    """The single strategy ``I -> [[T]]`` of a closed term."""
    m = pcf_elaborate(term, discipline)
    return m[m.src.indices[0]]


def _branch(label):
    """The injection chosen by a boolean answer hidden in ``label``, if any."""
    if isinstance(label, tuple):
        if len(label) == 2 and label[1] == ("sync", ()) and label[0] in ((0, "*"), (1, "*")):
            return label[0][0]
        for part in label:
            found = _branch(part)
            if found is not None:
                return found
    return None


def pcf_eval(term: PcfTerm, depth: int = DEFAULT_DEPTH, discipline: str = "linear") -> str:
    """``"tt"``, ``"ff"`` or ``"diverge"`` for a closed boolean term.

    The denotation is played against the Opponent that opens the context and
    then takes its only available move, until an answer shows up.
    """
    if pcf_typecheck(term) != BOOL_T:
        raise PcfTypeError("pcf_eval needs a term of type bool")
    s = denotation(term, discipline)
    game = s.game
    play = ()
    while len(play) < depth:
        pos = play[-1].target if play else game.root
        options = [m for m in game.moves(pos) if m.polarity == OPPONENT]
        if len(options) != 1:
            return "diverge"
        play = play + (options[0],)
        r = s.respond(play)
        if r is None:
            return "diverge"
        play = play + (r,)
        k = _branch(r.label)
        if k is not None:
            return "tt" if k == 0 else "ff"
    return "diverge"


# ---------------------------------------------------------------------------
# concrete syntax


def parse_type(x) -> PcfType:
    if x == "bool":
        return BOOL_T
    h = head(x)
    if h == "lolli" and len(x) >= 3:
        out = parse_type(x[-1])
        for y in reversed(x[1:-1]):
            out = TLolli(parse_type(y), out)
        return out
    if h == "bang" and len(x) == 2:
        return TBang(parse_type(x[1]))
    if h == "affine" and len(x) == 2:
        return TAff(parse_type(x[1]))
    raise ParseError(f"not a type: {dump_sexpr(x)}")


def parse_term(x) -> PcfTerm:
    if not isinstance(x, list):
        if x == "tt":
            return TT
        if x == "ff":
            return FF
        return Var(str(x))
    h = head(x)
    if h == "lam" and len(x) == 3 and isinstance(x[1], list) and len(x[1]) == 2:
        return Lam(str(x[1][0]), parse_type(x[1][1]), parse_term(x[2]))
    if h == "app" and len(x) >= 3:
        out = parse_term(x[1])
        for y in x[2:]:
            out = App(out, parse_term(y))
        return out
    if h == "if" and len(x) == 4:
        return If(parse_term(x[1]), parse_term(x[2]), parse_term(x[3]))
    if h == "fix" and len(x) == 2:
        return Fix(parse_term(x[1]))
    if h == "derelict" and len(x) == 2 and not isinstance(x[1], list):
        return Derelict(str(x[1]))
    if h in ("promote", "promote-affine") and len(x) == 2:
        return Promote(parse_term(x[1]), h == "promote-affine")
    raise ParseError(f"not a term: {dump_sexpr(x)}")


def parse_pcf(text: str) -> PcfTerm:
    return parse_term(parse_sexpr(text))


def type_sexpr(t: PcfType):
    if isinstance(t, TBool):
        return "bool"
    if isinstance(t, TLolli):
        return ["lolli", type_sexpr(t.arg), type_sexpr(t.res)]
    return ["bang" if isinstance(t, TBang) else "affine", type_sexpr(t.body)]


def term_sexpr(m: PcfTerm):
    if isinstance(m, Const):
        return "tt" if m.value else "ff"
    if isinstance(m, Var):
        return m.name
    if isinstance(m, Lam):
        return ["lam", [m.var, type_sexpr(m.type)], term_sexpr(m.body)]
    if isinstance(m, App):
        return ["app", term_sexpr(m.fun), term_sexpr(m.arg)]
    if isinstance(m, If):
        return ["if", term_sexpr(m.cond), term_sexpr(m.then), term_sexpr(m.other)]
    if isinstance(m, Fix):
        return ["fix", term_sexpr(m.body)]
    if isinstance(m, Derelict):
        return ["derelict", m.var]
    return ["promote-affine" if m.affine else "promote", term_sexpr(m.body)]
