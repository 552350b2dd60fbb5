"""Formula syntax for counting monadic second-order logic on graphs.

First-order variables start with a lowercase letter, set variables with an
uppercase one.  Connective precedence from loosest to tightest is
<->, ->, |, &, !; quantifier scope extends as far right as possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from ..errors import ValidationError


def _check_fo(name):
    if not name or not name[0].islower():
        raise ValidationError(f"{name!r} is not a first-order variable")


def _check_set(name):
    if not name or not name[0].isupper():
        raise ValidationError(f"{name!r} is not a set variable")


class Formula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True, slots=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Edge(Formula):
    x: str
    y: str

    def __post_init__(self):
        _check_fo(self.x)
        _check_fo(self.y)


@dataclass(frozen=True, slots=True)
class Eq(Formula):
    x: str
    y: str

    def __post_init__(self):
        _check_fo(self.x)
        _check_fo(self.y)


@dataclass(frozen=True, slots=True)
class InSet(Formula):
    x: str
    var: str

    def __post_init__(self):
        _check_fo(self.x)
        _check_set(self.var)


@dataclass(frozen=True, slots=True)
class ModCount(Formula):
    """|X| is congruent to a modulo b."""

    a: int
    b: int
    var: str

    def __post_init__(self):
        _check_set(self.var)
        if not 0 <= self.a < self.b:
            raise ValidationError(
                f"mod({self.a}, {self.b}, {self.var}) needs 0 <= a < b"
            )


@dataclass(frozen=True, slots=True)
class HasLabel(Formula):
    label: str
    x: str

    def __post_init__(self):
        if not self.label:
            raise ValidationError("label name must be non-empty")
        _check_fo(self.x)


@dataclass(frozen=True, slots=True)
class RelAtom(Formula):
    rel: str
    x: str
    y: str

    def __post_init__(self):
        if not self.rel:
            raise ValidationError("relation name must be non-empty")
        _check_fo(self.x)
        _check_fo(self.y)


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class ExistsVertex(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        _check_fo(self.var)


@dataclass(frozen=True, slots=True)
class AllVertex(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        _check_fo(self.var)


@dataclass(frozen=True, slots=True)
class ExistsSet(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        _check_set(self.var)


@dataclass(frozen=True, slots=True)
class AllSet(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        _check_set(self.var)


_BINARY = {And: " & ", Or: " | ", Implies: " -> ", Iff: " <-> "}
_FO_QUANT = {ExistsVertex: "ex1", AllVertex: "all1"}
_SET_QUANT = {ExistsSet: "ex2", AllSet: "all2"}
_QUANT = {**_FO_QUANT, **_SET_QUANT}


def free_vars(formula):
    """(first-order frees, set frees) as a pair of frozensets."""
    fo, sets = set(), set()

    def walk(f, bound_fo, bound_set):
        t = type(f)
        if t in (Edge, Eq, RelAtom):
            fo.update({f.x, f.y} - bound_fo)
        elif t is InSet:
            if f.x not in bound_fo:
                fo.add(f.x)
            if f.var not in bound_set:
                sets.add(f.var)
        elif t is ModCount:
            if f.var not in bound_set:
                sets.add(f.var)
        elif t is HasLabel:
            if f.x not in bound_fo:
                fo.add(f.x)
        elif t is Not:
            walk(f.body, bound_fo, bound_set)
        elif t in _BINARY:
            walk(f.left, bound_fo, bound_set)
            walk(f.right, bound_fo, bound_set)
        elif t in _FO_QUANT:
            walk(f.body, bound_fo | {f.var}, bound_set)
        elif t in _SET_QUANT:
            walk(f.body, bound_fo, bound_set | {f.var})

    walk(formula, set(), set())
    return frozenset(fo), frozenset(sets)


def is_sentence(formula):
    fo, sets = free_vars(formula)
    return not fo and not sets


def all_var_names(formula):
    """Every variable name occurring anywhere, bound or free."""
    names = set()

    def walk(f):
        t = type(f)
        if t in (Edge, Eq, RelAtom):
            names.update((f.x, f.y))
        elif t is InSet:
            names.update((f.x, f.var))
        elif t is ModCount:
            names.add(f.var)
        elif t is HasLabel:
            names.add(f.x)
        elif t is Not:
            walk(f.body)
        elif t in _BINARY:
            walk(f.left)
            walk(f.right)
        elif t in _QUANT:
            names.add(f.var)
            walk(f.body)

    walk(formula)
    return names


def quantifier_count(formula):
    t = type(formula)
    if t is Not:
        return quantifier_count(formula.body)
    if t in _BINARY:
        return quantifier_count(formula.left) + quantifier_count(formula.right)
    if t in _QUANT:
        return 1 + quantifier_count(formula.body)
    return 0


def set_quantifier_rank(formula):
    """Deepest nesting of set quantifiers."""
    t = type(formula)
    if t is Not:
        return set_quantifier_rank(formula.body)
    if t in _BINARY:
        return max(
            set_quantifier_rank(formula.left),
            set_quantifier_rank(formula.right),
        )
    if t in _FO_QUANT:
        return set_quantifier_rank(formula.body)
    if t in _SET_QUANT:
        return 1 + set_quantifier_rank(formula.body)
    return 0


def mod_lcm(formula):
    """Least common multiple of the moduli appearing in mod atoms (1 if none)."""
    t = type(formula)
    if t is ModCount:
        return formula.b
    if t is Not:
        return mod_lcm(formula.body)
    if t in _BINARY:
        return lcm(mod_lcm(formula.left), mod_lcm(formula.right))
    if t in _QUANT:
        return mod_lcm(formula.body)
    return 1


def fresh_name_pool(taken):
    """Yields first-order variable names avoiding `taken`."""
    i = 0
    while True:
        name = f"w{i}"
        if name not in taken:
            yield name
        i += 1


def substitute_fo(formula, mapping, taken=None):
    """Rename free first-order variables; bound variables are alpha-renamed
    away from the mapping's targets so nothing is captured."""
    taken = set(taken or ()) | all_var_names(formula) | set(mapping.values())
    pool = fresh_name_pool(taken)

    def walk(f, env):
        t = type(f)
        if t in (TrueConst, FalseConst, ModCount):
            return f
        if t is Edge:
            return Edge(env.get(f.x, f.x), env.get(f.y, f.y))
        if t is Eq:
            return Eq(env.get(f.x, f.x), env.get(f.y, f.y))
        if t is RelAtom:
            return RelAtom(f.rel, env.get(f.x, f.x), env.get(f.y, f.y))
        if t is InSet:
            return InSet(env.get(f.x, f.x), f.var)
        if t is HasLabel:
            return HasLabel(f.label, env.get(f.x, f.x))
        if t is Not:
            return Not(walk(f.body, env))
        if t in _BINARY:
            return t(walk(f.left, env), walk(f.right, env))
        if t in _SET_QUANT:
            return t(f.var, walk(f.body, env))
        if t in _FO_QUANT:
            env = dict(env)
            if f.var in set(env.values()):
                new = next(pool)
                env[f.var] = new
                return t(new, walk(f.body, env))
            env.pop(f.var, None)
            return t(f.var, walk(f.body, env))
        raise ValidationError(f"unknown formula node {f!r}")

    return walk(formula, dict(mapping))


_PREC = {
    Iff: 1,
    Implies: 2,
    Or: 3,
    And: 4,
    Not: 5,
}


def format_formula(formula):
    """Deterministic text the parser maps back to the same tree."""

    def render(f, ctx):
        t = type(f)
        if t is TrueConst:
            return "true"
        if t is FalseConst:
            return "false"
        if t is Edge:
            return f"edge({f.x}, {f.y})"
        if t is Eq:
            return f"{f.x} = {f.y}"
        if t is InSet:
            return f"{f.x} in {f.var}"
        if t is ModCount:
            return f"mod({f.a}, {f.b}, {f.var})"
        if t is HasLabel:
            return f"label_{f.label}({f.x})"
        if t is RelAtom:
            return f"rel_{f.rel}({f.x}, {f.y})"
        if t is Not:
            s = "!" + render(f.body, _PREC[Not])
        elif t in _BINARY:
            p = _PREC[t]
            right_bump = 0 if t is Implies else 1
            left_bump = 1 if t is Implies else 0
            s = (
                render(f.left, p + left_bump)
                + _BINARY[t]
                + render(f.right, p + right_bump)
            )
        elif t in _QUANT:
            s = f"{_QUANT[t]} {f.var}. " + render(f.body, 0)
        else:
            raise ValidationError(f"unknown formula node {f!r}")
        p = 0 if t in _QUANT else _PREC[t]
        return f"({s})" if p < ctx else s

    return render(formula, 0)
