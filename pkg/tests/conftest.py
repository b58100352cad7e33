import random

from hypothesis import strategies as st

from padyn.dsl import BinOp, Const, MapSpec, Not, Var

ARITH = ("+", "-", "*")
BITS = ("xor", "and", "or")


def random_expr(rng: random.Random, p: int, k: int, depth: int):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.6:
            return Var(rng.randrange(k))
        return Const(rng.randrange(0, 40))
    ops = ARITH + (BITS if p == 2 else ())
    if p == 2 and rng.random() < 0.1:
        return Not(random_expr(rng, p, k, depth - 1))
    op = rng.choice(ops)
    return BinOp(op, random_expr(rng, p, k, depth - 1), random_expr(rng, p, k, depth - 1))


def random_spec(rng: random.Random, p: int, k: int, depth: int = 4) -> MapSpec:
    return MapSpec(p, k, tuple(random_expr(rng, p, k, depth) for _ in range(k)))


def exprs(p: int, k: int, depth: int = 4):
    leaves = st.one_of(st.builds(Var, st.integers(0, k - 1)), st.builds(Const, st.integers(0, 50)))
    ops = ARITH + (BITS if p == 2 else ())

    def extend(children):
        binop = st.builds(BinOp, st.sampled_from(ops), children, children)
        return st.one_of(binop, st.builds(Not, children)) if p == 2 else binop

    return st.recursive(leaves, extend, max_leaves=2**depth)


@st.composite
def specs(draw, p=None, k=None):
    p = draw(st.sampled_from([2, 3, 5])) if p is None else p
    k = draw(st.integers(1, 2)) if k is None else k
    return MapSpec(p, k, tuple(draw(exprs(p, k)) for _ in range(k)))
