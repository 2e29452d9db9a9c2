"""An injective map from F2 * Z/2 into the free group F2 = <u, v>.

The even part of F2 * Z/2 (the kernel of the Z/2 coordinate) is free on
a, b, cac, cbc.  delta sends these to u, v u v^-1, v^2 u v^-2, v^3 u v^-3
and eta extends delta to odd elements by eta(c g) = v^-2 delta(g).
eta is not a homomorphism (F2 has no torsion) but it is equivariant for
left multiplication by <a, b> and right multiplication by the even part.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from ..freeprod import FreeProduct, schreier_rewrite
from ..groups import Cyclic, FreeGroup

LAMBDA = FreeProduct([FreeGroup(1, ["a"]), FreeGroup(1, ["b"]), Cyclic(2)], names=["a", "b", "c"])
F2 = FreeGroup(2, ["u", "v"])
C = LAMBDA.generator("c")


def _parity(letter) -> int:
    return 1 if letter[0] == 2 else 0


def _v(k):
    return F2.generator(1, k)


def _conj_u(k):
    # v^k u v^-k
    return F2.mul(F2.mul(_v(k), F2.generator(0)), _v(-k))


# Schreier generator (coset, factor) -> image of the generator
_DELTA_GENS = {
    ("e", 0): _conj_u(0),  # a
    ("e", 1): _conj_u(1),  # b
    ("c", 0): _conj_u(2),  # c a c
    ("c", 1): _conj_u(3),  # c b c
}


def parity(x) -> int:
    return sum(_parity(l) for l in x) % 2


def delta(x):
    """The injective homomorphism on the even part; odd x raises NotInSubgroup."""
    out = ()
    for coset, (f, val) in schreier_rewrite(LAMBDA, _parity, C, x):
        k = val[0][1]
        g = _DELTA_GENS[(coset, f)]
        if k < 0:
            g, k = F2.inv(g), -k
        for _ in range(k):
            out = F2.mul(out, g)
    return out


def remark_embedding(x):
    """eta(x)."""
    if parity(x) == 0:
        return delta(x)
    return F2.mul(_v(-2), delta(LAMBDA.mul(C, x)))


def generator_ball(L: int, generators=None) -> list:
    """Elements of F2 * Z/2 at generator distance <= L from e (a^+-1, b^+-1, c), BFS order."""
    if generators is None:
        generators = [LAMBDA.parse(s) for s in ("a", "a^-1", "b", "b^-1", "c")]
    seen = {(): 0}
    order = [()]
    queue = deque([()])
    while queue:
        x = queue.popleft()
        if seen[x] == L:
            continue
        for g in generators:
            y = LAMBDA.mul(x, g)
            if y not in seen:
                seen[y] = seen[x] + 1
                order.append(y)
                queue.append(y)
    return order


def free_part_ball(L: int) -> list:
    """The <a, b> ball."""
    return generator_ball(L, [LAMBDA.parse(s) for s in ("a", "a^-1", "b", "b^-1")])


def even_ball(L: int) -> list:
    return [x for x in generator_ball(L) if parity(x) == 0]


@dataclass
class RemarkReport:
    radius: int
    triples_checked: int = 0
    identity_failures: list = field(default_factory=list)
    injectivity_radius: int = 0
    injectivity_checked: int = 0
    collisions: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.identity_failures and not self.collisions


def check_remark_identity(L: int = 3, injectivity_radius: int | None = None, limit: int = 20) -> RemarkReport:
    """eta(g k h) = delta(g) eta(k) delta(h) over the triple ball, plus injectivity of eta."""
    t0 = time.perf_counter()
    R = injectivity_radius if injectivity_radius is not None else L + 1
    rep = RemarkReport(L, injectivity_radius=R)
    gs = [(g, delta(g)) for g in free_part_ball(L)]
    ks = [(k, remark_embedding(k)) for k in generator_ball(L)]
    hs = [(h, delta(h)) for h in even_ball(L)]
    for g, dg in gs:
        for k, ek in ks:
            gk = LAMBDA.mul(g, k)
            left = F2.mul(dg, ek)
            for h, dh in hs:
                rep.triples_checked += 1
                if remark_embedding(LAMBDA.mul(gk, h)) != F2.mul(left, dh):
                    if len(rep.identity_failures) < limit:
                        rep.identity_failures.append((g, k, h))
    images = {}
    for x in generator_ball(R):
        rep.injectivity_checked += 1
        y = remark_embedding(x)
        if y in images and len(rep.collisions) < limit:
            rep.collisions.append((images[y], x))
        images.setdefault(y, x)
    rep.seconds = time.perf_counter() - t0
    return rep


def delta_values() -> dict:
    """delta on the four free generators of the even part, formatted in u, v."""
    return {s: F2.format(delta(LAMBDA.parse(s))) for s in ("a", "b", "c a c", "c b c")}
