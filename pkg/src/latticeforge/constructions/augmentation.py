"""The free group G over generators a0 and (a_g) for g in a base group,
its map onto Z * base, and the diagonal subgroup of pairs (x, x) whose
image lies in the base group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..freeprod import FreeProduct
from ..groups import FreeGroup, Group, GroupHom, apply_hom


@dataclass
class AugmentationData:
    base: Group
    free: FreeGroup
    target: FreeProduct  # Z * base, Z first
    hom: GroupHom
    base_elements: list

    def a0(self):
        return self.free.generator(0)

    def a(self, g):
        """The free generator a_g."""
        return self.free.generator(1 + self.base_elements.index(g))


def build_augmentation(base: Group) -> AugmentationData:
    if not base.is_finite:
        raise ValueError(f"unsupported base group {base!r}: only finite groups have a decidable table here")
    elems = base.elements()
    Z = FreeGroup(1, ["z"])
    target = FreeProduct([Z, base], names=["z"] + [f"g{i}" for i in range(len(base.generators()))])
    free = FreeGroup(1 + len(elems), ["a0"] + [f"a[{base.format(g)}]" for g in elems])
    images = {0: target.letter(0, Z.generator(0))}
    for i, g in enumerate(elems):
        images[1 + i] = target.letter(1, g)
    return AugmentationData(base, free, target, GroupHom(free, target, images), elems)


def augmentation_eval(d: AugmentationData, x):
    """Reduced image of a G-word in Z * base."""
    return apply_hom(d.hom, x)


def n_gamma_member(d: AugmentationData, x) -> bool:
    """Is the diagonal pair (x, x) in the subgroup, i.e. does x map into the base?"""
    img = augmentation_eval(d, x)
    return len(img) == 0 or (len(img) == 1 and img[0][0] == 1)


def pair_member(d: AugmentationData, x, y) -> bool:
    return x == y and n_gamma_member(d, x)


def same_coset(d: AugmentationData, p1, p2) -> bool:
    """Do the pairs p1, p2 of G x G lie in the same left coset of the subgroup?"""
    F = d.free
    n1 = F.mul(F.inv(p1[0]), p2[0])
    n2 = F.mul(F.inv(p1[1]), p2[1])
    return pair_member(d, n1, n2)


def free_ball(F: FreeGroup, L: int) -> list:
    """Reduced words of length <= L (syllables of exponent +-1), shortlex."""
    out, layer = [()], [()]
    for _ in range(L):
        nxt = []
        for w in layer:
            for g, e in product(range(F.rank), (1, -1)):
                if w and w[-1][0] == g and w[-1][1] == -e:
                    continue
                nxt.append(F.mul(w, ((g, e),)))
        out.extend(nxt)
        layer = nxt
    return out


def coset_representatives(d: AugmentationData, L: int) -> list:
    """One pair per left coset met by pairs of words of length <= L, first in shortlex order."""
    ball = free_ball(d.free, L)
    reps = []
    for p in product(ball, repeat=2):
        if not any(same_coset(d, r, p) for r in reps):
            reps.append(p)
    return reps
