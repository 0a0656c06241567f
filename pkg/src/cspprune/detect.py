"""Specialised occurrence detectors for the eight elimination rules.

Each detector decides whether its pattern occurs at a given variable with a
given existential mapping, by straight-line enumeration specialised to the
pattern's shape.  They are exact: whenever two pattern values of one variable
could be sent to the same target value, the pattern's own edges already
forbid it (one value carries a compatible edge and the other an incompatible
edge to a shared assignment), so scanning target values independently never
invents an occurrence the homomorphism semantics would reject.

Naming: x is the variable the pattern is anchored at, d the image of the
plain existential value, b the image of the value marked for removal.
Helper variables are only scanned where an incompatible edge pins them to a
stored constraint (an absent relation is all-compatible and can never host
an incompatible edge).
"""

from __future__ import annotations

from .model import Instance


def occurs_btp(instance: Instance, x: int) -> bool:
    dx = instance.domain(x)
    if len(dx) < 2:
        return False
    nx = instance.neighbors(x)
    for y in nx:
        dy = instance.domain(y)
        for z in nx:
            if z == y:
                continue
            dz = instance.domain(z)
            for c in dy:
                for dprime in dz:
                    if not instance.cpt(y, c, z, dprime):
                        continue
                    for a in dx:
                        if instance.cpt(y, c, x, a) or not instance.cpt(z, dprime, x, a):
                            continue
                        for b in dx:
                            if instance.cpt(y, c, x, b) and not instance.cpt(z, dprime, x, b):
                                return True
    return False


def occurs_btp_fast(instance: Instance, x: int) -> bool:
    """Bitmask form of occurs_btp, for the engine's hot path.

    For each neighbor assignment (y, c), the set of x-values compatible with
    it is a bitmask; the pattern occurs exactly when two such assignments of
    distinct neighbors are compatible with each other and have incomparable
    masks (each offers a compatible value the other forbids).
    """
    dx = instance.domain(x)
    if len(dx) < 2:
        return False
    masks: list[tuple[int, int, int]] = []
    for y in instance.neighbors(x):
        for c in instance.domain(y):
            mask = 0
            for i, v in enumerate(dx):
                if instance.cpt(y, c, x, v):
                    mask |= 1 << i
            masks.append((y, c, mask))
    n = len(masks)
    for i in range(n):
        y, c, m1 = masks[i]
        for j in range(n):
            z, dprime, m2 = masks[j]
            if z == y:
                continue
            if (m1 & ~m2) and (m2 & ~m1) and instance.cpt(y, c, z, dprime):
                return True
    return False


def occurs_exists_sub_btp(instance: Instance, x: int, d: int) -> bool:
    dx = instance.domain(x)
    nx = instance.neighbors(x)
    for y in nx:
        dy = instance.domain(y)
        for z in nx:
            if z == y:
                continue
            dz = instance.domain(z)
            for c in dy:
                if instance.cpt(y, c, x, d):
                    continue
                for bhat in dx:
                    if not instance.cpt(y, c, x, bhat):
                        continue
                    for dprime in dz:
                        if instance.cpt(y, c, z, dprime) and not instance.cpt(z, dprime, x, bhat):
                            return True
    return False


def occurs_exists_inv_sub_btp(instance: Instance, x: int, d: int) -> bool:
    for y in instance.neighbors(x):
        dy = instance.domain(y)
        phat_ok = [p for p in dy if not instance.cpt(y, p, x, d)]
        qhat_ok = [q for q in dy if instance.cpt(y, q, x, d)]
        if not phat_ok or not qhat_ok:
            continue
        for z in instance.neighbors(y):
            if z == x:
                continue
            for rhat in instance.domain(z):
                if not instance.cpt(z, rhat, x, d):
                    continue
                for qhat in qhat_ok:
                    if not instance.cpt(z, rhat, y, qhat):
                        return True
    return False


def occurs_exists_snake(instance: Instance, x: int, d: int) -> bool:
    for y in instance.neighbors(x):
        dy = instance.domain(y)
        phat_ok = [p for p in dy if not instance.cpt(y, p, x, d)]
        qhat_ok = [q for q in dy if instance.cpt(y, q, x, d)]
        if not phat_ok or not qhat_ok:
            continue
        for z in instance.neighbors(y):
            if z == x:
                continue
            for rhat in instance.domain(z):
                for phat in phat_ok:
                    if not instance.cpt(y, phat, z, rhat):
                        continue
                    for qhat in qhat_ok:
                        if not instance.cpt(z, rhat, y, qhat):
                            return True
    return False


def occurs_ns(instance: Instance, x: int, d: int, b: int) -> bool:
    for y in instance.neighbors(x):
        for c in instance.domain(y):
            if instance.cpt(y, c, x, b) and not instance.cpt(y, c, x, d):
                return True
    return False


def occurs_exists2_triangle(instance: Instance, x: int, d: int, b: int) -> bool:
    for y in instance.neighbors(x):
        cs = [
            c for c in instance.domain(y)
            if instance.cpt(y, c, x, b) and not instance.cpt(y, c, x, d)
        ]
        if not cs:
            continue
        # z carries only compatible edges, so every other variable qualifies
        for z in instance.active_vars():
            if z == x or z == y:
                continue
            for dprime in instance.domain(z):
                if not instance.cpt(z, dprime, x, b):
                    continue
                for c in cs:
                    if instance.cpt(y, c, z, dprime):
                        return True
    return False


def occurs_exists2_inv_sub_btp(instance: Instance, x: int, d: int, b: int) -> bool:
    for y in instance.neighbors(x):
        dy = instance.domain(y)
        phat_ok = [
            p for p in dy
            if instance.cpt(y, p, x, b) and not instance.cpt(y, p, x, d)
        ]
        qhat_ok = [q for q in dy if instance.cpt(y, q, x, d)]
        if not phat_ok or not qhat_ok:
            continue
        for z in instance.neighbors(y):
            if z == x:
                continue
            for rhat in instance.domain(z):
                if not instance.cpt(z, rhat, x, d):
                    continue
                for qhat in qhat_ok:
                    if not instance.cpt(z, rhat, y, qhat):
                        return True
    return False


def occurs_exists2_snake(instance: Instance, x: int, d: int, b: int) -> bool:
    for y in instance.neighbors(x):
        dy = instance.domain(y)
        phat_ok = [
            p for p in dy
            if instance.cpt(y, p, x, b) and not instance.cpt(y, p, x, d)
        ]
        qhat_ok = [q for q in dy if instance.cpt(y, q, x, d)]
        if not phat_ok or not qhat_ok:
            continue
        for z in instance.neighbors(y):
            if z == x:
                continue
            for rhat in instance.domain(z):
                for phat in phat_ok:
                    if not instance.cpt(y, phat, z, rhat):
                        continue
                    for qhat in qhat_ok:
                        if not instance.cpt(z, rhat, y, qhat):
                            return True
    return False


VAR_RULE_DETECTORS = {
    "BTP": occurs_btp_fast,
    "ExistsSubBTP": occurs_exists_sub_btp,
    "ExistsInvSubBTP": occurs_exists_inv_sub_btp,
    "ExistsSnake": occurs_exists_snake,
}

VAL_RULE_DETECTORS = {
    "NS": occurs_ns,
    "Exists2Triangle": occurs_exists2_triangle,
    "Exists2InvSubBTP": occurs_exists2_inv_sub_btp,
    "Exists2Snake": occurs_exists2_snake,
}
