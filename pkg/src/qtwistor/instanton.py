"""Generators a, b, R of the 4-sphere inside the 7-sphere, and the projector G."""
from __future__ import annotations

from functools import lru_cache

from .ncalg import AlgMatrix, Element, is_mu_invariant, z, zs
from .scalar import ONE, qpow


@lru_cache(maxsize=1)
def instanton_generators() -> tuple[Element, Element, Element]:
    a = z(1) * zs(4) - z(2) * zs(3)
    b = z(1) * z(3) + z(2) * z(4) * qpow(-1)
    R = z(1) * zs(1) + z(2) * zs(2)
    return a, b, R


def s4_relations() -> list[tuple[str, Element, Element]]:
    a, b, R = instanton_generators()
    q = lambda e: qpow(e)
    one = Element.scalar(1)
    as_, bs = a.adjoint(), b.adjoint()
    return [
        ("Ra=q^-2 aR", R * a, a * R * q(-2)),
        ("Rb=q^2 bR", R * b, b * R * q(2)),
        ("ab=q^3 ba", a * b, b * a * q(3)),
        ("ab'=q^-1 b'a", a * bs, bs * a * q(-1)),
        ("aa'+q^2 bb'=R(1-q^2 R)", a * as_ + b * bs * q(2), R * (one - R * q(2))),
        ("aa'=q^2 a'a+(1-q^2)R^2", a * as_, as_ * a * q(2) + R * R * (ONE - q(2))),
        ("b'b=q^4 bb'+(1-q^2)R", bs * b, b * bs * q(4) + R * (ONE - q(2))),
    ]


def verify_s4_relations() -> dict[str, bool]:
    return {label: (lhs - rhs).is_zero() for label, lhs, rhs in s4_relations()}


@lru_cache(maxsize=1)
def projector_G() -> AlgMatrix:
    a, b, R = instanton_generators()
    q = qpow
    one = Element.scalar(1)
    as_, bs = a.adjoint(), b.adjoint()
    rows = [
        [R * q(2), Element(), a * q(1), b * q(2)],
        [Element(), R * q(2), bs * q(1), as_ * (-q(3))],
        [as_ * q(1), b * q(1), one - R, Element()],
        [bs * q(2), a * (-q(3)), Element(), one - R * q(4)],
    ]
    return AlgMatrix.build(rows)


def verify_projector(M: AlgMatrix) -> bool:
    n, p = M.shape
    if n != p:
        raise ValueError("projector check needs a square matrix")
    return (M @ M - M).is_zero() and (M.adjoint() - M).is_zero()


def generators_invariant() -> bool:
    return all(is_mu_invariant(x) for x in instanton_generators())
