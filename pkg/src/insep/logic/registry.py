"""Named base theories that machine programs can refer to by number.

The ``prove`` builtin takes one of these numbers, so the table is part of
the machine and must only grow at the end.
"""

from __future__ import annotations

from functools import lru_cache

J_E, J_E2, U_DEFAULT, V_DEFAULT, T_DEFAULT, J_SUM, T_PIPELINE = range(7)
NAMES = ("J", "J'", "U", "V0", "U(+)V0", "J(+)J'", "U(+)V")


def default_subject(rel: str = "E", name: str = "U"):
    """J + {A_n : n = 0 mod 4} + {not A_n : n = 2 mod 4}: a J,X'-theory over a split of the evens."""
    from ..janiczak.jx import JTheory, Progression

    return JTheory(rel, Progression(4, 0), Progression(4, 2), name=name)


@lru_cache(maxsize=None)
def base_theory(k: int):
    from ..janiczak.jx import janiczak
    from .oplus import oplus

    if k == J_E:
        return janiczak("E")
    if k == J_E2:
        return janiczak("E'")
    if k == U_DEFAULT:
        return default_subject("E", "U")
    if k == V_DEFAULT:
        return default_subject("E'", "V0")
    if k == T_DEFAULT:
        return oplus(base_theory(U_DEFAULT), base_theory(V_DEFAULT))
    if k == J_SUM:
        return oplus(janiczak("E"), janiczak("E'"))
    if k == T_PIPELINE:
        # V from the K-pair pushed along F (prefix to depth 2, then step 2); staged membership
        from ..construct.vtheory import weaker_theory

        return weaker_theory(default_subject(), samples=0).theory
    return None


def base_by_name(name: str) -> int:
    try:
        return NAMES.index(name)
    except ValueError:
        raise KeyError(f"unknown base theory {name!r}; known: {', '.join(NAMES)}") from None
