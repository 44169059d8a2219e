"""
garcat: Garside categories of periodic elements over dual braid monoids.

Modules:
- exactalg:     exact arithmetic (scaled-integer matrices, monomial matrices),
                reflection length, reflection-set closure.
- interval:     the interval lattice I_c = [1, c] with meet/join, the divided
                object sets D_p^q, the conjugation action, and a binary cache.
- garside:      the divided category C_p^q: simples, greedy normal form,
                atoms, atomic loops, cycling/decycling, super summit sets.
- presentation: category presentations, Hurwitz generators and relations,
                Schreier transversals, Reidemeister-Schreier, Tietze moves,
                and the rewriting toolbox (complements, reversing, positive
                word problem).
- series:       interval identities for the monomial series G(d,1,q) and
                G(e,e,n), cycle classification, and noncrossing partitions.
- g31:          the rank-4 periodic category over W(E8) at (p,q) = (2,15)
                and the derivation of the eight vertex-group presentations.
- cli:          command line front end (`garcat ...`).
"""

__version__ = "0.1.0"

__all__ = [
    "exactalg",
    "interval",
    "garside",
    "presentation",
    "series",
    "g31",
]
