"""Published integer tables: forest counts ``r_n`` and primitive dimensions
``h_{n,1}`` for ``n = 1..29``."""

R_TABLE = (
    1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486, 32973, 87811, 235381,
    634847, 1721159, 4688676, 12826228, 35221832, 97055181, 268282855, 743724984,
    2067174645, 5759636510, 16083734329, 45007066269, 126186554308, 354426847597,
)

H1_TABLE = (
    1, 1, 1, 2, 3, 8, 16, 41, 98, 250, 631, 1646, 4285, 11338, 30135,
    80791, 217673, 590010, 1606188, 4392219, 12055393, 33206321, 91752211,
    254261363, 706465999, 1967743066, 5493195530, 15367129299, 43073007846,
)

# renormalized x_{l3} before the regulator limit, in canonical rendering
RENORM_L3 = (
    "x_{l3}(c) - [x_{l1}(c)]x_{l2}(c) - [x_{l2}(c)]x_{l1}(c) + [x_{l1}(c) x_{l1}(c)]x_{l1}(c)"
    " - [x_{l3}(c)] + [[x_{l1}(c)]x_{l2}(c)] + [[x_{l2}(c)]x_{l1}(c)]"
    " - [[x_{l1}(c) x_{l1}(c)]x_{l1}(c)]"
)
