"""epwforge: exact construction and finite-field certification of the
two A7-invariant EPW sextics.

Library layout:
    arith     exact arithmetic in Q(zeta_21) and F_p, residue reduction
    linalg    dense exact matrices, wedge cube, symplectic form
    grouprep  enumeration of 3.A7, conjugacy classes, isotypic projectors
    poly      multivariate polynomials over F_p, determinants, minors
    groebner  Buchberger engine, Hilbert series, localization tests
    epw       chart matrices, sextic extraction, geometric certification
    cli       command-line pipeline (build, certify, report)
"""

__version__ = "0.1.0"
