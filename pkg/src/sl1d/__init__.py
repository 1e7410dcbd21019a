"""sl1d: exact character theory of the norm-one units of a local division
algebra of prime degree.

The engine works over the equal-characteristic local field K = F_q((pi)),
with D the cyclic division algebra generated over K by the unramified
degree-ell extension L = F_{q^ell}((pi)) and a uniformizer nu satisfying
nu^ell = pi and nu^{-1} t nu = t^q for constants t.  All arithmetic is
exact: finite-field tables, truncated skew series, integer census
formulas, and cyclotomic-integer character values.

Modules
-------
gf            finite-field tower F_p <= F_q <= F_{q^ell}
algebra       skew nu-series arithmetic in D and its quotients O/P^m
orbits        similarity classes and congruence stabilizers
duality       residue pairing, dual layers, Heisenberg lift data
construction  explicit finite quotient groups and induced characters
zeta          census formulas, group orders, representation zeta function
cli           batch front end (census / orbits / elem / zeta / verify)
"""

from .errors import SL1DError

__version__ = "0.1.0"

__all__ = ["SL1DError", "__version__"]
