"""
Logarithmic grey-value arithmetic
=================================

A walk through the grey-value algebra the whole library is built on.
Grey values live in [0, 256[ with an inverted scale: 0 is white (fully
transparent), 256 is black (opaque).  Addition models stacking two
semi-transparent layers; multiplication by a scalar models changing one
layer's thickness.
"""

import numpy as np

from lipmaps import (
    complement,
    complement_difference_identity,
    lip_add,
    lip_mult,
    lip_neg,
    lip_sub,
    tilde,
    transmittance,
    xi,
    xi_inv,
)

M = 256.0

# Stacking two identical layers of grey 100 does not give 200: the second
# layer only absorbs light the first one let through.
print("100 (+) 100 =", lip_add(100.0, 100.0))          # 160.9375
print("2 (x) 100   =", lip_mult(2.0, 100.0))           # the same operation

# The addition comes from the transmittance product law: the fraction of
# light passing two layers is the product of the fractions.
s = lip_add(100.0, 100.0)
print("T(100 (+) 100) =", transmittance(s))
print("T(100)^2       =", transmittance(100.0) ** 2)    # identical

# Subtraction undoes addition, and negation can leave the image range:
# "functions" with negative values are first-class citizens here.
print("(100 (+) 100) (-) 100 =", lip_sub(s, 100.0))     # back to 100
print("(-) 128 =", lip_neg(128.0))                       # -256, not an image

# Halving the thickness of a double layer restores the single layer.
print("0.5 (x) (2 (x) 128) =", lip_mult(0.5, lip_mult(2.0, 128.0)))

# The isomorphism xi turns the exotic laws into ordinary arithmetic.
f, g, lam = 80.0, 150.0, 2.5
print("xi(f (+) g)       =", xi(lip_add(f, g)))
print("xi(f) + xi(g)     =", xi(f) + xi(g))
print("xi(lam (x) f)     =", xi(lip_mult(lam, f)))
print("lam * xi(f)       =", lam * xi(f))
print("round trip        =", xi_inv(xi(f)))

# tilde is the (negative) log-transmittance; xi is just -M * tilde on images.
print("tilde(128) =", tilde(128.0), "   xi(128)/-M =", xi(128.0) / -M)

# Complementation swaps the roles of dark and bright.  Subtracting
# complements collapses to a plain ratio, the identity behind the link
# between the two Asplund metrics (03 demo):
lhs = complement_difference_identity(100.0, 150.0)
print("(M-100) (-) (M-150) =", lhs, " = M(1 - 100/150) =", M * (1 - 100.0 / 150.0))
print("complement twice    =", complement(complement(42.0)))

# Everything broadcasts over arrays, so images are one step away.
row = np.array([[0.0, 64.0, 128.0, 192.0]])
print("row (+) 100 =", lip_add(row, 100.0))
