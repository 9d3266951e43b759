"""How dipole emission geometry limits both collection and fidelity.

Viewed exactly side-on (polar angle 90 degrees from the quantization axis)
the pi and sigma photons are orthogonally polarized and map onto V and H.
A lens with a finite aperture also accepts directions away from that plane,
where the polarizations start to overlap; this script scans both effects.
"""

import math

from ionlink.emission import (
    CollectionModel,
    EmissionDirection,
    collection_fraction,
    cone_mixing_weight,
    pi_emission,
    polarization_overlap,
    sigma_emission,
)

print("== intensity and overlap vs polar angle ==")
print(f"{'theta_deg':>9} {'i_pi':>8} {'i_sigma':>8} {'|overlap|':>10}")
for deg in range(0, 181, 15):
    d = EmissionDirection(math.radians(deg), 0.0)
    print(f"{deg:>9} {pi_emission(d).intensity:>8.4f} "
          f"{sigma_emission(d, +1).intensity:>8.4f} "
          f"{abs(polarization_overlap(d, +1)):>10.4f}")
print("side-on (90 deg): pi carries twice the sigma intensity and the overlap")
print("vanishes, which is what makes the H/V encoding clean there.\n")

print("== collected fraction of the sphere vs NA ==")
print(f"{'na':>5} {'quadratic':>10} {'exact':>10}")
for na in (0.1, 0.3, 0.6, 0.9, 1.0):
    quad = collection_fraction(na, CollectionModel.QUADRATIC)
    exact = collection_fraction(na, CollectionModel.EXACT_SOLID_ANGLE)
    print(f"{na:>5.2f} {quad:>10.4f} {exact:>10.4f}")
print("the quadratic small-angle form undershoots at large NA; a 0.6 NA lens")
print("captures about a tenth of all emitted photons.\n")

print("== polarization mixing admitted by the aperture ==")
for na in (0.2, 0.4, 0.6, 0.8, 1.0):
    print(f"NA={na:.1f}: cone-averaged |<pi|sigma>|^2 = {cone_mixing_weight(na):.5f}")
print("\nTakeaway: bigger lenses collect quadratically more photons but let in")
print("monotonically more sigma/pi mixing, the root of the fidelity penalty.")
