"""Walk through n = 17 and n = 65 on the curve (a, b) = (1, 1)."""

from twistsha import check_curve, classify, genus_data, sel2_prime

E = check_curve(1, 1)

for n in (17, 65):
    dim, basis = sel2_prime(E, n)
    g = genus_data(n)
    res = classify(E, n)
    print(f"n = {n}")
    print(f"  pure Selmer rank {dim}, basis {[t.as_tuple() for t in basis]}")
    print(f"  h4 = {g.h4}, d0 = {g.d0}, h8 indicator = {g.h8_indicator}")
    print(f"  rank 0 with Sha[2^inf] = (Z/2)^2: {res.verdict}  (routes {res.cases}, agree {res.agreement})")
    print(f"  pairing bit {res.certificate.pairing_bit}, gram {res.certificate.gram}")
