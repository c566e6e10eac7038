"""Local tables against a p-adic point search, then the Selmer group against brute force."""

from twistsha import check_curve, sel2_prime
from twistsha.arith import squarefree_part
from twistsha.padic import local_point_oracle
from twistsha.selmer import HomogeneousSpace, local_solvable, sel2_prime_bruteforce

E = check_curve(1, 1)
n = 41

# every candidate triple, every bad prime
agree = total = 0
for d1 in (1, -1, 2, -2, 41, -41, 82, -82):
    for d2 in (1, 2, 41, 82):
        sp = HomogeneousSpace.of(E, n, (d1, d2, squarefree_part(d1 * d2)))
        for p in (2, 41):
            total += 1
            agree += local_solvable(sp, p) == local_point_oracle(sp, p)
print(f"local table vs oracle at n = {n}: {agree}/{total} agree")

dim, basis = sel2_prime(E, n)
brute = sel2_prime_bruteforce(E, n)
print(f"Selmer rank {dim}; brute-force group has {len(brute)} elements (expect {2 ** dim})")
