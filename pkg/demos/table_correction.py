"""Why the bad-prime conditions need their "or" branch: the curve (1, 7).

Read literally, the local conditions give a matrix M1 with trivial kernel,
so (1, 7) would look Selmer-minimal.  The rational point x = 49/4 has
descent image (5, 5, 1), a nontrivial element, so that cannot be right.
"""

from fractions import Fraction

from twistsha import f2
from twistsha.arith import squarefree_part
from twistsha.selmer import matrix_M1
from twistsha.errors import NotSelmerMinimal
from twistsha.params import CurveParams
from twistsha.selmer import check_curve

a, b = 1, 7
x = Fraction(49, 4)
rhs = x * (x - a * a) * (x + b * b)
print(f"y^2 = {rhs} = ({rhs.numerator ** 0.5:.0f}/{rhs.denominator ** 0.5:.0f})^2")


def sqf(q):
    return squarefree_part(q.numerator * q.denominator)


print("descent image", (sqf(x - a * a), sqf(x + b * b), sqf(x)))

# an unchecked curve object so both matrices can be built
E = CurveParams.from_ab(a, b)
for literal in (True, False):
    print(f"literal={literal}: dim Ker M1 = {len(f2.kernel_basis(matrix_M1(E, literal=literal)))}")
try:
    check_curve(a, b)
except NotSelmerMinimal as exc:
    print("check_curve:", exc)
