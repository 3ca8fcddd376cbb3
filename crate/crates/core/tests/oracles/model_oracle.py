"""Independent high-precision evaluation of the roll model and control laws.

Written directly from the equations of motion and control laws, sharing no
code with the Rust crate. Prints the values frozen in tests/oracle_values.rs.
Side sign: positive roll lowers the left side (sigma = -1 left, +1 right);
actuator force enters the unsprung balance with a + sign.
"""
from mpmath import mp, mpf, sin, cos

mp.dps = 40

ms, mu, Ixx, h = mpf(820), mpf(60), mpf(120), mpf("0.48")
ls, lw = mpf("1.3"), mpf("2.3")
kf, kr, bf, br = mpf(12000), mpf(35000), mpf(530), mpf(850)
kt, g = mpf(200000), mpf("9.81")
Ku = mpf("0.002") / mpf(820)
It = Ixx + ms * h**2


def roll_acc(phi, phid, zu, zud, ay, u):
    rhs = (ms * ay * h * cos(phi) + ms * g * h * sin(phi)
           - mpf("0.5") * kf * ls**2 * sin(phi) - mpf("0.5") * bf * ls**2 * phid * cos(phi)
           - mpf("0.5") * kr * ls**2 * sin(phi) - mpf("0.5") * br * ls**2 * phid * cos(phi)
           - mpf("0.5") * kf * ls * (zu[0] - zu[1]) - mpf("0.5") * bf * ls * (zud[0] - zud[1])
           - mpf("0.5") * kr * ls * (zu[2] - zu[3]) - mpf("0.5") * br * ls * (zud[2] - zud[3]))
    return (rhs + u) / It


SIG = [-1, 1, -1, 1]
K = [kf, kf, kr, kr]
B = [bf, bf, br, br]


def susp(j, phi, phid, zs, zsd, zu, zud):
    return (K[j] * (zs - zu[j] + SIG[j] * mpf("0.5") * ls * sin(phi))
            + B[j] * (zsd - zud[j] + SIG[j] * mpf("0.5") * ls * phid * cos(phi)))


def unsprung_acc(j, phi, phid, zs, zsd, zu, zud, zroad, f):
    return (susp(j, phi, phid, zs, zsd, zu, zud) - kt * (zu[j] - zroad[j]) + f) / mu


def heave_acc(phi, phid, zs, zsd, zu, zud, ftot):
    return (-sum(susp(j, phi, phid, zs, zsd, zu, zud) for j in range(4)) - ftot) / ms


def law_full(phi, phid, ay, eta, psi):
    return (-It * eta / psi * phi - It * (eta + 1 / psi) * phid
            - ms * ay * h * cos(phi) - ms * g * h * sin(phi)
            + mpf("0.5") * kf * ls**2 * sin(phi) + mpf("0.5") * bf * ls**2 * phid * cos(phi)
            + mpf("0.5") * kr * ls**2 * sin(phi) + mpf("0.5") * br * ls**2 * phid * cos(phi))


def ay_steer(delta, v):
    return delta * v**2 / (lw + Ku * ms * v**2)


def law_banked(phi, phid, phir, phird, delta, v, eta, psi):
    ayt = ay_steer(delta, v) - g * sin(phir)
    return (-It * eta / psi * (phi - phir) - It * (eta + 1 / psi) * phid - It / psi * phird
            - ms * ayt * h * cos(phi) - ms * g * h * sin(phi - phir)
            + mpf("0.5") * kf * ls**2 * sin(phi) + mpf("0.5") * bf * ls**2 * phid * cos(phi)
            + mpf("0.5") * kr * ls**2 * sin(phi) + mpf("0.5") * br * ls**2 * phid * cos(phi))


Z4 = [mpf(0)] * 4
print("roll_acc", mp.nstr(roll_acc(mpf("0.05"), 0, Z4, Z4, mpf(2), 0), 20))
print("unsprung_fl", mp.nstr(unsprung_acc(0, mpf("0.05"), 0, mpf("0.02"), 0,
                                           [mpf("0.01"), 0, 0, 0], Z4, Z4, 0), 20))
zu = [mpf("0.004"), mpf("-0.002"), mpf("0.003"), mpf("0.001")]
zud = [mpf("0.01"), mpf("0.02"), mpf("-0.03"), mpf(0)]
print("heave_mixed", mp.nstr(heave_acc(mpf("0.05"), mpf("0.1"), mpf("0.01"), mpf("-0.02"), zu, zud, 0), 20))
print("law_full", mp.nstr(law_full(mpf("0.05"), mpf("0.1"), mpf(1), mpf(15), mpf("0.5")), 20))
print("law_banked", mp.nstr(law_banked(mpf("0.05"), mpf("0.1"), mpf("0.02"), mpf("0.01"),
                                       mpf("0.03"), mpf(15), mpf(15), mpf("0.5")), 20))
